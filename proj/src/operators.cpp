#include "readop/operators.hpp"

#include <algorithm>

namespace readop {

namespace {

/// Coordinates in the e basis of a vector given in f coordinates.
SparseVector to_e_coordinates(const BasisChange& basis, const SparseVector& x) {
  SparseVector y;
  for (const auto& [k, xk] : x) y.axpy(xk, basis.f_in_e(k));
  return y;
}

SparseVector to_f_coordinates(const BasisChange& basis, const SparseVector& y) {
  SparseVector x;
  for (const auto& [l, yl] : y) x.axpy(yl, basis.e_in_f(l));
  return x;
}

void require_divisible(const BasisChange& basis, std::int64_t m) {
  if (m < 1) throw PreconditionError("modulus must be positive");
  if (!basis.sequence().divisible_by(m)) {
    throw PreconditionError(std::to_string(m) + " does not divide every a_n, b_n of d = " +
                            basis.sequence().to_string());
  }
}

}  // namespace

Window shift_window(std::size_t n, Basis basis) {
  Window w(n, basis);
  for (std::size_t j = 0; j + 1 < n; ++j) w.set(j + 1, j, ExactScalar(1));
  return w;
}

Window k_window(std::size_t n) {
  Window w(n, Basis::F);
  if (n > 0) w.set(0, 0, ExactScalar(1));
  return w;
}

Window modulus_diagonal(std::size_t n, std::int64_t m, Basis basis) {
  Window w(n, basis);
  for (std::size_t j = 0; j < n; ++j) {
    if (static_cast<std::int64_t>(j) % m == 0) w.set(j, j, ExactScalar(1));
  }
  return w;
}

Window t_window(const BasisChange& basis, std::size_t n) {
  basis.check_window(n);
  if (n > 0) basis.e_in_f(n - 1);
  return build_columns(n, Basis::F, [&](std::size_t j) {
    SparseVector col;
    for (const auto& [l, lambda] : basis.f_in_e(j)) {
      if (l + 1 < n) col.axpy(lambda, basis.e_in_f(l + 1));
    }
    return col;
  });
}

Window t_window_by_conjugation(const BasisChange& basis, std::size_t n) {
  const auto q = basis.q_window(n);
  const auto qinv = basis.qinv_window(n);
  return window_product(window_product(q, shift_window(n)), qinv);
}

Window t_principal_window(const BasisChange& basis, std::size_t n) {
  if (n > basis.max_index()) {
    throw WindowError("principal window of T needs e_N: N = " + std::to_string(n) +
                      " > v_M = " + std::to_string(basis.max_index()));
  }
  basis.e_in_f(n);
  return build_columns(n, Basis::F, [&](std::size_t j) { return t_apply(basis, SparseVector::unit(j)); });
}

SparseVector t_apply(const BasisChange& basis, const SparseVector& x) {
  SparseVector shifted;
  for (const auto& [l, yl] : to_e_coordinates(basis, x)) shifted.set(l + 1, yl);
  return to_f_coordinates(basis, shifted);
}

SparseVector s2_apply(const BasisChange& basis, const SparseVector& x, std::int64_t m) {
  SparseVector kept;
  for (const auto& [l, yl] : to_e_coordinates(basis, x)) {
    if (static_cast<std::int64_t>(l) % m == 0) kept.set(l, yl);
  }
  return to_f_coordinates(basis, kept);
}

Window s2_window(const BasisChange& basis, std::size_t n, std::int64_t m) {
  require_divisible(basis, m);
  const auto q = basis.q_window(n);
  const auto qinv = basis.qinv_window(n);
  return window_product(window_product(q, modulus_diagonal(n, m, Basis::F)), qinv);
}

ClosedFormCheck s2_closed_form_check(const BasisChange& basis, std::size_t n, std::int64_t m) {
  const auto s2 = s2_window(basis, n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto image = apply(s2, SparseVector::unit(i));
    const auto expected = static_cast<std::int64_t>(i) % m == 0 ? SparseVector::unit(i) : SparseVector{};
    if (image != expected) return {false, i};
  }
  return {};
}

std::optional<NonScalarWitness> non_scalar_witness(const Window& w) {
  for (const auto& [pos, value] : w.entries_row_major()) {
    if (pos.row != pos.col) {
      NonScalarWitness out;
      out.off_diagonal = true;
      out.first = pos;
      out.first_value = value;
      return out;
    }
  }
  if (w.size() < 2) return std::nullopt;
  const auto d0 = w.at(0, 0);
  for (std::size_t k = 1; k < w.size(); ++k) {
    auto dk = w.at(k, k);
    if (dk != d0) {
      return NonScalarWitness{false, {0, 0}, d0, {k, k}, std::move(dk)};
    }
  }
  return std::nullopt;
}

const char* to_string(NormFlag flag) {
  switch (flag) {
    case NormFlag::AtMostOne: return "at_most_one";
    case NormFlag::AboveOne: return "above_one";
    case NormFlag::Straddles: return "straddles_one";
  }
  return "?";
}

Interval l1_norm(const SparseVector& x, unsigned precision_bits) {
  Interval sum(precision_bits);
  for (const auto& [k, v] : x) sum += v.evaluate(precision_bits).abs();
  return sum;
}

NormReport norm_scan(const BasisChange& basis, std::size_t n, unsigned precision_bits,
                     unsigned precision_cap) {
  if (n > basis.max_index()) {
    throw WindowError("norm scan needs T f_j for j < N, so N <= v_M = " +
                      std::to_string(basis.max_index()) + "; got " + std::to_string(n));
  }
  precision_cap = std::max(precision_cap, precision_bits);
  NormReport report;
  report.precision_bits = precision_bits;
  report.precision_cap = precision_cap;
  if (n > 0) basis.e_in_f(n);

  std::vector<std::optional<ColumnNorm>> slots(n);
  detail::parallel_for_columns(n, [&](std::size_t j) {
    const auto image = t_apply(basis, SparseVector::unit(j));
    unsigned bits = precision_bits;
    for (;;) {
      auto norm = l1_norm(image, bits);
      NormFlag flag = NormFlag::Straddles;
      if (norm.at_most(1)) {
        flag = NormFlag::AtMostOne;
      } else if (norm.above(1)) {
        flag = NormFlag::AboveOne;
      }
      if (flag != NormFlag::Straddles || bits >= precision_cap) {
        slots[j] = ColumnNorm{j, std::move(norm), flag, bits};
        return;
      }
      bits = std::min(bits * 2, precision_cap);
    }
  });

  const auto& seq = basis.sequence();
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = *slots[j];
    std::size_t block = 0;
    while (j > 0 && static_cast<std::size_t>(seq.v(block)) < j) ++block;
    if (report.blocks.empty() || report.blocks.back().block != block) {
      report.blocks.push_back(BlockNorm{block, j, j, col.norm});
    } else {
      auto& b = report.blocks.back();
      b.last_column = j;
      b.max = b.max.max(col.norm);
    }
    if (!report.overall_max) {
      report.overall_max = col.norm;
      report.argmax = j;
    } else {
      if (mpfr_greater_p(col.norm.upper(), report.overall_max->upper())) report.argmax = j;
      report.overall_max = report.overall_max->max(col.norm);
    }
    report.columns.push_back(std::move(col));
  }
  return report;
}

}  // namespace readop
