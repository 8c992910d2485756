#include "readop/commutant.hpp"

#include <stdexcept>

#include "readop/operators.hpp"

namespace readop {

namespace {

constexpr const char* kWindowNote =
    "algebraic identity certified on the N x N window only; boundedness on l1 is not assessed";

}  // namespace

Series trimmed(Series p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

Window toeplitz_from_series(const Series& p, std::size_t n, Basis basis) {
  Window w(n, basis);
  for (std::size_t d = 0; d < p.size() && d < n; ++d) {
    if (p[d].is_zero()) continue;
    for (std::size_t j = 0; j + d < n; ++j) w.set(j + d, j, p[d]);
  }
  return w;
}

CommutantSolution shift_commutant_extract(const Window& a) {
  CommutantSolution out;
  out.note = kWindowNote;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const ExactScalar as = a.at(i, j + 1);
      const ExactScalar sa = i >= 1 ? a.at(i - 1, j) : ExactScalar();
      if (as != sa) {
        out.failure_witness = EntryWitness{{i, j}, as - sa};
        return out;
      }
    }
  }
  Series p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(a.at(i, 0));
  out.series = trimmed(std::move(p));
  out.residual_zero = toeplitz_from_series(out.series, n, a.basis()) == a;
  return out;
}

CommutantLab::CommutantLab(const BasisChange& basis, std::size_t n)
    : basis_(basis),
      n_(n),
      q_(basis.q_window(n)),
      qinv_(basis.qinv_window(n)),
      t_(t_window(basis, n)) {
  powers_.push_back(Window::identity(n, Basis::F));
}

void CommutantLab::check(const Window& a, Basis expected, const char* what) const {
  if (a.size() != n_) {
    throw std::invalid_argument(std::string(what) + ": window size " + std::to_string(a.size()) +
                                " does not match " + std::to_string(n_));
  }
  if (a.basis() != expected) {
    throw std::invalid_argument(std::string(what) + ": expected a window in the " +
                                to_string(expected) + " basis");
  }
}

Window CommutantLab::t_power(std::size_t k) const {
  if (k >= n_ && n_ > 0) return Window(n_, Basis::F);
  std::lock_guard lock(powers_mutex_);
  while (powers_.size() <= k) powers_.push_back(window_product(powers_.back(), t_));
  return powers_[k];
}

Window CommutantLab::conjugate_to_e_basis(const Window& a) const {
  check(a, Basis::F, "conjugate_to_e_basis");
  return window_product(window_product(qinv_, a), q_).with_basis(Basis::E);
}

Window CommutantLab::conjugate_to_f_basis(const Window& a_tilde) const {
  check(a_tilde, Basis::E, "conjugate_to_f_basis");
  return window_product(window_product(q_, a_tilde.with_basis(Basis::F)), qinv_);
}

Window CommutantLab::series_apply(const Series& p) const {
  Window out(n_, Basis::F);
  for (std::size_t k = 0; k < p.size() && k < n_; ++k) {
    if (p[k].is_zero()) continue;
    out += p[k] * t_power(k);
  }
  return out;
}

CommutantSolution CommutantLab::solve(const Window& r) const {
  check(r, Basis::F, "solve_commutant");
  CommutantSolution out;
  out.note = kWindowNote;
  const auto c = commutator(t_, r);
  if (const auto pos = c.first_nonzero()) {
    out.failure_witness = EntryWitness{*pos, c.at(pos->row, pos->col)};
    out.note = "R does not commute with T on the window; " + out.note;
    return out;
  }
  auto extracted = shift_commutant_extract(conjugate_to_e_basis(r));
  if (!extracted.residual_zero) {
    extracted.note = "conjugate of R is not a shift series; " + extracted.note;
    return extracted;
  }
  out.series = std::move(extracted.series);
  out.residual_zero = series_apply(out.series) == r;
  return out;
}

Window conjugate_to_e_basis(const Window& a, const BasisChange& basis) {
  return CommutantLab(basis, a.size()).conjugate_to_e_basis(a);
}

Window conjugate_to_f_basis(const Window& a_tilde, const BasisChange& basis) {
  return CommutantLab(basis, a_tilde.size()).conjugate_to_f_basis(a_tilde);
}

bool verify_ttilde_is_shift(const Window& t, const BasisChange& basis) {
  return conjugate_to_e_basis(t, basis) == shift_window(t.size(), Basis::E);
}

bool verify_ttilde_is_shift(const BasisChange& basis, std::size_t n) {
  return verify_ttilde_is_shift(t_window(basis, n), basis);
}

Window series_apply(const Series& p, const BasisChange& basis, std::size_t n) {
  return CommutantLab(basis, n).series_apply(p);
}

CommutantSolution solve_commutant(const Window& r, const BasisChange& basis) {
  return CommutantLab(basis, r.size()).solve(r);
}

}  // namespace readop
