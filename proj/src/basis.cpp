#include "readop/basis.hpp"

#include <algorithm>
#include <mutex>

namespace readop {

namespace {

std::uint64_t as_radicand(std::int64_t x) { return static_cast<std::uint64_t>(x); }

}  // namespace

BasisChange::BasisChange(GrowthSequence seq) : seq_(std::move(seq)), max_index_(0) {
  const auto report = validate(seq_);
  if (!report.structurally_valid()) {
    throw ConfigError("growth sequence is not structurally valid: " + report.errors().front());
  }
  max_index_ = static_cast<std::size_t>(seq_.last_index());
}

void BasisChange::check_index(std::size_t i) const {
  if (i > max_index_) {
    throw WindowError("window exceeds configured sequence: index " + std::to_string(i) +
                      " > v_M = " + std::to_string(max_index_));
  }
}

void BasisChange::check_window(std::size_t n) const {
  if (n > max_index_ + 1) {
    throw WindowError("window exceeds configured sequence: N = " + std::to_string(n) +
                      " > v_M + 1 = " + std::to_string(max_index_ + 1));
  }
}

SparseVector BasisChange::f_in_e(std::size_t i) const {
  check_index(i);
  const auto c = classify(seq_, static_cast<std::int64_t>(i));
  const auto n = static_cast<std::size_t>(c.n);
  SparseVector out;
  switch (c.kind) {
    case CaseKind::Zero:
      out.set(0, ExactScalar(1));
      break;
    case CaseKind::A: {
      // f_i = a_{n-r} (e_i - e_{i - r a_n})
      const auto scale = seq_.a(n - static_cast<std::size_t>(c.r));
      out.set(i, ExactScalar(scale));
      out.set(i - static_cast<std::size_t>(c.r * seq_.a(n)), ExactScalar(-scale));
      break;
    }
    case CaseKind::B: {
      // f_i = 2^{(h - i)/sqrt(a_n)} e_i
      const mpq_class twice_h = c.h * 2;
      const auto halves = twice_h.get_num().get_si() - 2 * static_cast<std::int64_t>(i);
      out.set(i, ExactScalar::from_power_of_two(halves, as_radicand(seq_.a(n))));
      break;
    }
    case CaseKind::C:
      // f_i = e_i - b_n e_{i - b_n}
      out.set(i, ExactScalar(1));
      out.set(i - static_cast<std::size_t>(seq_.b(n)), ExactScalar(-seq_.b(n)));
      break;
    case CaseKind::D: {
      const mpq_class twice_h = c.h * 2;
      const auto halves = twice_h.get_num().get_si() - 2 * static_cast<std::int64_t>(i);
      out.set(i, ExactScalar::from_power_of_two(halves, as_radicand(seq_.b(n))));
      break;
    }
  }
  return out;
}

void BasisChange::extend_cache(std::size_t i) const {
  std::unique_lock lock(mutex_);
  while (e_cache_.size() <= i) {
    const std::size_t k = e_cache_.size();
    const auto f = f_in_e(k);
    // f_k = lambda_kk e_k + lambda_kp e_p (p < k), so
    // e_k = lambda_kk^{-1} (f_k - lambda_kp e_p).
    const ExactScalar inv_diag = f.at(k).inverse();
    SparseVector e;
    e.set(k, inv_diag);
    std::size_t chain = 0;
    for (const auto& [p, lambda] : f) {
      if (p == k) continue;
      e.axpy(-(inv_diag * lambda), e_cache_[p]);
      chain = chain_cache_[p] + 1;
    }
    e_cache_.push_back(std::move(e));
    chain_cache_.push_back(chain);
  }
}

SparseVector BasisChange::e_in_f(std::size_t i) const {
  check_index(i);
  {
    std::shared_lock lock(mutex_);
    if (i < e_cache_.size()) return e_cache_[i];
  }
  extend_cache(i);
  std::shared_lock lock(mutex_);
  return e_cache_[i];
}

std::size_t BasisChange::chain_length(std::size_t i) const {
  check_index(i);
  {
    std::shared_lock lock(mutex_);
    if (i < chain_cache_.size()) return chain_cache_[i];
  }
  extend_cache(i);
  std::shared_lock lock(mutex_);
  return chain_cache_[i];
}

Window BasisChange::q_window(std::size_t n) const {
  check_window(n);
  if (n > 0) extend_cache(n - 1);
  return build_columns(n, Basis::F, [&](std::size_t j) { return e_in_f(j); });
}

Window BasisChange::qinv_window(std::size_t n) const {
  check_window(n);
  return build_columns(n, Basis::F, [&](std::size_t j) { return f_in_e(j); });
}

SupportProfile BasisChange::support_profile(std::size_t n) const {
  const auto q = q_window(n);
  const auto qinv = qinv_window(n);
  SupportProfile profile;
  profile.q_row_counts.assign(n, 0);
  profile.q_col_counts.assign(n, 0);
  profile.qinv_row_counts.assign(n, 0);
  profile.qinv_col_counts.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    profile.q_col_counts[j] = q.column(j).size();
    for (const auto& [row, v] : q.column(j)) ++profile.q_row_counts[row];
    profile.qinv_col_counts[j] = qinv.column(j).size();
    for (const auto& [row, v] : qinv.column(j)) ++profile.qinv_row_counts[row];
    profile.max_chain_length = std::max(profile.max_chain_length, chain_length(j));
  }
  return profile;
}

}  // namespace readop
