#include "readop/window.hpp"

#include "readop/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace readop {

SparseVector::SparseVector(std::initializer_list<std::pair<const std::size_t, ExactScalar>> entries) {
  for (const auto& [k, v] : entries) add(k, v);
}

void SparseVector::add(std::size_t index, const ExactScalar& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = entries_.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

void SparseVector::set(std::size_t index, ExactScalar value) {
  if (value.is_zero()) {
    entries_.erase(index);
  } else {
    entries_[index] = std::move(value);
  }
}

void SparseVector::axpy(const ExactScalar& factor, const SparseVector& other) {
  if (factor.is_zero()) return;
  for (const auto& [k, v] : other.entries_) add(k, factor * v);
}

ExactScalar SparseVector::at(std::size_t index) const {
  const auto it = entries_.find(index);
  return it == entries_.end() ? ExactScalar() : it->second;
}

const ExactScalar* SparseVector::find(std::size_t index) const {
  const auto it = entries_.find(index);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::size_t> SparseVector::max_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.rbegin()->first;
}

SparseVector SparseVector::scaled(const ExactScalar& factor) const {
  SparseVector out;
  out.axpy(factor, *this);
  return out;
}

SparseVector& SparseVector::operator+=(const SparseVector& rhs) {
  for (const auto& [k, v] : rhs.entries_) add(k, v);
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& rhs) {
  for (const auto& [k, v] : rhs.entries_) add(k, -v);
  return *this;
}

const char* to_string(Basis basis) { return basis == Basis::F ? "f" : "e"; }

Basis parse_basis(const std::string& text) {
  if (text == "f") return Basis::F;
  if (text == "e") return Basis::E;
  throw std::invalid_argument("basis must be 'f' or 'e', got '" + text + "'");
}

Window::Window(std::size_t n, Basis basis) : basis_(basis), columns_(n) {}

Window Window::identity(std::size_t n, Basis basis) {
  Window w(n, basis);
  for (std::size_t j = 0; j < n; ++j) w.set(j, j, ExactScalar(1));
  return w;
}

void Window::check_index(std::size_t row, std::size_t col) const {
  if (row >= size() || col >= size()) {
    throw WindowError("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") outside " + std::to_string(size()) + "x" + std::to_string(size()) +
                            " window");
  }
}

ExactScalar Window::at(std::size_t row, std::size_t col) const {
  check_index(row, col);
  return columns_[col].at(row);
}

void Window::set(std::size_t row, std::size_t col, ExactScalar value) {
  check_index(row, col);
  columns_[col].set(row, std::move(value));
}

void Window::add(std::size_t row, std::size_t col, const ExactScalar& value) {
  check_index(row, col);
  columns_[col].add(row, value);
}

void Window::set_column(std::size_t j, const SparseVector& column) {
  check_index(0, j);
  SparseVector truncated;
  for (const auto& [row, value] : column) {
    if (row < size()) truncated.set(row, value);
  }
  columns_[j] = std::move(truncated);
}

std::size_t Window::nonzeros() const {
  std::size_t count = 0;
  for (const auto& c : columns_) count += c.size();
  return count;
}

bool Window::is_zero() const { return nonzeros() == 0; }

bool Window::is_diagonal() const {
  for (std::size_t j = 0; j < size(); ++j) {
    for (const auto& [row, value] : columns_[j]) {
      if (row != j) return false;
    }
  }
  return true;
}

bool Window::is_lower_triangular() const {
  for (std::size_t j = 0; j < size(); ++j) {
    if (!columns_[j].empty() && columns_[j].begin()->first < j) return false;
  }
  return true;
}

bool Window::is_upper_triangular() const {
  for (std::size_t j = 0; j < size(); ++j) {
    const auto top = columns_[j].max_index();
    if (top && *top > j) return false;
  }
  return true;
}

bool Window::is_strictly_lower() const {
  if (!is_lower_triangular()) return false;
  for (std::size_t j = 0; j < size(); ++j) {
    if (columns_[j].find(j) != nullptr) return false;
  }
  return true;
}

bool Window::has_nonzero_diagonal() const {
  for (std::size_t j = 0; j < size(); ++j) {
    if (columns_[j].find(j) == nullptr) return false;
  }
  return true;
}

std::vector<std::pair<EntryPosition, ExactScalar>> Window::entries_row_major() const {
  std::vector<std::pair<EntryPosition, ExactScalar>> out;
  for (std::size_t j = 0; j < size(); ++j) {
    for (const auto& [row, value] : columns_[j]) out.push_back({{row, j}, value});
  }
  std::sort(out.begin(), out.end(), [](const auto& lhs, const auto& rhs) {
    return std::tie(lhs.first.row, lhs.first.col) < std::tie(rhs.first.row, rhs.first.col);
  });
  return out;
}

std::optional<EntryPosition> Window::first_nonzero() const {
  std::optional<EntryPosition> best;
  for (std::size_t j = 0; j < size(); ++j) {
    if (columns_[j].empty()) continue;
    const EntryPosition candidate{columns_[j].begin()->first, j};
    if (!best || candidate.row < best->row) best = candidate;
  }
  return best;
}

Window Window::leading(std::size_t n) const {
  if (n > size()) throw WindowError("leading window larger than the window");
  Window out(n, basis_);
  for (std::size_t j = 0; j < n; ++j) out.set_column(j, columns_[j]);
  return out;
}

Window Window::with_basis(Basis basis) const {
  Window out = *this;
  out.basis_ = basis;
  return out;
}

namespace {

void check_compatible(const Window& a, const Window& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": size mismatch " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
  if (a.basis() != b.basis()) {
    throw std::invalid_argument(std::string(what) + ": basis mismatch " + to_string(a.basis()) +
                                " vs " + to_string(b.basis()));
  }
}

}  // namespace

Window& Window::operator+=(const Window& rhs) {
  check_compatible(*this, rhs, "window sum");
  for (std::size_t j = 0; j < size(); ++j) columns_[j] += rhs.columns_[j];
  return *this;
}

Window& Window::operator-=(const Window& rhs) {
  check_compatible(*this, rhs, "window difference");
  for (std::size_t j = 0; j < size(); ++j) columns_[j] -= rhs.columns_[j];
  return *this;
}

Window operator*(const ExactScalar& factor, const Window& w) {
  Window out(w.size(), w.basis());
  for (std::size_t j = 0; j < w.size(); ++j) out.columns_[j] = w.columns_[j].scaled(factor);
  return out;
}

Window commutator(const Window& a, const Window& b) {
  return window_product(a, b) - window_product(b, a);
}

Window power(const Window& a, unsigned k) {
  Window out = Window::identity(a.size(), a.basis());
  Window base = a;
  while (k > 0) {
    if (k & 1U) out = window_product(out, base);
    k >>= 1U;
    if (k > 0) base = window_product(base, base);
  }
  return out;
}

SparseVector apply(const Window& a, const SparseVector& x) {
  SparseVector y;
  for (const auto& [j, xj] : x) {
    if (j >= a.size()) {
      throw std::invalid_argument("apply: vector support index " + std::to_string(j) +
                                  " outside window of size " + std::to_string(a.size()));
    }
    y.axpy(xj, a.column(j));
  }
  return y;
}

std::size_t rank(const Window& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<ExactScalar>> rows(n, std::vector<ExactScalar>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [i, v] : a.column(j)) rows[i][j] = v;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t pivot = r;
    while (pivot < n && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == n) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < n; ++i) {
      if (rows[i][c].is_zero()) continue;
      const ExactScalar factor = rows[i][c];
      for (std::size_t k = c; k < n; ++k) {
        rows[i][k] = rows[r][c] * rows[i][k] - factor * rows[r][k];
      }
    }
    ++r;
  }
  return r;
}

}  // namespace readop
