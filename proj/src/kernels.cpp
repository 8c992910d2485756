#include <stdexcept>

#include "readop/window.hpp"

namespace readop {

namespace {

void check_product(const Window& a, const Window& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("window_product: size mismatch " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
  if (a.basis() != b.basis()) {
    throw std::invalid_argument(std::string("window_product: basis mismatch ") +
                                to_string(a.basis()) + " vs " + to_string(b.basis()));
  }
}

// Column j of AB is sum_k b_kj * A[:, k]; terms are accumulated in
// increasing k so the result does not depend on scheduling.
SparseVector product_column(const Window& a, const Window& b, std::size_t j) {
  SparseVector out;
  for (const auto& [k, bkj] : b.column(j)) out.axpy(bkj, a.column(k));
  return out;
}

}  // namespace

Window window_product(const Window& a, const Window& b) {
  check_product(a, b);
  return build_columns(a.size(), a.basis(), [&](std::size_t j) { return product_column(a, b, j); });
}

Window window_product_serial(const Window& a, const Window& b) {
  check_product(a, b);
  Window out(a.size(), a.basis());
  for (std::size_t j = 0; j < a.size(); ++j) out.set_column(j, product_column(a, b, j));
  return out;
}

}  // namespace readop
