#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "readop/basis.hpp"
#include "readop/errors.hpp"
#include "readop/matrix_io.hpp"
#include "readop/operators.hpp"
#include "readop/window.hpp"

namespace {

using readop::Basis;
using readop::ExactScalar;
using readop::Rational;
using readop::SparseVector;
using readop::Window;

Window random_window(std::mt19937_64& rng, std::size_t n, double density, bool lower_only) {
  Window w(n, Basis::F);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = lower_only ? j : 0; i < n; ++i) {
      if (static_cast<double>(rng() % 1000) >= density * 1000) continue;
      Rational q(static_cast<long>(rng() % 11) - 5, static_cast<long>(1 + rng() % 4));
      q.canonicalize();
      auto value = ExactScalar(q);
      if (rng() % 3 == 0) value *= ExactScalar::from_power_of_two(static_cast<std::int64_t>(rng() % 5) - 2, 2 + rng() % 5);
      w.set(i, j, value);
    }
  }
  return w;
}

TEST(Window, IdentityIsNeutral) {
  std::mt19937_64 rng(3);
  const auto a = random_window(rng, 12, 0.4, false);
  const auto id = Window::identity(12, Basis::F);
  EXPECT_EQ(readop::window_product(a, id), a);
  EXPECT_EQ(readop::window_product(id, a), a);
}

TEST(Window, ProductMatchesDefinition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_window(rng, 9, 0.5, false);
    const auto b = random_window(rng, 9, 0.5, false);
    EXPECT_EQ(readop::window_product(a, b), oracle::naive_product(a, b));
  }
}

TEST(Window, ParallelAndSerialAreIdentical) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_window(rng, 30, 0.3, false);
    const auto b = random_window(rng, 30, 0.3, false);
    const auto parallel = readop::window_product(a, b);
    const auto serial = readop::window_product_serial(a, b);
    ASSERT_EQ(parallel, serial);
    ASSERT_EQ(readop::matrix_to_string(parallel), readop::matrix_to_string(serial));
  }
  const readop::BasisChange bc(readop::GrowthSequence({2, 8, 40}, {4, 10, 90}));
  const auto q = bc.q_window(200);
  const auto t = readop::t_window(bc, 200);
  EXPECT_EQ(readop::window_product(q, t), readop::window_product_serial(q, t));
}

TEST(Window, LeadingWindowExactnessForLowerTriangular) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_window(rng, 20, 0.4, true);
    const auto b = random_window(rng, 20, 0.4, true);
    const auto full = readop::window_product(a, b);
    for (std::size_t n : {1, 4, 13}) {
      EXPECT_EQ(full.leading(n), readop::window_product(a.leading(n), b.leading(n)));
    }
  }
}

TEST(Window, MismatchThrows) {
  const Window a(3, Basis::F);
  EXPECT_THROW(readop::window_product(a, Window(4, Basis::F)), std::invalid_argument);
  EXPECT_THROW(readop::window_product(a, Window(3, Basis::E)), std::invalid_argument);
  EXPECT_THROW(readop::commutator(a, Window(4, Basis::F)), std::invalid_argument);
}

TEST(Window, CommutatorOfPowersVanishes) {
  std::mt19937_64 rng(23);
  const auto a = random_window(rng, 10, 0.5, false);
  EXPECT_TRUE(readop::commutator(a, readop::power(a, 2)).is_zero());
  EXPECT_EQ(readop::power(a, 0), Window::identity(10, Basis::F));
  EXPECT_EQ(readop::power(a, 5), readop::window_product(readop::power(a, 2), readop::power(a, 3)));
}

TEST(Window, ApplyExamples) {
  std::mt19937_64 rng(29);
  const auto a = random_window(rng, 8, 0.5, false);
  const SparseVector x{{1, ExactScalar(Rational(2, 3))}, {5, -1}};
  EXPECT_EQ(readop::apply(Window::identity(8, Basis::F), x), x);
  EXPECT_EQ(readop::apply(a, SparseVector::unit(3)), a.column(3));
  EXPECT_TRUE(readop::apply(readop::k_window(8), SparseVector::unit(3)).empty());
  EXPECT_THROW(readop::apply(a, SparseVector::unit(8)), std::invalid_argument);
}

TEST(Window, Rank) {
  EXPECT_EQ(readop::rank(readop::k_window(7)), 1U);
  EXPECT_EQ(readop::rank(Window::identity(5, Basis::F)), 5U);
  EXPECT_EQ(readop::rank(readop::shift_window(5)), 4U);
  Window w(3, Basis::F);
  w.set(0, 0, 1);
  w.set(0, 1, 2);
  w.set(1, 0, 2);
  w.set(1, 1, 4);  // second column is twice the first
  EXPECT_EQ(readop::rank(w), 1U);
}

TEST(Window, StructureQueries) {
  const auto s = readop::shift_window(4);
  EXPECT_TRUE(s.is_lower_triangular());
  EXPECT_TRUE(s.is_strictly_lower());
  EXPECT_FALSE(s.is_upper_triangular());
  EXPECT_FALSE(s.has_nonzero_diagonal());
  EXPECT_EQ(s.nonzeros(), 3U);
  EXPECT_EQ(s.first_nonzero()->row, 1U);
  EXPECT_TRUE(Window::identity(4, Basis::E).is_diagonal());
  EXPECT_THROW(s.at(4, 0), readop::WindowError);
}

TEST(Window, SetZeroRemovesEntry) {
  Window w(3, Basis::F);
  w.set(1, 2, 5);
  w.add(1, 2, -5);
  EXPECT_TRUE(w.is_zero());
  EXPECT_EQ(w, Window(3, Basis::F));
}

TEST(MatrixIo, RoundTripIsBitExact) {
  const readop::BasisChange bc(readop::GrowthSequence({2, 8}, {4, 10}));
  std::mt19937_64 rng(31);
  const std::vector<Window> windows = {readop::t_window(bc, 36), bc.q_window(37), bc.qinv_window(37),
                                       random_window(rng, 15, 0.5, false).with_basis(Basis::E)};
  for (const auto& w : windows) {
    const auto text = readop::matrix_to_string(w);
    const auto back = readop::matrix_from_string(text);
    EXPECT_EQ(back, w);
    EXPECT_EQ(readop::matrix_to_string(back), text);
  }
}

TEST(MatrixIo, Format) {
  Window w(3, Basis::E);
  w.set(2, 0, ExactScalar(Rational(-1, 2)));
  w.set(0, 1, 1);
  EXPECT_EQ(readop::matrix_to_string(w), "N 3 basis e\n0 1 1 * 2^(0)\n2 0 -1/2 * 2^(0)\n");
}

TEST(MatrixIo, ErrorsNameTheLine) {
  const auto expect_line = [](const std::string& text, const std::string& needle) {
    try {
      readop::matrix_from_string(text);
      FAIL() << "accepted: " << text;
    } catch (const readop::ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_line("", "header");
  expect_line("N 2 basis g\n", "line 1");
  expect_line("N 2 basis f\n0 0 1\n5 0 1\n", "line 3");
  expect_line("N 2 basis f\n# comment\n0 0 xyz\n", "line 3");
  expect_line("N 2 basis f\n0 0 1\n0 0 2\n", "line 3");
}

TEST(MatrixIo, CommentsAndBlankLinesAreSkipped) {
  const auto w = readop::matrix_from_string("# dump\nN 2 basis f\n\n1 0 3/4\n");
  EXPECT_EQ(w.at(1, 0), ExactScalar(Rational(3, 4)));
  EXPECT_EQ(w.nonzeros(), 1U);
}

}  // namespace
