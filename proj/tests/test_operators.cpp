#include <gtest/gtest.h>

#include "oracles.hpp"
#include "readop/errors.hpp"
#include "readop/operators.hpp"

namespace {

using readop::Basis;
using readop::BasisChange;
using readop::ExactScalar;
using readop::GrowthSequence;
using readop::NormFlag;
using readop::Rational;
using readop::SparseVector;
using readop::Window;

const GrowthSequence kToy({2, 8}, {4, 10});

class ToyOperators : public ::testing::Test {
 protected:
  BasisChange bc{kToy};
};

TEST(ShiftWindow, Examples) {
  EXPECT_TRUE(readop::shift_window(1).is_zero());
  const auto s = readop::shift_window(3);
  EXPECT_EQ(s.at(1, 0), ExactScalar(1));
  EXPECT_EQ(s.at(2, 1), ExactScalar(1));
  EXPECT_EQ(s.nonzeros(), 2U);
  EXPECT_TRUE(readop::power(readop::shift_window(9), 9).is_zero());
  EXPECT_FALSE(readop::power(readop::shift_window(9), 8).is_zero());
}

TEST_F(ToyOperators, TWindowColumns) {
  const auto t = readop::t_window(bc, 36);
  EXPECT_EQ(t.column(0), (SparseVector{{1, 1}}));
  EXPECT_EQ(t.column(1), (SparseVector{{0, 1}, {2, 1}}));
  EXPECT_EQ(t.column(2), (SparseVector{{1, -1}, {3, ExactScalar::from_power_of_two(1, 1)}}));
}

TEST_F(ToyOperators, TWindowTwoRoutesAgree) {
  for (std::size_t n : {1, 2, 7, 20, 36, 37}) {
    EXPECT_EQ(readop::t_window(bc, n), readop::t_window_by_conjugation(bc, n)) << n;
  }
  EXPECT_THROW(readop::t_window(bc, 38), readop::WindowError);
}

TEST_F(ToyOperators, TWindowIsNilpotent) {
  const auto t = readop::t_window(bc, 36);
  EXPECT_TRUE(readop::power(t, 36).is_zero());
  EXPECT_FALSE(readop::power(t, 35).is_zero());
}

TEST_F(ToyOperators, PrincipalWindowAgreesWithExactAction) {
  const auto principal = readop::t_principal_window(bc, 36);
  for (std::size_t j = 0; j < 36; ++j) {
    SparseVector truncated;
    for (const auto& [i, value] : readop::t_apply(bc, SparseVector::unit(j))) {
      if (i < 36) truncated.set(i, value);
    }
    EXPECT_EQ(principal.column(j), truncated) << j;
  }
  // The finite section on N + 1 carries the true columns 0..N-1.
  EXPECT_EQ(readop::t_window(bc, 36).leading(35), principal.leading(35));
  EXPECT_EQ(readop::t_window(bc, 37).leading(36), principal);
  EXPECT_THROW(readop::t_principal_window(bc, 37), readop::WindowError);
}

TEST_F(ToyOperators, TApplyShiftsEBasis) {
  // T e_i = e_{i+1}: push e_i through the f coordinates and back.
  for (std::size_t i = 0; i < 36; ++i) {
    EXPECT_EQ(readop::t_apply(bc, bc.e_in_f(i)), bc.e_in_f(i + 1)) << i;
  }
  EXPECT_THROW(readop::t_apply(bc, SparseVector::unit(36)), readop::WindowError);
}

TEST_F(ToyOperators, S2ClosedForm) {
  const auto check = readop::s2_closed_form_check(bc, 36, 2);
  EXPECT_TRUE(check.holds);
  EXPECT_FALSE(check.counterexample.has_value());
  const auto s2 = readop::s2_window(bc, 36, 2);
  EXPECT_TRUE(readop::apply(s2, SparseVector::unit(3)).empty());
  EXPECT_EQ(readop::apply(s2, SparseVector::unit(4)), SparseVector::unit(4));
  EXPECT_EQ(s2, readop::modulus_diagonal(36, 2, Basis::F));
}

TEST_F(ToyOperators, S2WithModulusOneIsIdentity) {
  EXPECT_EQ(readop::s2_window(bc, 36, 1), Window::identity(36, Basis::F));
}

TEST(S2Window, ModulusFourIsIdempotent) {
  const BasisChange bc(GrowthSequence({4, 16}, {8, 24}));
  const auto s2 = readop::s2_window(bc, 40, 4);
  EXPECT_EQ(readop::window_product(s2, s2), s2);
  EXPECT_TRUE(readop::s2_closed_form_check(bc, 40, 4).holds);
}

TEST(S2Window, OddTermsAreRefused) {
  const BasisChange bc(GrowthSequence({3, 13}, {5, 17}));
  EXPECT_THROW(readop::s2_window(bc, 10, 2), readop::PreconditionError);
  const BasisChange toy(kToy);
  EXPECT_THROW(readop::s2_window(toy, 10, 3), readop::PreconditionError);
}

TEST(KWindow, Examples) {
  EXPECT_EQ(readop::k_window(1), Window::identity(1, Basis::F));
  const auto k = readop::k_window(9);
  EXPECT_EQ(readop::window_product(k, k), k);
  for (std::size_t n = 1; n < 6; ++n) EXPECT_EQ(readop::rank(readop::k_window(n)), 1U);
}

TEST_F(ToyOperators, ChainCommutatorsVanish) {
  const auto t = readop::t_window(bc, 36);
  const auto t2 = readop::power(t, 2);
  const auto s2 = readop::s2_window(bc, 36, 2);
  const auto k = readop::k_window(36);
  EXPECT_TRUE(readop::commutator(t, t2).is_zero());
  EXPECT_TRUE(readop::commutator(t2, s2).is_zero());
  EXPECT_TRUE(readop::commutator(s2, k).is_zero());
  // T itself does not commute with S2 or K.
  EXPECT_FALSE(readop::commutator(t, s2).is_zero());
  EXPECT_FALSE(readop::commutator(t, k).is_zero());
}

TEST_F(ToyOperators, ChainRelationOnF) {
  for (std::size_t j = 0; j + 2 <= bc.max_index(); ++j) {
    const auto x = SparseVector::unit(j);
    const auto lhs = readop::t_apply(bc, readop::t_apply(bc, readop::s2_apply(bc, x, 2)));
    const auto rhs = readop::s2_apply(bc, readop::t_apply(bc, readop::t_apply(bc, x)), 2);
    EXPECT_EQ(lhs, rhs) << j;
  }
}

TEST_F(ToyOperators, NonScalarWitnesses) {
  const auto t2 = readop::power(readop::t_window(bc, 36), 2);
  const auto w_t2 = readop::non_scalar_witness(t2);
  ASSERT_TRUE(w_t2.has_value());
  EXPECT_TRUE(w_t2->off_diagonal);
  EXPECT_FALSE(w_t2->first_value.is_zero());

  const auto w_s2 = readop::non_scalar_witness(readop::s2_window(bc, 36, 2));
  ASSERT_TRUE(w_s2.has_value());
  EXPECT_FALSE(w_s2->off_diagonal);
  EXPECT_NE(w_s2->first_value, w_s2->second_value);

  const auto w_k = readop::non_scalar_witness(readop::k_window(36));
  ASSERT_TRUE(w_k.has_value());
  EXPECT_NE(w_k->first_value, w_k->second_value);

  EXPECT_FALSE(readop::non_scalar_witness(ExactScalar(3) * Window::identity(5, Basis::F)).has_value());
}

TEST_F(ToyOperators, NormScanExamples) {
  const auto report = readop::norm_scan(bc, 36, 128, 4096);
  ASSERT_EQ(report.columns.size(), 36U);
  EXPECT_TRUE(report.columns[0].norm.contains(1));
  EXPECT_EQ(report.columns[0].norm.width(), 0.0);
  EXPECT_EQ(report.columns[0].flag, NormFlag::AtMostOne);
  EXPECT_TRUE(report.columns[1].norm.contains(2));
  EXPECT_EQ(report.columns[1].norm.width(), 0.0);
  EXPECT_EQ(report.columns[1].flag, NormFlag::AboveOne);
  // T f_4 = (1/2) e_5 = (1/2) 2^(3/2) f_5
  EXPECT_TRUE(oracle::overlaps_decimal(report.columns[4].norm, oracle::kRootTwo, "1e-35"));
  EXPECT_LT(report.columns[4].norm.width(), 1e-35);
  ASSERT_TRUE(report.overall_max.has_value());
  // Index 0 on its own, then (v_0, v_1] = [1, 6] and (v_1, v_2] = [7, 36].
  ASSERT_EQ(report.blocks.size(), 3U);
  EXPECT_EQ(report.blocks[0].last_column, 0U);
  EXPECT_EQ(report.blocks[1].first_column, 1U);
  EXPECT_EQ(report.blocks[1].last_column, 6U);
  EXPECT_EQ(report.blocks[2].first_column, 7U);
  EXPECT_EQ(report.blocks[2].last_column, 35U);
  EXPECT_THROW(readop::norm_scan(bc, 37), readop::WindowError);
}

TEST_F(ToyOperators, NormScanMatchesIndependentSum) {
  const auto report = readop::norm_scan(bc, 36, 128, 4096);
  for (std::size_t j = 0; j < 36; ++j) {
    readop::Interval sum(128);
    for (const auto& [i, value] : readop::t_apply(bc, SparseVector::unit(j))) sum += value.evaluate(128).abs();
    EXPECT_TRUE((sum - report.columns[j].norm).contains_zero()) << j;
  }
}

TEST(NormScan, StraddlingColumnEscalatesPrecision) {
  // An enclosure that straddles 1 at low precision is refined; with a cap
  // equal to the start precision it stays flagged.
  const BasisChange bc(kToy);
  const auto capped = readop::norm_scan(bc, 36, 16, 16);
  for (const auto& col : capped.columns) EXPECT_EQ(col.precision_bits, 16U);
  const auto report = readop::norm_scan(bc, 36, 16, 4096);
  for (const auto& col : report.columns) {
    if (col.flag == NormFlag::Straddles) EXPECT_EQ(col.precision_bits, 4096U);
  }
}

}  // namespace
