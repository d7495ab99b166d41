#include <extvol/error.hpp>
#include <extvol/extremal_length.hpp>
#include <extvol/moduli.hpp>
#include <extvol/torus_invariants.hpp>

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"

using namespace extvol;

namespace {

const Complex kI{0, 1};
const Complex kHex = std::polar(1.0, std::numbers::pi / 3);

TEST(ConformalField, Validation) {
  EXPECT_THROW(ConformalField(kI, 2, {1, 1, 1}), Error);
  try {
    ConformalField(kI, 2, {0, 0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::inadmissible);
  }
  EXPECT_THROW(ConformalField(kI, 2, {1, -1, 1, 1}), Error);
  EXPECT_THROW(ConformalField(Complex(0, -1), 2, {1, 1, 1, 1}), Error);
}

TEST(ConformalField, TrigonometricRange) {
  const ConformalField f = ConformalField::trigonometric(kI, 64, {5, 3, 0.5, 2.0});
  double lo = 1e9, hi = -1e9;
  for (double v : f.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_NEAR(lo, 0.5, 1e-12);
  EXPECT_NEAR(hi, 2.0, 1e-12);
  // Same seed, same field.
  EXPECT_EQ(f.values(), ConformalField::trigonometric(kI, 64, {5, 3, 0.5, 2.0}).values());
}

TEST(Area, Examples) {
  EXPECT_NEAR(area(ConformalField::constant(kI, 32, 1.0)), 1.0, 1e-12);
  EXPECT_NEAR(area(ConformalField::constant(kI, 32, 2.0)), 4.0, 1e-12);
  const int n = 512;
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] = 1.0 + (i + 0.5) / n;
  }
  EXPECT_NEAR(area(ConformalField(kI, n, v)), 7.0 / 3.0, 1e-4);
  EXPECT_NEAR(area(ConformalField::constant(Complex(0.3, 2.5), 16, 1.0)), 2.5, 1e-12);
}

TEST(LenClass, StraightLineOracle) {
  const ConformalField one = ConformalField::constant(kI, 256, 1.0);
  EXPECT_NEAR(len_class(one, {1, 0}), 1.0, 0.015);
  EXPECT_NEAR(len_class(one, {1, 1}), std::sqrt(2.0), 0.015 * std::sqrt(2.0));
  EXPECT_GE(len_class(one, {2, 3}), std::abs(Complex(2, 3)) * (1 - 1e-12));
  EXPECT_LE(len_class(one, {2, 3}), std::abs(Complex(2, 3)) * (1 + kGridLengthAnisotropy));
}

TEST(LenClass, ScalesLinearly) {
  const ConformalField f = ConformalField::trigonometric(kI, 64, {9, 3, 0.5, 2.0});
  for (double c : {0.5, 3.0, 7.25}) {
    EXPECT_LT(oracle::rel_diff(len_class(f.scaled(c), {1, 2}), c * len_class(f, {1, 2})), 1e-12);
  }
}

TEST(LenClass, ZeroClassRejected) {
  EXPECT_THROW(len_class(ConformalField::constant(kI, 16, 1.0), {0, 0}), Error);
}

TEST(Ratio, Examples) {
  const ConformalField one = ConformalField::constant(kI, 256, 1.0);
  EXPECT_NEAR(ratio(one, {1, 0}), 1.0, 0.03);
  for (double c : {0.25, 2.0, 10.0}) {
    EXPECT_LT(oracle::rel_diff(ratio(ConformalField::constant(kI, 64, c), {1, 1}),
                               ratio(ConformalField::constant(kI, 64, 1.0), {1, 1})),
              1e-12);
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ConformalField f = ConformalField::trigonometric(kI, 256, {seed, 3, 0.5, 2.0});
    EXPECT_LE(ratio(f, {1, 0}), 1.0 + kGridRatioTolerance);
  }
}

TEST(Ratio, ScaleInvarianceAndSymmetry) {
  oracle::Rng rng(61);
  for (int t = 0; t < 10; ++t) {
    const ConformalField f = ConformalField::trigonometric(kI, 64, {rng.next(), 3, 0.5, 2.0});
    const CurveClass c{1 + static_cast<long long>(rng.next() % 2), static_cast<long long>(rng.next() % 3) - 1};
    const double base = ratio(f, c);
    EXPECT_LT(oracle::rel_diff(ratio(f.scaled(rng.uniform(0.1, 10)), c), base), 1e-12);
    EXPECT_EQ(ratio(f, {-c.p, -c.q}), base);
  }
}

TEST(Ratio, SupremumProperty) {
  oracle::Rng rng(62);
  for (int t = 0; t < 8; ++t) {
    const Complex tau = reduce_tau(oracle::random_tau(rng, 2.0)).final_tau;
    const ConformalField f = ConformalField::trigonometric(tau, 256, {rng.next(), 3, 0.5, 2.0});
    const ComplexLattice l = ComplexLattice::from_columns({{1.0}, {tau}});
    for (CurveClass c : {CurveClass{1, 0}, CurveClass{0, 1}, CurveClass{1, 1}}) {
      const double mu = extremal_volume(l, DecomposableClass::from_rows({{c.p, c.q}}));
      EXPECT_LE(ratio(f, c), mu * (1 + kGridRatioTolerance));
    }
  }
}

TEST(LenClass, ConvergenceInResolution) {
  for (CurveClass c : {CurveClass{1, 0}, CurveClass{0, 1}, CurveClass{1, 1}, CurveClass{2, 1}}) {
    double previous = std::numeric_limits<double>::infinity();
    const double exact = std::abs(Complex(static_cast<double>(c.p), static_cast<double>(c.q)));
    for (int n : {64, 128, 256, 512}) {
      const double err = std::abs(len_class(ConformalField::constant(kI, n, 1.0), c) - exact);
      EXPECT_LE(err, previous + 1e-12) << "class (" << c.p << "," << c.q << ") N=" << n;
      previous = err;
    }
  }
}

TEST(Loewner, ConstantFieldExamples) {
  const LoewnerReport hex = loewner_check(ConformalField::constant(kHex, 256, 1.0), 3);
  EXPECT_NEAR(hex.min_ratio, 2 / std::sqrt(3.0), 2 / std::sqrt(3.0) * kGridRatioTolerance);
  EXPECT_TRUE(hex.ok);
  const LoewnerReport tall = loewner_check(ConformalField::constant(Complex(0, 3), 256, 1.0), 3);
  EXPECT_NEAR(tall.min_ratio, 1.0 / 3.0, 1.0 / 3.0 * kGridRatioTolerance);
  EXPECT_EQ(tall.minimizer.p, 1);
  EXPECT_EQ(tall.minimizer.q, 0);
  EXPECT_TRUE(tall.ok);
  EXPECT_NEAR(tall.bound, kHexagonalBound * (1 + kGridRatioTolerance), 1e-15);
  EXPECT_NEAR(tall.margin, tall.bound - tall.min_ratio, 1e-15);
}

TEST(Loewner, BumpyField) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const LoewnerReport r = loewner_check(ConformalField::trigonometric(kI, 256, {seed, 3, 0.5, 2.0}), 3);
    EXPECT_TRUE(r.ok);
    EXPECT_LE(r.min_ratio, kHexagonalBound * (1 + kGridRatioTolerance));
    EXPECT_LE(r.classes_examined, r.classes_total);
  }
}

TEST(Loewner, PruningDoesNotChangeTheMinimum) {
  const ConformalField f = ConformalField::trigonometric(Complex(0.2, 1.1), 64, {17, 3, 0.5, 2.0});
  const LoewnerReport r = loewner_check(f, 2);
  double brute = std::numeric_limits<double>::infinity();
  for (long long p = -2; p <= 2; ++p) {
    for (long long q = -2; q <= 2; ++q) {
      if (std::gcd(p, q) != 1) continue;
      brute = std::min(brute, ratio(f, {p, q}));
    }
  }
  EXPECT_EQ(r.min_ratio, brute);
}

TEST(Loewner, RequiresReducedTau) {
  try {
    loewner_check(ConformalField::constant(Complex(0.9, 0.5), 16, 1.0), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_tau);
  }
}

}  // namespace
