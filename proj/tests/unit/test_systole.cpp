#include <extvol/error.hpp>
#include <extvol/moduli.hpp>
#include <extvol/systole.hpp>

#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "oracles.hpp"
#include "systole_oracle.hpp"

using namespace extvol;

namespace {

const Complex kI{0, 1};
const Complex kHex = std::polar(1.0, std::numbers::pi / 3);

ComplexLattice one_dim(Complex a, Complex b) { return ComplexLattice::from_columns({{a}, {b}}); }
ComplexLattice gaussian2() {
  return ComplexLattice::from_columns({{{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}, {{0, 1}, {0, 0}}, {{0, 0}, {0, 1}}});
}

SiegelPoint siegel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return SiegelPoint(a, b); }

TEST(EnumerateClasses, OneDimensionalBoxOne) {
  const ClassEnumeration e = enumerate_classes(1, 1);
  EXPECT_TRUE(e.box_limited);
  std::set<std::vector<long long>> got;
  for (const DecomposableClass& c : e.classes) got.insert(flatten(c.coeffs()));
  // Oracle: the 8 nonzero pairs up to sign, primitive or not (all are primitive here).
  std::set<std::vector<long long>> want;
  for (long long p = -1; p <= 1; ++p) {
    for (long long q = -1; q <= 1; ++q) {
      if (p == 0 && q == 0) continue;
      const bool flip = p < 0 || (p == 0 && q < 0);
      want.insert(flip ? std::vector<long long>{-p, -q} : std::vector<long long>{p, q});
    }
  }
  EXPECT_EQ(want.size(), 4u);
  EXPECT_EQ(got.size(), want.size());
  for (const auto& c : e.classes) EXPECT_EQ(c, c.canonical());
  // Canonical forms of (1,-1) and (1,1) etc. each appear once.
  EXPECT_EQ(e.classes.size(), 4u);
}

TEST(EnumerateClasses, BoundZeroIsEmpty) {
  EXPECT_TRUE(enumerate_classes(1, 0).classes.empty());
  EXPECT_TRUE(enumerate_classes(2, 0).classes.empty());
}

TEST(EnumerateClasses, CountMatchesWindowSetOracle) {
  for (int n = 1; n <= 2; ++n) {
    const int bound = n == 1 ? 3 : 1;
    const ComplexLattice l = n == 1 ? one_dim(1, kI) : gaussian2();
    const ClassEnumeration e = enumerate_classes(l, bound);
    EXPECT_EQ(e.classes.size(), oracle::brute_force_systole(l, bound).sublattices) << "n=" << n;
  }
}

TEST(EnumerateClasses, LexicographicAndDistinct) {
  const ClassEnumeration e = enumerate_classes(2, 1);
  for (std::size_t i = 1; i < e.classes.size(); ++i) {
    EXPECT_LT(flatten(e.classes[i - 1].coeffs()), flatten(e.classes[i].coeffs()));
  }
}

TEST(ComplexSystole, Examples) {
  const SystoleResult sq = complex_systole(one_dim(1, kI), {2});
  EXPECT_DOUBLE_EQ(sq.value, 1.0);
  EXPECT_EQ(sq.witness, DecomposableClass::from_rows({{1, 0}}));
  EXPECT_TRUE(sq.certified);

  const SystoleResult hex = complex_systole(one_dim(1, kHex), {2});
  EXPECT_NEAR(hex.value, 1.0, 1e-12);
  EXPECT_EQ(hex.witness, DecomposableClass::from_rows({{1, 0}}));
  EXPECT_TRUE(hex.certified);

  const SystoleResult z2 = complex_systole(gaussian2(), {2});
  EXPECT_NEAR(z2.value, 1.0, 1e-12);
  EXPECT_EQ(z2.witness, DecomposableClass::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}}));
  EXPECT_FALSE(z2.certified);
}

TEST(ComplexSystole, ValueMatchesWitnessVolume) {
  oracle::Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 2;
    const ComplexLattice l = oracle::random_lattice(n, rng);
    const SystoleResult s = complex_systole(l, {n == 1 ? 4 : 1});
    EXPECT_GT(s.value, 0.0);
    EXPECT_LT(oracle::rel_diff(s.value, omega_volume_class(l, s.witness)), 1e-12);
    EXPECT_EQ(s.witness, s.witness.canonical());
  }
}

TEST(ComplexSystole, MinimalOverEnumeratedClasses) {
  oracle::Rng rng(52);
  for (int t = 0; t < 10; ++t) {
    const ComplexLattice l = oracle::random_lattice(2, rng);
    const SystoleResult s = complex_systole(l, {1});
    for (const DecomposableClass& c : enumerate_classes(l, 1).classes) {
      if (is_totally_real(l, c)) EXPECT_LE(s.value, omega_volume_class(l, c));
    }
  }
}

TEST(ComplexSystole, MatchesBruteForceExactly) {
  oracle::Rng rng(53);
  for (int t = 0; t < 5; ++t) {
    const ComplexLattice l = oracle::random_lattice(2, rng);
    EXPECT_EQ(complex_systole(l, {1}).value, oracle::brute_force_systole(l, 1).value);
  }
  for (int t = 0; t < 50; ++t) {
    const ComplexLattice l = oracle::random_lattice(1, rng);
    EXPECT_EQ(complex_systole(l, {3}).value, oracle::brute_force_systole(l, 3).value);
  }
}

TEST(ComplexSystole, RotationInvariance) {
  oracle::Rng rng(54);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 2;
    const ComplexLattice l = oracle::random_lattice(n, rng);
    SystoleOptions plain{n == 1 ? 3 : 1};
    SystoleOptions rotated = plain;
    rotated.omega_phase = std::polar(1.0, rng.uniform(-std::numbers::pi, std::numbers::pi));
    const double a = complex_systole(l, plain).value;
    const double b = complex_systole(l, rotated).value;
    EXPECT_LE(oracle::rel_diff(a, b), 1e-15);
  }
}

TEST(ComplexSystole, TieBreakPrefersSmallestCanonicalForm) {
  // Square lattice: (1,0) and (0,1) tie; (1,0) precedes.
  EXPECT_TRUE(witness_precedes(DecomposableClass::from_rows({{1, 0}}).coeffs(),
                               DecomposableClass::from_rows({{0, 1}}).coeffs()));
  EXPECT_TRUE(witness_precedes(DecomposableClass::from_rows({{1, 0}}).coeffs(),
                               DecomposableClass::from_rows({{1, 1}}).coeffs()));
  // Deterministic regardless of generator order among equal minima.
  const SystoleResult a = complex_systole(one_dim(kI, 1.0), {2});
  EXPECT_EQ(a.witness, DecomposableClass::from_rows({{1, 0}}));
}

TEST(ComplexSystole, Errors) {
  EXPECT_THROW(complex_systole(one_dim(1, kI), {0}), Error);
  // Every box class is complex when the tolerance is absurdly large.
  SystoleOptions opts{1};
  opts.tr_tol = 10.0;
  try {
    complex_systole(gaussian2(), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_search);
  }
}

TEST(LagrangeGauss, Examples) {
  EXPECT_DOUBLE_EQ(lagrange_gauss_shortest(one_dim(1, kI)).length, 1.0);
  EXPECT_NEAR(lagrange_gauss_shortest(one_dim(1, Complex(0.5, 0.5))).length,
              oracle::brute_shortest(one_dim(1, Complex(0.5, 0.5)), 4), 1e-15);
  EXPECT_NEAR(lagrange_gauss_shortest(one_dim(1, Complex(0.5, 0.5))).length, std::sqrt(2.0) / 2, 1e-15);
  EXPECT_DOUBLE_EQ(lagrange_gauss_shortest(one_dim(100, Complex(0, 100))).length, 100.0);
  EXPECT_THROW(lagrange_gauss_shortest(gaussian2()), Error);
}

TEST(LagrangeGauss, VectorIsLatticeCombination) {
  oracle::Rng rng(55);
  for (int t = 0; t < 200; ++t) {
    const ComplexLattice l = oracle::random_lattice(1, rng);
    const ShortestVector v = lagrange_gauss_shortest(l);
    const Complex recon = static_cast<double>(v.p) * l.generator(0, 0) + static_cast<double>(v.q) * l.generator(1, 0);
    EXPECT_LT(std::abs(recon - v.vector), 1e-12);
    EXPECT_NEAR(v.length, oracle::brute_shortest(l, 8), 1e-12 * v.length);
  }
}

TEST(LagrangeGauss, SystoleCertifiedInOneDimension) {
  oracle::Rng rng(56);
  for (int t = 0; t < 100; ++t) {
    const ComplexLattice l = oracle::random_lattice(1, rng);
    const SystoleResult s = complex_systole(l, {5});
    EXPECT_TRUE(s.certified);
    EXPECT_LE(oracle::rel_diff(s.value, lagrange_gauss_shortest(l).length), 1e-12);
  }
}

TEST(SystolicRatio, Examples) {
  EXPECT_DOUBLE_EQ(systolic_ratio(one_dim(1, kI)), 1.0);
  EXPECT_NEAR(systolic_ratio(one_dim(1, kHex)), 2 / std::sqrt(3.0), 1e-12);
  oracle::Rng rng(57);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 2;
    const ComplexLattice l = oracle::random_lattice(n, rng);
    const Complex c{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const SystoleOptions o{n == 1 ? 3 : 1};
    EXPECT_LT(oracle::rel_diff(systolic_ratio(l.scaled(c), o), systolic_ratio(l, o)), 1e-12);
  }
}

TEST(SystolicRatio, PolarizedInequality) {
  oracle::Rng rng(58);
  for (int t = 0; t < 50; ++t) {
    const SiegelPoint p = random_siegel_point(2, rng);
    EXPECT_LE(systolic_ratio(from_siegel(p), {1}), 1.0 / p.b().determinant() + 1e-9);
  }
}

TEST(RandomSiegelPoint, ReducedAndPositive) {
  oracle::Rng rng(59);
  for (int t = 0; t < 100; ++t) {
    const SiegelPoint p = random_siegel_point(2, rng);
    EXPECT_LE(p.a().cwiseAbs().maxCoeff(), 0.5 + 1e-12);
    EXPECT_GT(p.b().determinant(), 0.0);
  }
}

TEST(VerifyPolarizedBound, OneDimensionalUniformBound) {
  const BoundReport r = verify_polarized_bound(1, 1000, 7, 3, kHexagonalBound);
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(r.polarization_violations, 0);
  EXPECT_LE(r.max_ratio, kHexagonalBound + 1e-12);
  EXPECT_EQ(static_cast<int>(r.histogram.size()), kHistogramBins);
  int total = 0;
  for (int h : r.histogram) total += h;
  EXPECT_EQ(total, 1000);
  EXPECT_FALSE(r.first_violation.has_value());
}

TEST(VerifyPolarizedBound, SingleSampleAtSquarePoint) {
  // The square torus ratio is 1, and every reduced one-dimensional sample respects 2/sqrt 3.
  EXPECT_DOUBLE_EQ(systolic_ratio(from_siegel(siegel(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Ones(1, 1)))), 1.0);
  const BoundReport r = verify_polarized_bound(1, 1, 3, 3, kHexagonalBound);
  EXPECT_EQ(r.samples, 1);
  EXPECT_LE(r.max_ratio, kHexagonalBound + 1e-12);
}

TEST(VerifyPolarizedBound, TwoDimensionalReportAndDeterminism) {
  const BoundReport a = verify_polarized_bound(2, 50, 99, 1, 1.0);
  const BoundReport b = verify_polarized_bound(2, 50, 99, 1, 1.0);
  EXPECT_EQ(a.polarization_violations, 0);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_EQ(a.histogram, b.histogram);
  EXPECT_TRUE(std::isfinite(a.max_ratio));
}

TEST(VerifyPolarizedBound, ViolationsAreReportedWithWitness) {
  const BoundReport r = verify_polarized_bound(1, 50, 5, 3, 0.5);
  EXPECT_GT(r.violations, 0);
  ASSERT_TRUE(r.first_violation.has_value());
  EXPECT_GT(r.first_violation->ratio, 0.5);
  EXPECT_EQ(r.histogram.back() > 0, true);
}

TEST(VerifyPolarizedBound, Errors) {
  EXPECT_THROW(verify_polarized_bound(3, 10, 1, 1, 1.0), Error);
  EXPECT_THROW(verify_polarized_bound(1, 0, 1, 1, 1.0), Error);
  EXPECT_THROW(verify_polarized_bound(1, 10, 1, 1, 0.0), Error);
}

}  // namespace
