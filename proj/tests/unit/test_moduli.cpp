#include <extvol/error.hpp>
#include <extvol/moduli.hpp>
#include <extvol/torus_invariants.hpp>

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"

using namespace extvol;

namespace {

const double kSqrt3Half = std::sqrt(3.0) / 2;

// Naive reduction loop used as an oracle: translate to |Re| <= 1/2, invert while |tau| < 1.
Complex naive_reduce(Complex tau) {
  for (int i = 0; i < 10000; ++i) {
    tau -= std::round(tau.real());
    if (std::norm(tau) >= 1.0) break;
    tau = -1.0 / tau;
  }
  return tau;
}

TEST(ReduceTau, Examples) {
  const ReductionTrace id = reduce_tau({0, 1});
  EXPECT_TRUE(id.steps.empty());
  EXPECT_EQ(id.final_tau, Complex(0, 1));

  const ReductionTrace t = reduce_tau({2.3, 0.4});
  EXPECT_TRUE(is_in_fundamental_domain(t.final_tau));
  EXPECT_GE(t.final_tau.imag(), kSqrt3Half - 1e-12);
  const Complex naive = naive_reduce({2.3, 0.4});
  EXPECT_NEAR(std::abs(naive), std::abs(t.final_tau), 1e-12);
  EXPECT_NEAR(naive.imag(), t.final_tau.imag(), 1e-12);

  const ReductionTrace b = reduce_tau({0.5, 2});
  EXPECT_TRUE(b.steps.empty());
  EXPECT_EQ(b.final_tau, Complex(0.5, 2));
}

TEST(ReduceTau, Errors) {
  for (Complex bad : {Complex(0.3, 0), Complex(0.3, -1), Complex(std::nan(""), 1)}) {
    try {
      reduce_tau(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::invalid_tau);
    }
  }
  try {
    reduce_tau({100.3, 1e-9}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::non_convergence);
  }
}

TEST(ReduceTau, TraceReplays) {
  oracle::Rng rng(41);
  for (int t = 0; t < 1000; ++t) {
    const Complex tau = oracle::random_tau(rng);
    const ReductionTrace tr = reduce_tau(tau);
    EXPECT_LT(std::abs(apply_steps(tau, tr.steps) - tr.final_tau), 1e-12 * std::max(1.0, std::abs(tr.final_tau)));
  }
}

TEST(ReduceTau, PropertiesOnRandomInputs) {
  oracle::Rng rng(42);
  for (int t = 0; t < 1000; ++t) {
    const Complex tau = oracle::random_tau(rng);
    const ReductionTrace tr = reduce_tau(tau);
    const Complex f = tr.final_tau;
    EXPECT_TRUE(is_in_fundamental_domain(f));
    EXPECT_LE(std::abs(f.real()), 0.5 + 1e-12);
    EXPECT_GE(std::abs(f), 1.0 - 1e-12);
    EXPECT_GE(f.imag(), kSqrt3Half - 1e-12);
    EXPECT_LE(mu_pair(f).mu_alpha, kHexagonalBound + 1e-12);
    const ReductionTrace again = reduce_tau(f);
    EXPECT_TRUE(again.steps.empty());
    EXPECT_LT(std::abs(again.final_tau - f), 1e-12);
    EXPECT_NEAR(naive_reduce(tau).imag(), f.imag(), 1e-9 * f.imag());
  }
}

TEST(ReduceTau, MirrorInputsGiveMirrorOutputs) {
  oracle::Rng rng(43);
  int checked = 0;
  while (checked < 500) {
    const Complex tau = oracle::random_tau(rng);
    const Complex f1 = reduce_tau(tau).final_tau;
    const Complex f2 = reduce_tau({-tau.real(), tau.imag()}).final_tau;
    // Off the boundary only: canonicalization breaks the symmetry there by design.
    if (std::abs(std::abs(f1.real()) - 0.5) < 1e-9 || std::abs(std::abs(f1) - 1.0) < 1e-9) continue;
    EXPECT_NEAR(f1.real(), -f2.real(), 1e-12);
    EXPECT_NEAR(f1.imag(), f2.imag(), 1e-12);
    ++checked;
  }
}

TEST(ReduceTau, BoundaryCanonicalization) {
  const Complex left = reduce_tau({-0.5, 1.5}).final_tau;
  EXPECT_NEAR(left.real(), 0.5, 1e-15);
  const Complex arc = std::polar(1.0, 2.0);  // |tau| = 1, Re < 0
  const Complex f = reduce_tau(arc).final_tau;
  EXPECT_GE(f.real(), 0.0);
  EXPECT_NEAR(std::abs(f), 1.0, 1e-12);
}

TEST(ReductionStep, Labels) {
  EXPECT_EQ(ReductionStep::translate(-2).label(), "T:-2");
  EXPECT_EQ(ReductionStep::invert().label(), "S");
  EXPECT_EQ(ReductionStep::parse("T:3"), ReductionStep::translate(3));
  EXPECT_EQ(ReductionStep::parse("S"), ReductionStep::invert());
  EXPECT_THROW(ReductionStep::parse("X"), Error);
}

TEST(FundamentalDomain, Examples) {
  EXPECT_TRUE(is_in_fundamental_domain({0, 1}));
  EXPECT_FALSE(is_in_fundamental_domain({0.3, 0.4}));
  EXPECT_TRUE(is_in_fundamental_domain(std::polar(1.0, std::numbers::pi / 3)));
  EXPECT_FALSE(is_in_fundamental_domain({0.2, -1}));
  EXPECT_FALSE(is_in_fundamental_domain({0.6, 3}));
}

TEST(MuPair, Examples) {
  const MuPair a = mu_pair({0, 1});
  EXPECT_DOUBLE_EQ(a.mu_alpha, 1.0);
  EXPECT_DOUBLE_EQ(a.mu_alpha_prime, 1.0);
  const MuPair h = mu_pair(std::polar(1.0, std::numbers::pi / 3));
  EXPECT_NEAR(h.mu_alpha, 2 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(h.mu_alpha_prime, 2 / std::sqrt(3.0), 1e-12);
  const MuPair b = mu_pair({0, 2});
  EXPECT_DOUBLE_EQ(b.mu_alpha, 0.5);
  EXPECT_DOUBLE_EQ(b.mu_alpha_prime, 2.0);
  const ComplexLattice l = ComplexLattice::from_columns({{1.0}, {Complex(0, 2)}});
  EXPECT_NEAR(extremal_volume(l, DecomposableClass::from_rows({{1, 0}})), b.mu_alpha, 1e-12);
  EXPECT_NEAR(extremal_volume(l, DecomposableClass::from_rows({{0, 1}})), b.mu_alpha_prime, 1e-12);
  EXPECT_THROW(mu_pair({1, 0}), Error);
}

SiegelPoint random_point(int n, oracle::Rng& rng) {
  Eigen::MatrixXd a(n, n), l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.uniform(-3, 3);
    for (int j = 0; j < n; ++j) l(i, j) = rng.uniform(-2, 2);
  }
  return SiegelPoint(a, l * l.transpose() + 0.05 * Eigen::MatrixXd::Identity(n, n));
}

TEST(SiegelReduction, FixedPoint) {
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 0.1, -0.3, -0.3, 0.5;
  b << 1.0, 0.2, 0.2, 1.5;
  const SiegelPoint r = translate_reduce_siegel(SiegelPoint(a, b));
  EXPECT_EQ(r.a(), a);
  EXPECT_EQ(r.b(), b);
}

TEST(SiegelReduction, OneDimensionalTranslation) {
  const SiegelPoint r = translate_reduce_siegel(SiegelPoint(Eigen::MatrixXd::Constant(1, 1, 2.3), Eigen::MatrixXd::Constant(1, 1, 0.4)));
  EXPECT_NEAR(r.a()(0, 0), 0.3, 1e-12);
  EXPECT_EQ(r.b()(0, 0), 0.4);
}

TEST(SiegelReduction, Properties) {
  oracle::Rng rng(44);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 2;
    const SiegelPoint p = random_point(n, rng);
    const SiegelReduction red = translate_reduce_siegel_with_congruence(p);
    const IntMatrix& u = red.congruence;
    EXPECT_EQ(std::abs(oracle::cofactor_det(oracle::to_rows(u.cast<double>()))), 1.0);
    const Eigen::MatrixXd ud = u.cast<double>();
    EXPECT_LT((ud.transpose() * p.b() * ud - red.point.b()).cwiseAbs().maxCoeff(), 1e-9 * p.b().cwiseAbs().maxCoeff());
    EXPECT_LT(oracle::rel_diff(red.point.b().determinant(), p.b().determinant()), 1e-12);
    EXPECT_LE(red.point.b().diagonal().maxCoeff(), p.b().diagonal().maxCoeff() * (1 + 1e-12));
    EXPECT_LE(red.point.a().cwiseAbs().maxCoeff(), 0.5 + 1e-12);
    // The A-part differs from U^T A U by an integral symmetric matrix.
    const Eigen::MatrixXd s = ud.transpose() * p.a() * ud - red.point.a();
    EXPECT_LT((s - s.array().round().matrix()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(PolarizedBound, Examples) {
  const auto one = [](double a, double b) {
    return SiegelPoint(Eigen::MatrixXd::Constant(1, 1, a), Eigen::MatrixXd::Constant(1, 1, b));
  };
  const PolarizedBound h = polarized_mu_and_bound(one(0.5, kSqrt3Half), 2 / std::sqrt(3.0));
  EXPECT_NEAR(h.mu, 2 / std::sqrt(3.0), 1e-12);
  EXPECT_TRUE(h.bound_ok);
  EXPECT_NEAR(polarized_mu_and_bound(SiegelPoint(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Identity(2, 2)), 1.0).mu,
              1.0, 1e-15);
  const PolarizedBound b = polarized_mu_and_bound(one(0.1, 2), 2 / std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(b.mu, 0.5);
  EXPECT_DOUBLE_EQ(b.mu, mu_pair({0.1, 2}).mu_alpha);
  EXPECT_TRUE(b.bound_ok);
  EXPECT_FALSE(polarized_mu_and_bound(one(0, 0.1), 2 / std::sqrt(3.0)).bound_ok);
  EXPECT_THROW(polarized_mu_and_bound(one(0, 1), 0.0), Error);
}

}  // namespace
