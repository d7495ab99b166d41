#include "extvol/moduli.hpp"

#include "extvol/error.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>

namespace extvol {
namespace {

// Round half toward zero so that |x - round(x)| <= 1/2 leaves x = +-1/2 alone.
double round_half_toward_zero(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) == 0.5) return r - std::copysign(1.0, x);
  return r;
}

Complex invert(Complex tau) {
  // -1/tau written out so that mirror-image inputs give mirror-image outputs exactly.
  const double x = tau.real(), y = tau.imag();
  const double r2 = x * x + y * y;
  return {-x / r2, y / r2};
}

void check_upper_half_plane(Complex tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real())) {
    throw Error(ErrorCode::invalid_tau, "tau must be finite with Im tau > 0");
  }
}

}  // namespace

std::string ReductionStep::label() const {
  if (kind == Kind::invert) return "S";
  return "T:" + std::to_string(shift);
}

ReductionStep ReductionStep::parse(const std::string& label) {
  if (label == "S") return invert();
  if (label.size() > 2 && label.compare(0, 2, "T:") == 0) {
    std::size_t used = 0;
    const long long k = std::stoll(label.substr(2), &used);
    if (used == label.size() - 2) return translate(k);
  }
  throw Error(ErrorCode::invalid_argument, "unknown reduction step '" + label + "'");
}

Complex apply_steps(Complex tau, std::span<const ReductionStep> steps) {
  for (const ReductionStep& step : steps) {
    if (step.kind == ReductionStep::Kind::invert) {
      tau = invert(tau);
    } else {
      tau += static_cast<double>(step.shift);
    }
  }
  return tau;
}

ReductionTrace reduce_tau(Complex tau, int max_iter) {
  check_upper_half_plane(tau);
  if (max_iter < 1) throw Error(ErrorCode::invalid_argument, "max_iter must be >= 1");

  ReductionTrace trace;
  auto translate_by = [&](double k) {
    if (std::abs(k) > 9.0e18) {
      throw Error(ErrorCode::non_convergence, "translation out of integer range");
    }
    const auto shift = static_cast<long long>(k);
    trace.steps.push_back(ReductionStep::translate(shift));
    tau += static_cast<double>(shift);
  };

  bool reduced = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) || !(tau.imag() > 0.0)) {
      throw Error(ErrorCode::non_convergence, "non-finite value during reduction");
    }
    const double k = round_half_toward_zero(tau.real());
    if (k != 0.0) translate_by(-k);
    if (std::norm(tau) < 1.0) {
      trace.steps.push_back(ReductionStep::invert());
      tau = invert(tau);
      continue;
    }
    reduced = true;
    break;
  }
  if (!reduced) {
    throw Error(ErrorCode::non_convergence,
                "no reduced representative after " + std::to_string(max_iter) + " iterations");
  }

  // Boundary identifications: prefer Re tau >= 0.
  if (tau.real() < 0.0 && std::abs(tau.real() + 0.5) <= kFundamentalDomainTolerance) {
    translate_by(1.0);
  }
  if (tau.real() < 0.0 && std::abs(std::abs(tau) - 1.0) <= kFundamentalDomainTolerance) {
    trace.steps.push_back(ReductionStep::invert());
    tau = invert(tau);
  }
  trace.final_tau = tau;
  return trace;
}

bool is_in_fundamental_domain(Complex tau) {
  return tau.imag() > 0.0 && std::abs(tau.real()) <= 0.5 + kFundamentalDomainTolerance &&
         std::abs(tau) >= 1.0 - kFundamentalDomainTolerance;
}

MuPair mu_pair(Complex tau) {
  check_upper_half_plane(tau);
  return {1.0 / tau.imag(), std::norm(tau) / tau.imag()};
}

SiegelReduction translate_reduce_siegel_with_congruence(const SiegelPoint& point) {
  const Eigen::Index n = point.dimension();
  Eigen::MatrixXd b = point.b();
  IntMatrix u = IntMatrix::Identity(n, n);

  auto column_op = [&](Eigen::Index j, Eigen::Index i, long long q) {
    // basis vector j <- j - q * i
    const auto qd = static_cast<double>(q);
    b.col(j) -= qd * b.col(i);
    b.row(j) -= qd * b.row(i);
    u.col(j) -= q * u.col(i);
  };
  auto swap = [&](Eigen::Index i, Eigen::Index j) {
    b.col(i).swap(b.col(j));
    b.row(i).swap(b.row(j));
    u.col(i).swap(u.col(j));
  };

  // Pairwise Lagrange reduction. A step only fires when |B_ij| > B_ii / 2, which strictly
  // lowers B_jj, so diagonal entries never grow.
  constexpr int kMaxPasses = 10000;
  bool changed = true;
  for (int pass = 0; changed && pass < kMaxPasses; ++pass) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        for (int inner = 0; inner < kMaxPasses; ++inner) {
          const Eigen::Index lo = b(i, i) <= b(j, j) ? i : j;
          const Eigen::Index hi = lo == i ? j : i;
          const double ratio = b(lo, hi) / b(lo, lo);
          if (std::abs(ratio) <= 0.5 * (1.0 + 1e-12)) break;
          column_op(hi, lo, static_cast<long long>(std::round(ratio)));
          changed = true;
        }
        if (b(j, j) < b(i, i) * (1.0 - 1e-15) && j == i + 1) {
          swap(i, j);
          changed = true;
        }
      }
    }
  }
  b = 0.5 * (b + b.transpose()).eval();

  Eigen::MatrixXd ud = u.cast<double>();
  Eigen::MatrixXd a = ud.transpose() * point.a() * ud;
  a = 0.5 * (a + a.transpose()).eval();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double k = round_half_toward_zero(a(i, j));
      a(i, j) -= k;
      if (i != j) a(j, i) = a(i, j);
    }
  }
  return {SiegelPoint(std::move(a), std::move(b)), std::move(u)};
}

SiegelPoint translate_reduce_siegel(const SiegelPoint& point) {
  return translate_reduce_siegel_with_congruence(point).point;
}

PolarizedBound polarized_mu_and_bound(const SiegelPoint& point, double d) {
  if (!(d > 0.0)) throw Error(ErrorCode::invalid_argument, "bound d must be positive");
  const double mu = 1.0 / point.b().determinant();
  return {mu, mu <= d};
}

}  // namespace extvol
