#include "extvol/cycle_verify.hpp"

#include "extvol/error.hpp"
#include "extvol/random.hpp"
#include "extvol/torus_invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace extvol {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex random_disc(Rng& rng) {
  const double r = std::sqrt(rng.uniform());
  const double a = kTwoPi * rng.uniform();
  return std::polar(r, a);
}

void check_quadrature(int q) {
  if (q < kMinQuadraturePoints) {
    throw Error(ErrorCode::invalid_argument,
                "quadrature needs at least " + std::to_string(kMinQuadraturePoints) + " points");
  }
}

void check_shape(const ComplexLattice& lattice, const DecomposableClass& cls, int n) {
  if (lattice.dimension() != n || cls.dimension() != n) {
    throw Error(ErrorCode::dimension_mismatch, "expected a torus of dimension " + std::to_string(n));
  }
}

double midpoint_1d(const std::function<Complex(double)>& velocity, int q, Complex phase) {
  double sum = 0.0;
  for (int i = 0; i < q; ++i) sum += std::abs(phase * velocity((i + 0.5) / q));
  return sum / q;
}

double midpoint_2d(const Eigen::MatrixXcd& p, const TrigSurface& f, double eps, int q,
                   Complex phase) {
  double total = 0.0;
  for (int i = 0; i < q; ++i) {
    const double t1 = (i + 0.5) / q;
    double row = 0.0;
    for (int j = 0; j < q; ++j) {
      const double t2 = (j + 0.5) / q;
      std::array<std::array<Complex, 2>, 2> jac{};
      if (eps != 0.0) jac = f.jacobian(t1, t2);
      const Complex a00 = p(0, 0) + eps * jac[0][0];
      const Complex a10 = p(1, 0) + eps * jac[0][1];
      const Complex a01 = p(0, 1) + eps * jac[1][0];
      const Complex a11 = p(1, 1) + eps * jac[1][1];
      row += std::abs(phase * (a00 * a11 - a01 * a10));
    }
    total += row;
  }
  return total / (static_cast<double>(q) * q);
}

Eigen::MatrixXcd periods(const ComplexLattice& lattice, const DecomposableClass& cls) {
  return period_matrix(lattice, cls);
}

}  // namespace

Complex TrigCurve::value(double t) const {
  Complex v{};
  for (int k = 1; k <= degree(); ++k) {
    const double a = kTwoPi * k * t;
    v += cos_coeffs[k - 1] * std::cos(a) + sin_coeffs[k - 1] * std::sin(a);
  }
  return v;
}

Complex TrigCurve::derivative(double t) const {
  Complex v{};
  for (int k = 1; k <= degree(); ++k) {
    const double w = kTwoPi * k;
    const double a = w * t;
    v += w * (sin_coeffs[k - 1] * std::cos(a) - cos_coeffs[k - 1] * std::sin(a));
  }
  return v;
}

TrigCurve TrigCurve::scaled(double amplitude) const {
  TrigCurve out = *this;
  for (Complex& c : out.cos_coeffs) c *= amplitude;
  for (Complex& c : out.sin_coeffs) c *= amplitude;
  return out;
}

TrigCurve TrigCurve::random(Rng& rng, int degree) {
  if (degree < 1) throw Error(ErrorCode::invalid_argument, "degree must be at least 1");
  TrigCurve f;
  double mass = 0.0;
  for (int k = 0; k < degree; ++k) {
    f.cos_coeffs.push_back(random_disc(rng));
    f.sin_coeffs.push_back(random_disc(rng));
    mass += std::abs(f.cos_coeffs.back()) + std::abs(f.sin_coeffs.back());
  }
  return mass > 0.0 ? f.scaled(1.0 / mass) : f;
}

std::array<Complex, 2> TrigSurface::value(double t1, double t2) const {
  std::array<Complex, 2> v{};
  for (const SurfaceTerm& term : terms) {
    const double a = kTwoPi * (term.k1 * t1 + term.k2 * t2);
    const double c = std::cos(a);
    const double s = std::sin(a);
    for (int m = 0; m < 2; ++m) v[m] += term.cos_coeff[m] * c + term.sin_coeff[m] * s;
  }
  return v;
}

std::array<std::array<Complex, 2>, 2> TrigSurface::jacobian(double t1, double t2) const {
  std::array<std::array<Complex, 2>, 2> jac{};
  for (const SurfaceTerm& term : terms) {
    const double a = kTwoPi * (term.k1 * t1 + term.k2 * t2);
    const double c = std::cos(a);
    const double s = std::sin(a);
    for (int m = 0; m < 2; ++m) {
      const Complex d = term.sin_coeff[m] * c - term.cos_coeff[m] * s;
      jac[0][m] += kTwoPi * term.k1 * d;
      jac[1][m] += kTwoPi * term.k2 * d;
    }
  }
  return jac;
}

TrigSurface TrigSurface::random(Rng& rng, int degree) {
  if (degree < 1) throw Error(ErrorCode::invalid_argument, "degree must be at least 1");
  TrigSurface f;
  double mass = 0.0;
  for (int k1 = 0; k1 <= degree; ++k1) {
    for (int k2 = -degree; k2 <= degree; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      SurfaceTerm term{k1, k2, {}, {}};
      for (int m = 0; m < 2; ++m) {
        term.cos_coeff[m] = random_disc(rng);
        term.sin_coeff[m] = random_disc(rng);
        mass += std::abs(term.cos_coeff[m]) + std::abs(term.sin_coeff[m]);
      }
      f.terms.push_back(term);
    }
  }
  for (SurfaceTerm& term : f.terms) {
    for (int m = 0; m < 2; ++m) {
      term.cos_coeff[m] /= mass;
      term.sin_coeff[m] /= mass;
    }
  }
  return f;
}

double curve_omega_volume(const std::function<Complex(double)>& velocity, int quadrature,
                          Complex phase) {
  if (quadrature < 1) throw Error(ErrorCode::invalid_argument, "quadrature must be positive");
  return midpoint_1d(velocity, quadrature, phase);
}

double cycle_omega_volume_1d(const PerturbedCycle1D& cycle, Complex phase) {
  check_shape(cycle.lattice, cycle.cls, 1);
  check_quadrature(cycle.quadrature);
  const Complex lambda = periods(cycle.lattice, cycle.cls)(0, 0);
  const TrigCurve& f = cycle.perturbation;
  return midpoint_1d([&](double t) { return lambda + f.derivative(t); }, cycle.quadrature, phase);
}

double surface_omega_volume_2d(const PerturbedTorus2D& surface, Complex phase) {
  check_shape(surface.lattice, surface.cls, 2);
  check_quadrature(surface.quadrature);
  return midpoint_2d(periods(surface.lattice, surface.cls), surface.perturbation, surface.amplitude,
                     surface.quadrature, phase);
}

MinimalityReport verify_minimality(const ComplexLattice& lattice, const DecomposableClass& cls,
                                   const MinimalityOptions& options) {
  const int n = lattice.dimension();
  if (n != 1 && n != 2) throw Error(ErrorCode::invalid_argument, "minimality check supports n = 1, 2");
  check_shape(lattice, cls, n);
  check_quadrature(options.quadrature);
  if (options.trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  if (!(options.eps_max >= 0.0) || !std::isfinite(options.eps_max)) {
    throw Error(ErrorCode::invalid_argument, "eps_max must be finite and non-negative");
  }
  if (!is_totally_real(lattice, cls)) {
    throw Error(ErrorCode::not_totally_real, "minimality is stated for totally real classes");
  }

  MinimalityReport report;
  report.dimension = n;
  report.trials = options.trials;
  report.flat_value = omega_volume_class(lattice, cls);
  report.min_margin = std::numeric_limits<double>::infinity();

  const Eigen::MatrixXcd p = periods(lattice, cls);
  const int q = options.quadrature;
  double margin_sum = 0.0;
  for (int i = 0; i < options.trials; ++i) {
    MinimalityTrial trial;
    trial.index = i;
    trial.seed = derive_seed(options.seed, static_cast<std::uint64_t>(i));
    Rng rng(trial.seed);
    trial.amplitude = options.eps_max * rng.uniform();
    double coarse = 0.0;
    if (n == 1) {
      const TrigCurve f = TrigCurve::random(rng, options.degree).scaled(trial.amplitude);
      const Complex lambda = p(0, 0);
      const auto velocity = [&](double t) { return lambda + f.derivative(t); };
      trial.value = midpoint_1d(velocity, q, {1.0, 0.0});
      coarse = midpoint_1d(velocity, q / 2, {1.0, 0.0});
    } else {
      const TrigSurface f = TrigSurface::random(rng, options.degree);
      trial.value = midpoint_2d(p, f, trial.amplitude, q, {1.0, 0.0});
      coarse = midpoint_2d(p, f, trial.amplitude, q / 2, {1.0, 0.0});
    }
    trial.margin = trial.value - report.flat_value;
    trial.doubling_delta = std::abs(trial.value - coarse);
    margin_sum += trial.margin;
    report.max_doubling_delta = std::max(report.max_doubling_delta, trial.doubling_delta);
    if (trial.margin < report.min_margin) {
      report.min_margin = trial.margin;
      report.worst = trial;
    }
    if (trial.margin < -options.margin_tol) {
      ++report.violations;
      if (!report.first_violation) report.first_violation = trial;
    }
  }
  report.mean_margin = margin_sum / options.trials;
  return report;
}

}  // namespace extvol
