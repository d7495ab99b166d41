#pragma once

#include "extvol/lattice.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace extvol {

class Rng;

/// f(t) = sum_k cos_k cos(2 pi k t) + sin_k sin(2 pi k t) for k = 1..K. No constant or
/// linear term, so f(0) = f(1) and the perturbed cycle stays in its homology class.
struct TrigCurve {
  std::vector<Complex> cos_coeffs;
  std::vector<Complex> sin_coeffs;

  int degree() const noexcept { return static_cast<int>(cos_coeffs.size()); }
  Complex value(double t) const;
  Complex derivative(double t) const;
  TrigCurve scaled(double amplitude) const;

  /// Coefficients uniform in the unit disc, normalized so their magnitudes sum to 1.
  static TrigCurve random(Rng& rng, int degree);
};

/// One term of a doubly periodic map T^2 -> C^2: (a cos(2 pi k.t) + b sin(2 pi k.t)).
struct SurfaceTerm {
  int k1 = 0;
  int k2 = 0;
  std::array<Complex, 2> cos_coeff{};
  std::array<Complex, 2> sin_coeff{};
};

struct TrigSurface {
  std::vector<SurfaceTerm> terms;

  std::array<Complex, 2> value(double t1, double t2) const;
  /// Columns are d/dt1 and d/dt2.
  std::array<std::array<Complex, 2>, 2> jacobian(double t1, double t2) const;

  /// All frequencies with 1 <= max(|k1|, |k2|) <= degree in a half plane, coefficient
  /// magnitudes summing to 1.
  static TrigSurface random(Rng& rng, int degree);
};

inline constexpr int kMinQuadraturePoints = 64;

struct PerturbedCycle1D {
  ComplexLattice lattice;
  DecomposableClass cls;
  TrigCurve perturbation;
  int quadrature = 4096;
};

struct PerturbedTorus2D {
  ComplexLattice lattice;
  DecomposableClass cls;
  TrigSurface perturbation;
  double amplitude = 0.0;
  int quadrature = 256;
};

/// Composite midpoint rule for int_0^1 |phase * velocity(t)| dt.
double curve_omega_volume(const std::function<Complex(double)>& velocity, int quadrature,
                          Complex phase = {1.0, 0.0});

/// Omega-volume of t -> t lambda + f(t) with Omega = phase * dz.
double cycle_omega_volume_1d(const PerturbedCycle1D& cycle, Complex phase = {1.0, 0.0});

/// Omega-volume of t -> t1 lambda1 + t2 lambda2 + eps f(t) with Omega = phase * dz1 ^ dz2.
double surface_omega_volume_2d(const PerturbedTorus2D& surface, Complex phase = {1.0, 0.0});

struct MinimalityOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  double eps_max = 0.1;
  int quadrature = 256;
  int degree = 3;
  double margin_tol = 1e-6;
};

struct MinimalityTrial {
  int index = 0;
  std::uint64_t seed = 0;
  double amplitude = 0.0;
  double value = 0.0;
  double margin = 0.0;
  double doubling_delta = 0.0;
};

struct MinimalityReport {
  int dimension = 0;
  int trials = 0;
  int violations = 0;
  double flat_value = 0.0;
  double min_margin = 0.0;
  double mean_margin = 0.0;
  /// Largest |V(Q) - V(Q/2)| over the trials.
  double max_doubling_delta = 0.0;
  MinimalityTrial worst;
  std::optional<MinimalityTrial> first_violation;
};

/// Seeded random perturbations of the flat representative with amplitude eps_max * u,
/// u uniform in [0, 1). Supports n = 1 and n = 2.
MinimalityReport verify_minimality(const ComplexLattice& lattice, const DecomposableClass& cls,
                                   const MinimalityOptions& options);

}  // namespace extvol
