#pragma once

#include "extvol/lattice.hpp"

#include <cstdint>
#include <vector>

namespace extvol {

/// Relative length error of the 16-direction grid metric (king + knight moves with exact
/// Euclidean edge lengths): 1 / cos(atan(1/2) / 2) - 1.
inline constexpr double kGridLengthAnisotropy = 0.028;
/// One-sided tolerance on Len^2 / A used by the supremum and Loewner checks.
inline constexpr double kGridRatioTolerance = 0.08;

struct TrigFieldSpec {
  std::uint64_t seed = 0;
  int degree = 3;
  double lo = 0.5;
  double hi = 2.0;
};

/// Samples of a conformal factor rho at the cell centres of the fundamental parallelogram
/// {s + t tau : s, t in [0, 1)}. value(i, j) is rho at s = (i + 1/2)/N, t = (j + 1/2)/N; the
/// field is extended periodically.
class ConformalField {
 public:
  ConformalField(Complex tau, int resolution, std::vector<double> values);

  static ConformalField constant(Complex tau, int resolution, double value);
  /// Random doubly periodic trigonometric polynomial of the given degree, affinely mapped
  /// onto [lo, hi] over the sample grid.
  static ConformalField trigonometric(Complex tau, int resolution, const TrigFieldSpec& spec);

  Complex tau() const noexcept { return tau_; }
  int resolution() const noexcept { return n_; }
  double value(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(j)];
  }
  const std::vector<double>& values() const noexcept { return values_; }

  ConformalField scaled(double c) const;

 private:
  Complex tau_;
  int n_;
  std::vector<double> values_;
};

/// Homology class p + q tau of a closed curve on C / (Z + tau Z).
struct CurveClass {
  long long p = 0;
  long long q = 0;
};

struct LengthOptions {
  /// Fundamental domains added on each side of the straight segment. 1 gives the
  /// (|p| + 2) x (|q| + 2) tiling.
  int extent_margin = 1;
};

/// Midpoint rule: sum of rho^2 times the cell area Im(tau) / N^2.
double area(const ConformalField& field);

/// Grid shortest path from a node to its translate by p + q tau in the universal cover.
double len_class(const ConformalField& field, CurveClass cls, const LengthOptions& options = {});

/// len_class^2 / area.
double ratio(const ConformalField& field, CurveClass cls, const LengthOptions& options = {});

struct LoewnerReport {
  double min_ratio = 0.0;
  CurveClass minimizer;
  double bound = 0.0;      // (2 / sqrt 3) * (1 + tolerance)
  double tolerance = 0.0;
  double margin = 0.0;     // bound - min_ratio
  bool ok = false;
  int classes_examined = 0;  // Dijkstra runs; others were excluded by the rho_min lower bound
  int classes_total = 0;
};

/// Minimum of ratio over primitive classes with |p|, |q| <= coeff_bound, compared with
/// 2 / sqrt 3. tau must lie in the modular fundamental domain.
LoewnerReport loewner_check(const ConformalField& field, int coeff_bound,
                            double grid_tolerance = kGridRatioTolerance,
                            const LengthOptions& options = {});

}  // namespace extvol
