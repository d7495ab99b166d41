#pragma once

#include "extvol/lattice.hpp"
#include "extvol/random.hpp"
#include "extvol/torus_invariants.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace extvol {

/// Decomposable classes whose spanning coefficients all lie in [-bound, bound].
struct ClassEnumeration {
  /// Always true: the search is exhaustive only inside the coefficient box.
  bool box_limited = true;
  int coeff_bound = 0;
  /// One Hermite-canonical representative per sublattice, in lexicographic order.
  std::vector<DecomposableClass> classes;
};

ClassEnumeration enumerate_classes(int n, int coeff_bound);
ClassEnumeration enumerate_classes(const ComplexLattice& lattice, int coeff_bound);

struct SystoleOptions {
  int coeff_bound = 3;
  double tr_tol = kDefaultTrTolerance;
  /// Unit multiplier applied to the volume form; only absolute values enter, so the
  /// result must not depend on it.
  Complex omega_phase{1.0, 0.0};
};

struct SystoleResult {
  double value = 0.0;
  DecomposableClass witness;
  /// True only for n = 1 when the value matches the Lagrange-Gauss shortest vector.
  bool certified = false;
};

/// Smallest Omega-volume over the totally real classes in the coefficient box.
///
/// The minimum is taken over every coefficient matrix in the box (dedup does not change
/// it). Ties within a relative 1e-12 are broken by the smallest Hermite-canonical form,
/// ordered by l1 norm and then colexicographically on the row-major entries, which
/// prefers classes spanned by the earlier generators.
SystoleResult complex_systole(const ComplexLattice& lattice, const SystoleOptions& options = {});

/// Orders canonical coefficient matrices for witness selection.
bool witness_precedes(const IntMatrix& a, const IntMatrix& b);

struct ShortestVector {
  Complex vector;
  double length = 0.0;
  long long p = 0;  // vector = p * g_0 + q * g_1
  long long q = 0;
};

/// Two-vector Lagrange-Gauss reduction; n must be 1.
ShortestVector lagrange_gauss_shortest(const ComplexLattice& lattice);

/// complex_systole(...).value^2 / covolume.
double systolic_ratio(const ComplexLattice& lattice, const SystoleOptions& options = {});

/// Seeded random principally polarized point: A uniform in [-1/2, 1/2], B = L L^T + 0.01 I
/// with L uniform in [-1, 1], then partially reduced.
SiegelPoint random_siegel_point(int n, Rng& rng);

struct BoundSample {
  SiegelPoint point;
  double ratio = 0.0;
};

struct BoundReport {
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  int coeff_bound = 0;
  double bound = 0.0;
  double max_ratio = 0.0;
  int violations = 0;               // ratio > bound + 1e-12
  int polarization_violations = 0;  // ratio > 1/det B + 1e-9
  /// 20 equal bins on [0, bound]; ratios above the bound land in the last bin.
  std::vector<int> histogram;
  std::optional<BoundSample> first_violation;
};

inline constexpr int kHistogramBins = 20;

/// Samples principally polarized tori and checks the systolic ratio against d. For n = 1
/// each sample is first moved into the modular fundamental domain.
BoundReport verify_polarized_bound(int n, int samples, std::uint64_t seed, int coeff_bound,
                                   double d);

}  // namespace extvol
