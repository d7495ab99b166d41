#pragma once

#include "extvol/integer_matrix.hpp"
#include "extvol/lattice.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace extvol {

/// 2 / sqrt(3): the largest value of 1 / Im(tau) over the modular fundamental domain.
inline const double kHexagonalBound = 2.0 / std::sqrt(3.0);

inline constexpr double kFundamentalDomainTolerance = 1e-12;

/// One generator of the modular action on the upper half plane.
struct ReductionStep {
  enum class Kind { translate, invert };
  Kind kind = Kind::translate;
  long long shift = 0;  // tau -> tau + shift, for translate

  static ReductionStep translate(long long k) { return {Kind::translate, k}; }
  static ReductionStep invert() { return {Kind::invert, 0}; }

  /// "T:k" or "S".
  std::string label() const;
  static ReductionStep parse(const std::string& label);

  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  Complex final_tau;
};

/// Replays steps on tau: T^k adds k, S maps tau to -1/tau.
Complex apply_steps(Complex tau, std::span<const ReductionStep> steps);

/// Moves tau into { |Re tau| <= 1/2, |tau| >= 1 } by translations and inversions.
/// On the boundary the representative with Re tau >= 0 is chosen, so the result is
/// canonical and reducing it again yields an empty trace.
ReductionTrace reduce_tau(Complex tau, int max_iter = 1000);

bool is_in_fundamental_domain(Complex tau);

struct MuPair {
  double mu_alpha = 0.0;        // class of the segment ending at 1: 1 / Im tau
  double mu_alpha_prime = 0.0;  // class of the segment ending at tau: |tau|^2 / Im tau
};

MuPair mu_pair(Complex tau);

struct SiegelReduction {
  SiegelPoint point;
  IntMatrix congruence;  // U with B' = U^T B U (and A' = U^T A U - S for integral symmetric S)
};

/// Partial reduction under Sp(2n, Z): pairwise Lagrange reduction of the Gram matrix B
/// followed by integral translation of A into [-1/2, 1/2]. No inversions.
SiegelReduction translate_reduce_siegel_with_congruence(const SiegelPoint& point);
SiegelPoint translate_reduce_siegel(const SiegelPoint& point);

struct PolarizedBound {
  double mu = 0.0;  // 1 / det B, the extremal volume of the Z^n class
  bool bound_ok = false;
};

PolarizedBound polarized_mu_and_bound(const SiegelPoint& point, double d);

}  // namespace extvol
