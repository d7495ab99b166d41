#pragma once

#include "extvol/lattice.hpp"

namespace extvol {

inline constexpr double kDefaultTrTolerance = 1e-10;

/// Integral of |dz^1 ^ ... ^ dz^n| over the flat subtorus: |det period_matrix|.
double omega_volume_class(const ComplexLattice& lattice, const DecomposableClass& cls);

/// The spanning vectors are C-linearly independent:
/// |det period_matrix| > tol * prod_j |lambda_j|.
bool is_totally_real(const ComplexLattice& lattice, const DecomposableClass& cls,
                     double tol = kDefaultTrTolerance);

/// Constant phase arg det(period_matrix) in (-pi, pi]; the subtorus is special for
/// e^{-i theta} dz^1 ^ ... ^ dz^n. Throws not_totally_real for complex classes.
double phase(const ComplexLattice& lattice, const DecomposableClass& cls,
             double tol = kDefaultTrTolerance);

/// Extremal volume of the class: |det P|^2 / covolume for totally real classes, else 0.
double extremal_volume(const ComplexLattice& lattice, const DecomposableClass& cls,
                       double tol = kDefaultTrTolerance);

/// sup over holomorphic volume forms of |int_alpha Omega|^2 / Omega-volume of the torus.
/// The space of such forms is one-dimensional, so this is |det P|^2 / covolume with no
/// totally-real gate.
double mu_prime(const ComplexLattice& lattice, const DecomposableClass& cls);

/// Block-diagonal product torus; generators of the first factor come first.
ComplexLattice product_lattice(const ComplexLattice& first, const ComplexLattice& second);
DecomposableClass product_class(const DecomposableClass& first, const DecomposableClass& second);

/// All of the above for one (lattice, class) pair.
struct ClassSummary {
  double covolume = 0.0;
  double omega_volume = 0.0;
  bool totally_real = false;
  double phase = 0.0;  // meaningful only when totally_real
  double mu = 0.0;
  double mu_prime = 0.0;
};

ClassSummary summarize_class(const ComplexLattice& lattice, const DecomposableClass& cls,
                             double tol = kDefaultTrTolerance);

}  // namespace extvol
