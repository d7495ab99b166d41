#pragma once

#include "extvol/integer_matrix.hpp"

#include <Eigen/Core>

#include <complex>
#include <span>
#include <vector>

namespace extvol {

using Complex = std::complex<double>;

/// Full-rank lattice in C^n given by 2n generators; represents the torus C^n / lattice.
///
/// Generators are stored as the columns of an n x 2n complex matrix. The real covolume
/// is computed once at construction, where full rank is enforced by the scale-free test
/// |det| > 1e-12 * prod_k |g_k|.
class ComplexLattice {
 public:
  explicit ComplexLattice(Eigen::MatrixXcd generators);

  static ComplexLattice from_columns(const std::vector<std::vector<Complex>>& generators);

  int dimension() const noexcept { return static_cast<int>(generators_.rows()); }
  const Eigen::MatrixXcd& generators() const noexcept { return generators_; }
  Complex generator(int k, int coordinate) const { return generators_(coordinate, k); }

  double covolume() const noexcept { return covolume_; }

  /// The lattice c * L, biholomorphic to L.
  ComplexLattice scaled(Complex c) const;

  /// Generators g'_k = sum_m u(m, k) g_m for u in GL(2n, Z).
  ComplexLattice recombined(const IntMatrix& u) const;

 private:
  Eigen::MatrixXcd generators_;
  double covolume_ = 0.0;
};

/// n integer combinations of the generators spanning a subtorus; row j gives
/// lambda_j = sum_k coeffs(j, k) g_k. Shape must be n x 2n with rank n.
class DecomposableClass {
 public:
  explicit DecomposableClass(IntMatrix coeffs);

  static DecomposableClass from_rows(const std::vector<std::vector<long long>>& rows);

  int dimension() const noexcept { return static_cast<int>(coeffs_.rows()); }
  const IntMatrix& coeffs() const noexcept { return coeffs_; }

  /// k times the class: the first spanning vector is multiplied by k (k != 0).
  DecomposableClass multiple(long long k) const;

  /// The same class with one spanning vector reversed.
  DecomposableClass reversed(int row) const;

  /// Coefficients after the generators are recombined by u: coeffs * u^{-T}.
  DecomposableClass recombined(const IntMatrix& u_inverse) const;

  /// Hermite normal form of the row lattice; equal for classes spanning the same sublattice.
  DecomposableClass canonical() const;

  friend bool operator==(const DecomposableClass& a, const DecomposableClass& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  IntMatrix coeffs_;
};

/// tau = A + iB with A, B real symmetric and B positive definite.
class SiegelPoint {
 public:
  SiegelPoint(Eigen::MatrixXd a, Eigen::MatrixXd b);

  int dimension() const noexcept { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXd& a() const noexcept { return a_; }
  const Eigen::MatrixXd& b() const noexcept { return b_; }
  Eigen::MatrixXcd tau() const;

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
};

/// 2n x 2n real matrix; column k is generator k with rows (Re z_1, Im z_1, ..., Re z_n, Im z_n).
Eigen::MatrixXd real_generator_matrix(const ComplexLattice& lattice);

/// |det real_generator_matrix|, the integral of the standard volume form over the torus.
double covolume(const ComplexLattice& lattice);

/// n x n complex matrix whose column j is lambda_j.
Eigen::MatrixXcd period_matrix(const ComplexLattice& lattice, const DecomposableClass& cls);

/// Lattice Z^n + tau Z^n, generators e_1..e_n, tau e_1..tau e_n.
ComplexLattice from_siegel(const SiegelPoint& point);

/// Determinant of an n x n complex matrix stored column-major. Closed forms for n <= 2,
/// partial-pivot LU otherwise.
Complex complex_determinant(std::span<const Complex> column_major, int n);
Complex complex_determinant(const Eigen::MatrixXcd& m);

/// n x n minors of the generator matrix, one per n-subset of the 2n generators in
/// lexicographic order.
struct GeneratorMinors {
  int n = 0;
  std::vector<std::vector<int>> subsets;
  std::vector<Complex> minors;
};

GeneratorMinors generator_minors(const ComplexLattice& lattice);

/// det of the period matrix of the class with the given n coefficient rows, expanded by
/// Cauchy-Binet over integer minors of the rows. A change of basis of the same sublattice
/// multiplies every integer minor by the same +-1, so the modulus is bit-identical across
/// bases. All Omega-volume comparisons go through this function.
Complex class_determinant(const GeneratorMinors& minors, std::span<const long long* const> rows);
Complex class_determinant(const GeneratorMinors& minors, const IntMatrix& coeffs);

/// Euclidean norm of a vector in C^n.
double complex_norm(std::span<const Complex> v);

}  // namespace extvol
