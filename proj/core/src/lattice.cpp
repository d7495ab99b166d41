#include "extvol/lattice.hpp"

#include "extvol/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <array>
#include <cmath>
#include <string>

namespace extvol {
namespace {

constexpr double kRankThreshold = 1e-12;
constexpr double kSymmetryThreshold = 1e-12;

bool all_finite(const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
  }
  return true;
}

}  // namespace

ComplexLattice::ComplexLattice(Eigen::MatrixXcd generators) : generators_(std::move(generators)) {
  const Eigen::Index n = generators_.rows();
  if (n < 1) throw Error(ErrorCode::invalid_lattice, "dimension must be positive");
  if (generators_.cols() != 2 * n) {
    throw Error(ErrorCode::invalid_lattice, "expected " + std::to_string(2 * n) +
                                                " generators, got " +
                                                std::to_string(generators_.cols()));
  }
  if (!all_finite(generators_)) throw Error(ErrorCode::invalid_lattice, "non-finite generator");

  double norm_product = 1.0;
  for (Eigen::Index k = 0; k < generators_.cols(); ++k) norm_product *= generators_.col(k).norm();
  const double det = std::abs(real_generator_matrix(*this).partialPivLu().determinant());
  if (!(det > kRankThreshold * norm_product)) {
    throw Error(ErrorCode::invalid_lattice, "generators are not R-linearly independent");
  }
  covolume_ = det;
}

ComplexLattice ComplexLattice::from_columns(const std::vector<std::vector<Complex>>& generators) {
  const auto count = static_cast<Eigen::Index>(generators.size());
  if (count == 0 || count % 2 != 0) {
    throw Error(ErrorCode::invalid_lattice, "need an even, positive number of generators");
  }
  const Eigen::Index n = count / 2;
  Eigen::MatrixXcd g(n, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const auto& column = generators[static_cast<std::size_t>(k)];
    if (static_cast<Eigen::Index>(column.size()) != n) {
      throw Error(ErrorCode::invalid_lattice,
                  "generator " + std::to_string(k) + " has length " +
                      std::to_string(column.size()) + ", expected " + std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) g(j, k) = column[static_cast<std::size_t>(j)];
  }
  return ComplexLattice(std::move(g));
}

ComplexLattice ComplexLattice::scaled(Complex c) const {
  return ComplexLattice(c * generators_);
}

ComplexLattice ComplexLattice::recombined(const IntMatrix& u) const {
  const Eigen::Index m = generators_.cols();
  if (u.rows() != m || u.cols() != m) {
    throw Error(ErrorCode::dimension_mismatch, "recombination matrix must be 2n x 2n");
  }
  const long long det = integer_determinant(u);
  if (det != 1 && det != -1) throw Error(ErrorCode::not_unimodular, "recombination not in GL(2n, Z)");
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(generators_.rows(), m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index src = 0; src < m; ++src) {
      if (u(src, k) != 0) g.col(k) += static_cast<double>(u(src, k)) * generators_.col(src);
    }
  }
  return ComplexLattice(std::move(g));
}

DecomposableClass::DecomposableClass(IntMatrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() < 1 || coeffs_.cols() != 2 * coeffs_.rows()) {
    throw Error(ErrorCode::invalid_class, "coefficient matrix must be n x 2n, got " +
                                              std::to_string(coeffs_.rows()) + " x " +
                                              std::to_string(coeffs_.cols()));
  }
  if (integer_rank(coeffs_) != coeffs_.rows()) {
    throw Error(ErrorCode::invalid_class,
                "spanning vectors are linearly dependent (rank below n); such classes are "
                "not represented by an n-dimensional subtorus");
  }
}

DecomposableClass DecomposableClass::from_rows(const std::vector<std::vector<long long>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::invalid_class, "no rows");
  IntMatrix c(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw Error(ErrorCode::invalid_class, "ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return DecomposableClass(std::move(c));
}

DecomposableClass DecomposableClass::multiple(long long k) const {
  if (k == 0) throw Error(ErrorCode::invalid_class, "the zero class has no subtorus representative");
  IntMatrix c = coeffs_;
  c.row(0) *= k;
  return DecomposableClass(std::move(c));
}

DecomposableClass DecomposableClass::reversed(int row) const {
  IntMatrix c = coeffs_;
  c.row(row) *= -1;
  return DecomposableClass(std::move(c));
}

DecomposableClass DecomposableClass::recombined(const IntMatrix& u_inverse) const {
  if (u_inverse.rows() != coeffs_.cols() || u_inverse.cols() != coeffs_.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "recombination matrix must be 2n x 2n");
  }
  IntMatrix c = coeffs_ * u_inverse.transpose();
  return DecomposableClass(std::move(c));
}

DecomposableClass DecomposableClass::canonical() const {
  HermiteForm h = hermite_normal_form(coeffs_);
  return DecomposableClass(h.form.topRows(h.rank));
}

SiegelPoint::SiegelPoint(Eigen::MatrixXd a, Eigen::MatrixXd b) : a_(std::move(a)), b_(std::move(b)) {
  const Eigen::Index n = a_.rows();
  if (n < 1 || a_.cols() != n || b_.rows() != n || b_.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch, "A and B must be square of the same size");
  }
  if (!a_.allFinite() || !b_.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "non-finite Siegel matrix entry");
  }
  if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > kSymmetryThreshold) {
    throw Error(ErrorCode::asymmetric_matrix, "A is not symmetric");
  }
  if ((b_ - b_.transpose()).cwiseAbs().maxCoeff() > kSymmetryThreshold) {
    throw Error(ErrorCode::asymmetric_matrix, "B is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(b_);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::not_positive_definite, "B is not positive definite");
  }
}

Eigen::MatrixXcd SiegelPoint::tau() const {
  Eigen::MatrixXcd t(a_.rows(), a_.cols());
  t.real() = a_;
  t.imag() = b_;
  return t;
}

Eigen::MatrixXd real_generator_matrix(const ComplexLattice& lattice) {
  const Eigen::MatrixXcd& g = lattice.generators();
  const Eigen::Index n = g.rows();
  Eigen::MatrixXd r(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < 2 * n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      r(2 * j, k) = g(j, k).real();
      r(2 * j + 1, k) = g(j, k).imag();
    }
  }
  return r;
}

double covolume(const ComplexLattice& lattice) { return lattice.covolume(); }

Eigen::MatrixXcd period_matrix(const ComplexLattice& lattice, const DecomposableClass& cls) {
  const int n = lattice.dimension();
  if (cls.dimension() != n) {
    throw Error(ErrorCode::dimension_mismatch, "class has " + std::to_string(cls.dimension()) +
                                                   " rows but the lattice has dimension " +
                                                   std::to_string(n));
  }
  const Eigen::MatrixXcd& g = lattice.generators();
  const IntMatrix& c = cls.coeffs();
  Eigen::MatrixXcd p(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Complex sum{0.0, 0.0};
      for (int k = 0; k < 2 * n; ++k) sum += static_cast<double>(c(j, k)) * g(i, k);
      p(i, j) = sum;
    }
  }
  return p;
}

ComplexLattice from_siegel(const SiegelPoint& point) {
  const int n = point.dimension();
  Eigen::MatrixXcd g(n, 2 * n);
  g.leftCols(n) = Eigen::MatrixXcd::Identity(n, n);
  g.rightCols(n) = point.tau();
  return ComplexLattice(std::move(g));
}

Complex complex_determinant(std::span<const Complex> m, int n) {
  if (n < 1 || static_cast<int>(m.size()) != n * n) {
    throw Error(ErrorCode::dimension_mismatch, "complex determinant needs an n x n matrix");
  }
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[2] * m[1];
  Eigen::Map<const Eigen::MatrixXcd> view(m.data(), n, n);
  return view.partialPivLu().determinant();
}

Complex complex_determinant(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "complex determinant needs a square matrix");
  }
  return complex_determinant(std::span<const Complex>(m.data(), static_cast<std::size_t>(m.size())),
                             static_cast<int>(m.rows()));
}

namespace {

// Cofactor expansion; entries are small box coefficients, n <= 4.
long long small_integer_determinant(const long long* m, int n, int stride) {
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[stride + 1] - m[1] * m[stride];
  long long det = 0;
  std::array<long long, 16> minor{};
  for (int c = 0; c < n; ++c) {
    if (m[c] == 0) continue;
    for (int i = 1; i < n; ++i) {
      int k = 0;
      for (int j = 0; j < n; ++j) {
        if (j != c) minor[static_cast<std::size_t>((i - 1) * (n - 1) + k++)] = m[i * stride + j];
      }
    }
    const long long sub = small_integer_determinant(minor.data(), n - 1, n - 1);
    det += (c % 2 == 0 ? 1 : -1) * m[c] * sub;
  }
  return det;
}

}  // namespace

GeneratorMinors generator_minors(const ComplexLattice& lattice) {
  const int n = lattice.dimension();
  if (n > 4) throw Error(ErrorCode::invalid_argument, "Omega-volumes are supported for n <= 4");
  GeneratorMinors out;
  out.n = n;
  const Eigen::MatrixXcd& g = lattice.generators();
  std::vector<int> pick(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pick[static_cast<std::size_t>(i)] = i;
  std::vector<Complex> block(static_cast<std::size_t>(n * n));
  while (true) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) block[static_cast<std::size_t>(j * n + i)] = g(i, pick[static_cast<std::size_t>(j)]);
    }
    out.subsets.push_back(pick);
    out.minors.push_back(complex_determinant(block, n));
    int pos = n - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n + pos) --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < n; ++i) pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

Complex class_determinant(const GeneratorMinors& minors, std::span<const long long* const> rows) {
  const int n = minors.n;
  if (static_cast<int>(rows.size()) != n) {
    throw Error(ErrorCode::dimension_mismatch, "class_determinant needs n coefficient rows");
  }
  Complex det{0.0, 0.0};
  std::array<long long, 16> sub{};
  for (std::size_t s = 0; s < minors.subsets.size(); ++s) {
    const std::vector<int>& cols = minors.subsets[s];
    long long p = 0;
    if (n == 1) {
      p = rows[0][cols[0]];
    } else if (n == 2) {
      p = rows[0][cols[0]] * rows[1][cols[1]] - rows[0][cols[1]] * rows[1][cols[0]];
    } else {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) sub[static_cast<std::size_t>(i * n + j)] = rows[static_cast<std::size_t>(i)][cols[static_cast<std::size_t>(j)]];
      }
      p = small_integer_determinant(sub.data(), n, n);
    }
    if (p != 0) det += static_cast<double>(p) * minors.minors[s];
  }
  return det;
}

Complex class_determinant(const GeneratorMinors& minors, const IntMatrix& coeffs) {
  if (coeffs.rows() != minors.n || coeffs.cols() != 2 * minors.n) {
    throw Error(ErrorCode::dimension_mismatch, "class has the wrong shape for this lattice");
  }
  std::array<const long long*, 4> rows{};
  for (int j = 0; j < minors.n; ++j) rows[static_cast<std::size_t>(j)] = coeffs.data() + j * coeffs.cols();
  return class_determinant(minors, std::span<const long long* const>(rows.data(), static_cast<std::size_t>(minors.n)));
}

double complex_norm(std::span<const Complex> v) {
  double sum = 0.0;
  for (const Complex& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

}  // namespace extvol
