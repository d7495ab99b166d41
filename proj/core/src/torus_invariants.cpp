#include "extvol/torus_invariants.hpp"

#include "extvol/error.hpp"

#include <cmath>

namespace extvol {
namespace {

struct PeriodData {
  Complex det;
  double norm_product;
};

PeriodData period_data(const ComplexLattice& lattice, const DecomposableClass& cls) {
  const Eigen::MatrixXcd p = period_matrix(lattice, cls);
  const auto n = static_cast<std::size_t>(p.rows());
  double norms = 1.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    norms *= complex_norm(std::span<const Complex>(p.col(j).data(), n));
  }
  return {class_determinant(generator_minors(lattice), cls.coeffs()), norms};
}

bool passes_tr(const PeriodData& d, double tol) { return std::abs(d.det) > tol * d.norm_product; }

}  // namespace

double omega_volume_class(const ComplexLattice& lattice, const DecomposableClass& cls) {
  return std::abs(period_data(lattice, cls).det);
}

bool is_totally_real(const ComplexLattice& lattice, const DecomposableClass& cls, double tol) {
  return passes_tr(period_data(lattice, cls), tol);
}

double phase(const ComplexLattice& lattice, const DecomposableClass& cls, double tol) {
  const PeriodData d = period_data(lattice, cls);
  if (!passes_tr(d, tol)) {
    throw Error(ErrorCode::not_totally_real, "the subtorus contains a complex line");
  }
  const double theta = std::arg(d.det);
  return theta == -M_PI ? M_PI : theta;
}

double extremal_volume(const ComplexLattice& lattice, const DecomposableClass& cls, double tol) {
  const PeriodData d = period_data(lattice, cls);
  if (!passes_tr(d, tol)) return 0.0;
  return std::norm(d.det) / lattice.covolume();
}

double mu_prime(const ComplexLattice& lattice, const DecomposableClass& cls) {
  return std::norm(period_data(lattice, cls).det) / lattice.covolume();
}

ComplexLattice product_lattice(const ComplexLattice& first, const ComplexLattice& second) {
  const int n1 = first.dimension(), n2 = second.dimension();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n1 + n2, 2 * (n1 + n2));
  g.block(0, 0, n1, 2 * n1) = first.generators();
  g.block(n1, 2 * n1, n2, 2 * n2) = second.generators();
  return ComplexLattice(std::move(g));
}

DecomposableClass product_class(const DecomposableClass& first, const DecomposableClass& second) {
  const int n1 = first.dimension(), n2 = second.dimension();
  IntMatrix c = IntMatrix::Zero(n1 + n2, 2 * (n1 + n2));
  c.block(0, 0, n1, 2 * n1) = first.coeffs();
  c.block(n1, 2 * n1, n2, 2 * n2) = second.coeffs();
  return DecomposableClass(std::move(c));
}

ClassSummary summarize_class(const ComplexLattice& lattice, const DecomposableClass& cls,
                             double tol) {
  const PeriodData d = period_data(lattice, cls);
  ClassSummary s;
  s.covolume = lattice.covolume();
  s.omega_volume = std::abs(d.det);
  s.totally_real = passes_tr(d, tol);
  s.phase = s.totally_real ? phase(lattice, cls, tol) : 0.0;
  s.mu_prime = std::norm(d.det) / s.covolume;
  s.mu = s.totally_real ? s.mu_prime : 0.0;
  return s;
}

}  // namespace extvol
