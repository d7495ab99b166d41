#include "extvol/systole.hpp"

#include "extvol/error.hpp"
#include "extvol/moduli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>

#include <Eigen/LU>

namespace extvol {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kCertifyTolerance = 1e-12;
constexpr int kMaxDimension = 4;

// All nonzero vectors in [-bound, bound]^len whose first nonzero entry is positive.
std::vector<std::vector<long long>> sign_normalized_rows(int len, int bound) {
  std::vector<std::vector<long long>> rows;
  std::vector<long long> v(static_cast<std::size_t>(len), -bound);
  while (true) {
    const auto first = std::find_if(v.begin(), v.end(), [](long long x) { return x != 0; });
    if (first != v.end() && *first > 0) rows.push_back(v);
    int pos = len - 1;
    while (pos >= 0 && v[static_cast<std::size_t>(pos)] == bound) {
      v[static_cast<std::size_t>(pos)] = -bound;
      --pos;
    }
    if (pos < 0) break;
    ++v[static_cast<std::size_t>(pos)];
  }
  return rows;
}

// Visits every strictly increasing index tuple of length k drawn from [0, count).
template <class Visit>
void for_each_combination(int count, int k, Visit&& visit) {
  if (k > count) return;
  std::array<int, kMaxDimension> idx{};
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(std::span<const int>(idx.data(), static_cast<std::size_t>(k)));
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == count - k + pos) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
}

void check_search_args(int n, int coeff_bound) {
  if (n < 1 || n > kMaxDimension) {
    throw Error(ErrorCode::invalid_argument,
                "class search supports 1 <= n <= " + std::to_string(kMaxDimension));
  }
  if (coeff_bound < 1) throw Error(ErrorCode::invalid_argument, "coeff_bound must be >= 1");
}

IntMatrix rows_to_matrix(const std::vector<std::vector<long long>>& rows, std::span<const int> pick,
                         int n) {
  IntMatrix c(n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const auto& row = rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])];
    for (int k = 0; k < 2 * n; ++k) c(j, k) = row[static_cast<std::size_t>(k)];
  }
  return c;
}

}  // namespace

ClassEnumeration enumerate_classes(int n, int coeff_bound) {
  if (coeff_bound < 1) return {true, coeff_bound, {}};
  check_search_args(n, coeff_bound);
  const auto rows = sign_normalized_rows(2 * n, coeff_bound);
  std::set<std::vector<long long>> seen;
  for_each_combination(static_cast<int>(rows.size()), n, [&](std::span<const int> pick) {
    const HermiteForm h = hermite_normal_form(rows_to_matrix(rows, pick, n));
    if (h.rank == n) seen.insert(flatten(h.form));
  });
  ClassEnumeration out{true, coeff_bound, {}};
  out.classes.reserve(seen.size());
  for (const auto& flat : seen) {
    IntMatrix c(n, 2 * n);
    std::copy(flat.begin(), flat.end(), c.data());
    out.classes.emplace_back(std::move(c));
  }
  return out;
}

ClassEnumeration enumerate_classes(const ComplexLattice& lattice, int coeff_bound) {
  return enumerate_classes(lattice.dimension(), coeff_bound);
}

bool witness_precedes(const IntMatrix& a, const IntMatrix& b) {
  const long long la = a.cwiseAbs().sum(), lb = b.cwiseAbs().sum();
  if (la != lb) return la < lb;
  const auto fa = flatten(a), fb = flatten(b);
  return std::lexicographical_compare(fa.rbegin(), fa.rend(), fb.rbegin(), fb.rend());
}

SystoleResult complex_systole(const ComplexLattice& lattice, const SystoleOptions& options) {
  const int n = lattice.dimension();
  check_search_args(n, options.coeff_bound);
  const auto rows = sign_normalized_rows(2 * n, options.coeff_bound);
  const Eigen::MatrixXcd& g = lattice.generators();
  const bool rotated = options.omega_phase != Complex{1.0, 0.0};

  const GeneratorMinors minors = generator_minors(lattice);

  // Row norms |lambda(row)| for the totally-real test; the volume itself comes from
  // class_determinant so every basis of a sublattice yields the same value.
  std::vector<double> norms(rows.size());
  std::vector<Complex> lambda(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < n; ++i) {
      Complex sum{0.0, 0.0};
      for (int k = 0; k < 2 * n; ++k) sum += static_cast<double>(rows[r][static_cast<std::size_t>(k)]) * g(i, k);
      lambda[static_cast<std::size_t>(i)] = sum;
    }
    norms[r] = complex_norm(lambda);
  }

  struct Candidate {
    double value;
    std::array<int, kMaxDimension> pick;
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<Candidate> candidates;
  std::array<const long long*, kMaxDimension> picked{};

  for_each_combination(static_cast<int>(rows.size()), n, [&](std::span<const int> pick) {
    double norm_product = 1.0;
    for (int j = 0; j < n; ++j) {
      const auto r = static_cast<std::size_t>(pick[static_cast<std::size_t>(j)]);
      picked[static_cast<std::size_t>(j)] = rows[r].data();
      norm_product *= norms[r];
    }
    Complex det = class_determinant(minors, std::span<const long long* const>(picked.data(), static_cast<std::size_t>(n)));
    if (rotated) det *= options.omega_phase;
    const double value = std::abs(det);
    if (!(value > options.tr_tol * norm_product)) return;
    if (value > best * (1.0 + kTieTolerance)) return;
    Candidate c{value, {}};
    std::copy(pick.begin(), pick.end(), c.pick.begin());
    if (value < best) {
      best = value;
      std::erase_if(candidates, [&](const Candidate& x) { return x.value > best * (1.0 + kTieTolerance); });
    }
    candidates.push_back(c);
  });

  if (candidates.empty()) {
    throw Error(ErrorCode::empty_search, "no totally real class with coefficients in [-" +
                                             std::to_string(options.coeff_bound) + ", " +
                                             std::to_string(options.coeff_bound) + "]");
  }

  std::optional<IntMatrix> witness;
  for (const Candidate& c : candidates) {
    const HermiteForm h = hermite_normal_form(
        rows_to_matrix(rows, std::span<const int>(c.pick.data(), static_cast<std::size_t>(n)), n));
    IntMatrix form = h.form.topRows(n);
    if (!witness || witness_precedes(form, *witness)) witness = std::move(form);
  }

  SystoleResult result{best, DecomposableClass(std::move(*witness)), false};
  if (n == 1) {
    const double shortest = lagrange_gauss_shortest(lattice).length;
    result.certified = std::abs(best - shortest) <= kCertifyTolerance * shortest;
  }
  return result;
}

ShortestVector lagrange_gauss_shortest(const ComplexLattice& lattice) {
  if (lattice.dimension() != 1) {
    throw Error(ErrorCode::invalid_argument, "Lagrange-Gauss reduction needs n = 1");
  }
  Complex u = lattice.generator(0, 0), v = lattice.generator(1, 0);
  std::array<long long, 2> cu{1, 0}, cv{0, 1};
  constexpr int kMaxIter = 100000;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    if (std::norm(u) > std::norm(v)) {
      std::swap(u, v);
      std::swap(cu, cv);
    }
    const double mu = (v * std::conj(u)).real() / std::norm(u);
    const double q = std::round(mu);
    if (q != 0.0) {
      v -= q * u;
      const auto qi = static_cast<long long>(q);
      cv[0] -= qi * cu[0];
      cv[1] -= qi * cu[1];
    }
    if (std::norm(v) >= std::norm(u)) {
      return {u, std::abs(u), cu[0], cu[1]};
    }
  }
  throw Error(ErrorCode::invalid_lattice, "Lagrange-Gauss reduction did not terminate");
}

double systolic_ratio(const ComplexLattice& lattice, const SystoleOptions& options) {
  const double s = complex_systole(lattice, options).value;
  return s * s / lattice.covolume();
}

SiegelPoint random_siegel_point(int n, Rng& rng) {
  Eigen::MatrixXd a(n, n), l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      a(i, j) = rng.uniform(-0.5, 0.5);
      a(j, i) = a(i, j);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) l(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::MatrixXd b = l * l.transpose() + 0.01 * Eigen::MatrixXd::Identity(n, n);
  b = 0.5 * (b + b.transpose()).eval();
  return translate_reduce_siegel(SiegelPoint(std::move(a), std::move(b)));
}

BoundReport verify_polarized_bound(int n, int samples, std::uint64_t seed, int coeff_bound,
                                   double d) {
  if (n != 1 && n != 2) throw Error(ErrorCode::invalid_argument, "n must be 1 or 2");
  if (samples < 1) throw Error(ErrorCode::invalid_argument, "samples must be >= 1");
  if (!(d > 0.0)) throw Error(ErrorCode::invalid_argument, "bound d must be positive");

  BoundReport report;
  report.n = n;
  report.samples = samples;
  report.seed = seed;
  report.coeff_bound = coeff_bound;
  report.bound = d;
  report.histogram.assign(kHistogramBins, 0);

  const SystoleOptions options{coeff_bound, kDefaultTrTolerance, {1.0, 0.0}};
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const SiegelPoint point = random_siegel_point(n, rng);
    double ratio = 0.0;
    if (n == 1) {
      const Complex tau{point.a()(0, 0), point.b()(0, 0)};
      const Complex reduced = reduce_tau(tau).final_tau;
      ratio = systolic_ratio(ComplexLattice::from_columns({{Complex{1.0, 0.0}}, {reduced}}), options);
    } else {
      ratio = systolic_ratio(from_siegel(point), options);
    }
    report.max_ratio = std::max(report.max_ratio, ratio);
    const auto bin = std::min<long long>(kHistogramBins - 1,
                                         static_cast<long long>(std::floor(ratio / d * kHistogramBins)));
    ++report.histogram[static_cast<std::size_t>(bin)];
    const bool violates = ratio > d + 1e-12;
    if (violates) ++report.violations;
    if (ratio > 1.0 / point.b().determinant() + 1e-9) ++report.polarization_violations;
    if (violates && !report.first_violation) report.first_violation = BoundSample{point, ratio};
  }
  return report;
}

}  // namespace extvol
