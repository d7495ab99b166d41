#include "extvol/extremal_length.hpp"

#include "extvol/error.hpp"
#include "extvol/moduli.hpp"
#include "extvol/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>

namespace extvol {
namespace {

struct Offset {
  int da;
  int db;
};

constexpr std::array<Offset, 16> kNeighbourhood{{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1},
    {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
    {1, 2}, {2, 1}, {-1, 2}, {-2, 1},
    {1, -2}, {2, -1}, {-1, -2}, {-2, -1},
}};

void check_tau(Complex tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    throw Error(ErrorCode::invalid_tau, "tau must be finite with Im tau > 0");
  }
}

int wrap(long long x, int n) {
  const long long r = x % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

ConformalField::ConformalField(Complex tau, int resolution, std::vector<double> values)
    : tau_(tau), n_(resolution), values_(std::move(values)) {
  check_tau(tau_);
  if (n_ < 1) throw Error(ErrorCode::invalid_argument, "grid resolution must be >= 1");
  if (values_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {
    throw Error(ErrorCode::dimension_mismatch, "field needs N x N samples");
  }
  bool positive = false;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::inadmissible, "conformal factor must be finite and non-negative");
    }
    positive = positive || v > 0.0;
  }
  if (!positive) throw Error(ErrorCode::inadmissible, "conformal factor is identically zero");
}

ConformalField ConformalField::constant(Complex tau, int resolution, double value) {
  const auto count = static_cast<std::size_t>(std::max(resolution, 0));
  return ConformalField(tau, resolution, std::vector<double>(count * count, value));
}

ConformalField ConformalField::trigonometric(Complex tau, int resolution, const TrigFieldSpec& spec) {
  if (spec.degree < 0) throw Error(ErrorCode::invalid_argument, "degree must be >= 0");
  if (!(spec.lo > 0.0) || !(spec.hi >= spec.lo)) {
    throw Error(ErrorCode::invalid_argument, "need 0 < lo <= hi");
  }
  if (resolution < 1) throw Error(ErrorCode::invalid_argument, "grid resolution must be >= 1");

  struct Term {
    int k1, k2;
    double c, s;
  };
  Rng rng(spec.seed);
  std::vector<Term> terms;
  for (int k2 = 0; k2 <= spec.degree; ++k2) {
    for (int k1 = -spec.degree; k1 <= spec.degree; ++k1) {
      if (k2 == 0 && k1 <= 0) continue;
      const double c = rng.uniform(-1.0, 1.0);
      const double s = rng.uniform(-1.0, 1.0);
      terms.push_back({k1, k2, c, s});
    }
  }

  const auto n = static_cast<std::size_t>(resolution);
  std::vector<double> f(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
      double sum = 0.0;
      for (const Term& term : terms) {
        const double angle = 2.0 * std::numbers::pi * (term.k1 * s + term.k2 * t);
        sum += term.c * std::cos(angle) + term.s * std::sin(angle);
      }
      f[i * n + j] = sum;
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(f.begin(), f.end());
  const double fmin = *lo_it, fmax = *hi_it;
  for (double& v : f) {
    v = fmax - fmin > 1e-300 ? spec.lo + (spec.hi - spec.lo) * (v - fmin) / (fmax - fmin)
                             : 0.5 * (spec.lo + spec.hi);
  }
  return ConformalField(tau, resolution, std::move(f));
}

ConformalField ConformalField::scaled(double c) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return ConformalField(tau_, n_, std::move(v));
}

double area(const ConformalField& field) {
  double sum = 0.0;
  for (double v : field.values()) sum += v * v;
  const double n = field.resolution();
  return sum * field.tau().imag() / (n * n);
}

double len_class(const ConformalField& field, CurveClass cls, const LengthOptions& options) {
  if (cls.p == 0 && cls.q == 0) {
    throw Error(ErrorCode::invalid_argument, "the zero class has no closed curves");
  }
  if (options.extent_margin < 0) throw Error(ErrorCode::invalid_argument, "extent margin must be >= 0");
  // Reversing a curve keeps its length; searching one orientation makes the result exactly even.
  if (cls.p < 0 || (cls.p == 0 && cls.q < 0)) cls = {-cls.p, -cls.q};
  const int n = field.resolution();
  const long long margin = static_cast<long long>(options.extent_margin) * n;
  const long long target_a = cls.p * n, target_b = cls.q * n;
  const long long a_min = std::min(0LL, target_a) - margin, a_max = std::max(0LL, target_a) + margin;
  const long long b_min = std::min(0LL, target_b) - margin, b_max = std::max(0LL, target_b) + margin;
  const long long width = a_max - a_min + 1, height = b_max - b_min + 1;
  if (width * height > 400'000'000LL) {
    throw Error(ErrorCode::invalid_argument, "universal-cover grid too large");
  }

  std::array<double, kNeighbourhood.size()> edge_length{};
  for (std::size_t e = 0; e < kNeighbourhood.size(); ++e) {
    edge_length[e] = std::abs(static_cast<double>(kNeighbourhood[e].da) +
                              static_cast<double>(kNeighbourhood[e].db) * field.tau()) /
                     static_cast<double>(n);
  }

  auto index = [&](long long a, long long b) {
    return static_cast<std::size_t>((a - a_min) * height + (b - b_min));
  };
  auto rho = [&](long long a, long long b) { return field.value(wrap(a, n), wrap(b, n)); };

  std::vector<double> dist(static_cast<std::size_t>(width * height),
                           std::numeric_limits<double>::infinity());
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  const std::size_t source = index(0, 0), target = index(target_a, target_b);
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, node] = queue.top();
    queue.pop();
    if (d > dist[node]) continue;
    if (node == target) return d;
    const long long a = static_cast<long long>(node) / height + a_min;
    const long long b = static_cast<long long>(node) % height + b_min;
    const double rho_here = rho(a, b);
    for (std::size_t e = 0; e < kNeighbourhood.size(); ++e) {
      const long long na = a + kNeighbourhood[e].da, nb = b + kNeighbourhood[e].db;
      if (na < a_min || na > a_max || nb < b_min || nb > b_max) continue;
      const double w = 0.5 * (rho_here + rho(na, nb)) * edge_length[e];
      const std::size_t next = index(na, nb);
      if (d + w < dist[next]) {
        dist[next] = d + w;
        queue.emplace(d + w, next);
      }
    }
  }
  return dist[target];
}

double ratio(const ConformalField& field, CurveClass cls, const LengthOptions& options) {
  const double len = len_class(field, cls, options);
  return len * len / area(field);
}

LoewnerReport loewner_check(const ConformalField& field, int coeff_bound, double grid_tolerance,
                            const LengthOptions& options) {
  if (coeff_bound < 1) throw Error(ErrorCode::invalid_argument, "coeff_bound must be >= 1");
  if (!(grid_tolerance >= 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be >= 0");
  if (!is_in_fundamental_domain(field.tau())) {
    throw Error(ErrorCode::invalid_tau, "tau must be reduced to the modular fundamental domain");
  }

  std::vector<CurveClass> classes;
  for (long long p = 0; p <= coeff_bound; ++p) {
    for (long long q = -coeff_bound; q <= coeff_bound; ++q) {
      if (p == 0 && q <= 0) continue;
      if (std::gcd(p, q) != 1) continue;
      classes.push_back({p, q});
    }
  }
  const Complex tau = field.tau();
  auto euclid = [&](CurveClass c) {
    return std::abs(static_cast<double>(c.p) + static_cast<double>(c.q) * tau);
  };
  std::stable_sort(classes.begin(), classes.end(),
                   [&](CurveClass x, CurveClass y) { return euclid(x) < euclid(y); });

  const double a = area(field);
  const double rho_min = *std::min_element(field.values().begin(), field.values().end());

  LoewnerReport report;
  report.tolerance = grid_tolerance;
  report.bound = kHexagonalBound * (1.0 + grid_tolerance);
  report.classes_total = static_cast<int>(classes.size());
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (const CurveClass& c : classes) {
    // Every grid path has Euclidean length >= |p + q tau| and weight >= rho_min per unit.
    const double lower = rho_min * euclid(c);
    if (lower * lower / a >= report.min_ratio) continue;
    const double len = len_class(field, c, options);
    ++report.classes_examined;
    const double r = len * len / a;
    if (r < report.min_ratio) {
      report.min_ratio = r;
      report.minimizer = c;
    }
  }
  report.margin = report.bound - report.min_ratio;
  report.ok = report.min_ratio <= report.bound;
  return report;
}

}  // namespace extvol
