#include "extvol/reinhardt.hpp"

#include "extvol/error.hpp"
#include "extvol/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace extvol {
namespace {

void check_box(const Box& box, int n, const char* what) {
  if (static_cast<int>(box.size()) != n) {
    throw Error(ErrorCode::dimension_mismatch, std::string(what) + " has the wrong dimension");
  }
  for (const Interval& iv : box) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw Error(ErrorCode::inadmissible,
                  std::string(what) + " is unbounded in log coordinates (collapsing domain)");
    }
    if (!(iv.lo < iv.hi)) throw Error(ErrorCode::inadmissible, std::string(what) + " has empty extent");
  }
}

bool interiors_overlap(const Box& x, const Box& y) {
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (std::min(x[d].hi, y[d].hi) <= std::max(x[d].lo, y[d].lo)) return false;
  }
  return true;
}

// Product of widths in ascending order, so permuting coordinates gives the same bits.
double box_volume(const Box& box) {
  std::vector<double> widths;
  widths.reserve(box.size());
  for (const Interval& iv : box) widths.push_back(iv.hi - iv.lo);
  std::sort(widths.begin(), widths.end());
  double v = 1.0;
  for (double w : widths) v *= w;
  return v;
}

bool in_box(const Box& box, const Eigen::VectorXd& y) {
  for (std::size_t d = 0; d < box.size(); ++d) {
    const double v = y(static_cast<Eigen::Index>(d));
    if (v < box[d].lo || v > box[d].hi) return false;
  }
  return true;
}

Box hull_of_image(const Box& box, const Eigen::MatrixXd& m, const Eigen::VectorXd& offset) {
  const auto n = static_cast<Eigen::Index>(box.size());
  Box out(box.size(), Interval{std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity()});
  const std::size_t corners = std::size_t{1} << box.size();
  Eigen::VectorXd x(n);
  for (std::size_t mask = 0; mask < corners; ++mask) {
    for (Eigen::Index d = 0; d < n; ++d) {
      const Interval& iv = box[static_cast<std::size_t>(d)];
      x(d) = (mask >> d) & 1U ? iv.hi : iv.lo;
    }
    const Eigen::VectorXd y = m * x + offset;
    for (Eigen::Index d = 0; d < n; ++d) {
      out[static_cast<std::size_t>(d)].lo = std::min(out[static_cast<std::size_t>(d)].lo, y(d));
      out[static_cast<std::size_t>(d)].hi = std::max(out[static_cast<std::size_t>(d)].hi, y(d));
    }
  }
  return out;
}

Box union_hull(const std::vector<Box>& boxes) {
  Box out = boxes.front();
  for (const Box& b : boxes) {
    for (std::size_t d = 0; d < b.size(); ++d) {
      out[d].lo = std::min(out[d].lo, b[d].lo);
      out[d].hi = std::max(out[d].hi, b[d].hi);
    }
  }
  return out;
}

}  // namespace

bool Predicate::contains(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd y = pre_map ? Eigen::VectorXd(pre_map->matrix * x + pre_map->shift) : x;
  switch (kind) {
    case Kind::ball:
      return (y - center).squaredNorm() <= radius * radius;
    case Kind::halfspaces:
      return ((normals * y).array() <= offsets.array()).all();
    case Kind::boxes:
      return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return in_box(b, y); });
  }
  return false;
}

const char* to_string(Predicate::Kind kind) noexcept {
  switch (kind) {
    case Predicate::Kind::ball: return "ball";
    case Predicate::Kind::halfspaces: return "halfspaces";
    case Predicate::Kind::boxes: return "boxes";
  }
  return "unknown";
}

Predicate::Kind parse_predicate_kind(const std::string& name) {
  if (name == "ball") return Predicate::Kind::ball;
  if (name == "halfspaces") return Predicate::Kind::halfspaces;
  if (name == "boxes") return Predicate::Kind::boxes;
  throw Error(ErrorCode::invalid_argument, "unknown predicate kind '" + name + "'");
}

LogBase LogBase::from_boxes(int n, std::vector<Box> boxes, std::optional<Eigen::VectorXd> shift) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  if (boxes.empty()) throw Error(ErrorCode::inadmissible, "empty base");
  for (const Box& b : boxes) check_box(b, n, "box");
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      if (interiors_overlap(boxes[i], boxes[j])) {
        throw Error(ErrorCode::invalid_argument,
                    "boxes " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
  Eigen::VectorXd s = shift.value_or(Eigen::VectorXd::Zero(n));
  if (s.size() != n || !s.allFinite()) throw Error(ErrorCode::dimension_mismatch, "bad box translation");
  return LogBase(n, BoxList{std::move(boxes), std::move(s)});
}

LogBase LogBase::from_predicate(int n, Predicate p) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  check_box(p.bbox, n, "bounding box");
  if (p.mc.samples < 1) throw Error(ErrorCode::invalid_argument, "need at least one sample");
  switch (p.kind) {
    case Predicate::Kind::ball:
      if (p.center.size() != n) throw Error(ErrorCode::dimension_mismatch, "ball center dimension");
      if (!(p.radius > 0.0) || !std::isfinite(p.radius)) {
        throw Error(ErrorCode::inadmissible, "ball radius must be positive");
      }
      break;
    case Predicate::Kind::halfspaces:
      if (p.normals.cols() != n || p.offsets.size() != p.normals.rows() || p.normals.rows() == 0) {
        throw Error(ErrorCode::dimension_mismatch, "halfspace normals / offsets shape");
      }
      break;
    case Predicate::Kind::boxes:
      if (p.boxes.empty()) throw Error(ErrorCode::inadmissible, "empty box union");
      for (const Box& b : p.boxes) check_box(b, n, "box");
      break;
  }
  if (p.pre_map && (p.pre_map->matrix.rows() != n || p.pre_map->matrix.cols() != n ||
                    p.pre_map->shift.size() != n)) {
    throw Error(ErrorCode::dimension_mismatch, "pre-map shape");
  }
  return LogBase(n, std::move(p));
}

const std::vector<Box>& LogBase::boxes() const {
  if (!is_box_list()) throw Error(ErrorCode::invalid_argument, "base is not a box list");
  return std::get<BoxList>(shape_).boxes;
}

const Eigen::VectorXd& LogBase::shift() const {
  if (!is_box_list()) throw Error(ErrorCode::invalid_argument, "base is not a box list");
  return std::get<BoxList>(shape_).shift;
}

std::vector<Box> LogBase::translated_boxes() const {
  std::vector<Box> out = boxes();
  const Eigen::VectorXd& s = shift();
  for (Box& b : out) {
    for (std::size_t d = 0; d < b.size(); ++d) {
      b[d].lo += s(static_cast<Eigen::Index>(d));
      b[d].hi += s(static_cast<Eigen::Index>(d));
    }
  }
  return out;
}

const Predicate& LogBase::predicate() const {
  if (is_box_list()) throw Error(ErrorCode::invalid_argument, "base is a box list");
  return std::get<Predicate>(shape_);
}

Box LogBase::bounding_box() const {
  if (is_box_list()) return union_hull(translated_boxes());
  return predicate().bbox;
}

VolumeEstimate log_volume(const LogBase& base) {
  if (base.is_box_list()) {
    double v = 0.0;
    for (const Box& b : base.boxes()) v += box_volume(b);
    return {v, 0.0};
  }
  const Predicate& p = base.predicate();
  const int n = base.dimension();
  Rng rng(p.mc.seed);
  Eigen::VectorXd x(n);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < p.mc.samples; ++s) {
    for (int d = 0; d < n; ++d) {
      x(d) = rng.uniform(p.bbox[static_cast<std::size_t>(d)].lo, p.bbox[static_cast<std::size_t>(d)].hi);
    }
    if (p.contains(x)) ++hits;
  }
  if (hits == 0) throw Error(ErrorCode::inadmissible, "no Monte-Carlo sample hit the base");
  const double total = static_cast<double>(p.mc.samples);
  const double frac = static_cast<double>(hits) / total;
  double bbox_volume = 1.0;
  for (const Interval& iv : p.bbox) bbox_volume *= iv.hi - iv.lo;
  return {bbox_volume * frac, bbox_volume * std::sqrt(frac * (1.0 - frac) / total)};
}

double reinhardt_mu(const LogBase& base) {
  const double v = log_volume(base).value;
  if (!(v > 0.0)) throw Error(ErrorCode::inadmissible, "logarithmic volume is zero");
  return std::pow(2.0 * std::numbers::pi, base.dimension()) / v;
}

LogBase monomial_pushforward(const LogBase& base, const IntMatrix& u, const MonteCarloConfig& mc) {
  const int n = base.dimension();
  if (u.rows() != n || u.cols() != n) throw Error(ErrorCode::dimension_mismatch, "U must be n x n");
  const long long det = integer_determinant(u);
  if (det != 1 && det != -1) {
    throw Error(ErrorCode::not_unimodular, "det U = " + std::to_string(det) + ", expected +-1");
  }
  if (u == IntMatrix::Identity(n, n)) return base;

  const Eigen::MatrixXd ud = u.cast<double>();
  const Eigen::MatrixXd u_inv = unimodular_inverse(u).cast<double>();

  if (base.is_box_list() && is_signed_permutation(u)) {
    std::vector<Box> boxes;
    Eigen::VectorXd shift(n);
    for (const Box& b : base.boxes()) {
      Box image(b.size());
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (u(i, j) == 0) continue;
          const Interval& src = b[static_cast<std::size_t>(j)];
          image[static_cast<std::size_t>(i)] = u(i, j) > 0 ? src : Interval{-src.hi, -src.lo};
        }
      }
      boxes.push_back(std::move(image));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (u(i, j) != 0) shift(i) = u(i, j) > 0 ? base.shift()(j) : -base.shift()(j);
      }
    }
    return LogBase::from_boxes(n, std::move(boxes), std::move(shift));
  }

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  if (base.is_box_list()) {
    Predicate p;
    p.kind = Predicate::Kind::boxes;
    p.boxes = base.boxes();
    p.pre_map = AffineMap{u_inv, -base.shift()};
    std::vector<Box> hulls;
    for (const Box& b : base.translated_boxes()) hulls.push_back(hull_of_image(b, ud, zero));
    p.bbox = union_hull(hulls);
    p.mc = mc;
    return LogBase::from_predicate(n, std::move(p));
  }

  Predicate p = base.predicate();
  if (p.pre_map) {
    p.pre_map->matrix = (p.pre_map->matrix * u_inv).eval();
  } else {
    p.pre_map = AffineMap{u_inv, zero};
  }
  p.bbox = hull_of_image(p.bbox, ud, zero);
  return LogBase::from_predicate(n, std::move(p));
}

LogBase dilation_pushforward(const LogBase& base, std::span<const Complex> a) {
  const int n = base.dimension();
  if (static_cast<int>(a.size()) != n) throw Error(ErrorCode::dimension_mismatch, "need n dilation factors");
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<std::size_t>(i)] == Complex{0.0, 0.0}) {
      throw Error(ErrorCode::zero_component, "dilation factor " + std::to_string(i) + " is zero");
    }
    s(i) = std::log(std::abs(a[static_cast<std::size_t>(i)]));
  }
  if (base.is_box_list()) return LogBase::from_boxes(n, base.boxes(), Eigen::VectorXd(base.shift() + s));

  Predicate p = base.predicate();
  if (p.pre_map) {
    p.pre_map->shift -= p.pre_map->matrix * s;
  } else {
    p.pre_map = AffineMap{Eigen::MatrixXd::Identity(n, n), -s};
  }
  for (int d = 0; d < n; ++d) {
    p.bbox[static_cast<std::size_t>(d)].lo += s(d);
    p.bbox[static_cast<std::size_t>(d)].hi += s(d);
  }
  return LogBase::from_predicate(n, std::move(p));
}

LogBase product_base(const LogBase& first, const LogBase& second) {
  if (!first.is_box_list() || !second.is_box_list()) {
    throw Error(ErrorCode::invalid_argument, "products are supported for box-list bases only");
  }
  const int n = first.dimension() + second.dimension();
  std::vector<Box> boxes;
  for (const Box& x : first.boxes()) {
    for (const Box& y : second.boxes()) {
      Box b = x;
      b.insert(b.end(), y.begin(), y.end());
      boxes.push_back(std::move(b));
    }
  }
  Eigen::VectorXd shift(n);
  shift << first.shift(), second.shift();
  return LogBase::from_boxes(n, std::move(boxes), std::move(shift));
}

InvarianceCheck compare_log_volumes(const LogBase& before, const LogBase& after) {
  InvarianceCheck c;
  c.before = log_volume(before);
  c.after = log_volume(after);
  c.mu_before = reinhardt_mu(before);
  c.mu_after = reinhardt_mu(after);
  const double se = std::hypot(c.before.standard_error, c.after.standard_error);
  c.tolerance = se > 0.0 ? 3.0 * se : 1e-12 * std::max(c.before.value, c.after.value);
  c.ok = std::abs(c.before.value - c.after.value) <= c.tolerance;
  return c;
}

double elliptic_bundle_mu(double c, Complex tau) {
  if (!(c > 1.0) || !std::isfinite(c)) throw Error(ErrorCode::invalid_argument, "need c > 1");
  if (!(tau.imag() > 0.0)) throw Error(ErrorCode::invalid_tau, "need Im tau > 0");
  return std::log(c) / (2.0 * std::numbers::pi * tau.imag());
}

}  // namespace extvol
