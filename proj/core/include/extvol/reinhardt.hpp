#pragma once

#include "extvol/integer_matrix.hpp"
#include "extvol/lattice.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace extvol {

// Bases of non-collapsing Reinhardt domains, in logarithmic coordinates t_i = log|z_i|.

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

using Box = std::vector<Interval>;

struct MonteCarloConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

/// x -> matrix * x + shift
struct AffineMap {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd shift;
};

/// Membership region for Monte-Carlo volume estimates. A point x belongs to the region
/// when the inner shape contains pre_map(x) (or x itself if there is no pre_map).
struct Predicate {
  enum class Kind { ball, halfspaces, boxes };

  Kind kind = Kind::ball;
  // ball: |y - center| <= radius
  Eigen::VectorXd center;
  double radius = 0.0;
  // halfspaces: normals * y <= offsets, row-wise
  Eigen::MatrixXd normals;
  Eigen::VectorXd offsets;
  // boxes: y in the union
  std::vector<Box> boxes;

  std::optional<AffineMap> pre_map;
  Box bbox;
  MonteCarloConfig mc;

  bool contains(const Eigen::VectorXd& x) const;
};

const char* to_string(Predicate::Kind kind) noexcept;
Predicate::Kind parse_predicate_kind(const std::string& name);

class LogBase {
 public:
  /// Disjoint axis-aligned boxes translated by shift (zero if omitted). The translation is
  /// kept separate from the box bounds so that volumes stay exact under dilations.
  static LogBase from_boxes(int n, std::vector<Box> boxes, std::optional<Eigen::VectorXd> shift = {});
  static LogBase from_predicate(int n, Predicate predicate);

  int dimension() const noexcept { return n_; }
  bool is_box_list() const noexcept { return std::holds_alternative<BoxList>(shape_); }

  /// Box bounds before translation; box-list bases only.
  const std::vector<Box>& boxes() const;
  const Eigen::VectorXd& shift() const;
  /// Boxes with the translation applied.
  std::vector<Box> translated_boxes() const;

  const Predicate& predicate() const;

  /// Axis-aligned hull of the base.
  Box bounding_box() const;

 private:
  struct BoxList {
    std::vector<Box> boxes;
    Eigen::VectorXd shift;
  };

  LogBase(int n, std::variant<BoxList, Predicate> shape) : n_(n), shape_(std::move(shape)) {}

  int n_;
  std::variant<BoxList, Predicate> shape_;
};

struct VolumeEstimate {
  double value = 0.0;
  double standard_error = 0.0;  // zero for exact box-list volumes
};

/// Exact for box lists, seeded Monte-Carlo over the bounding box for predicates.
VolumeEstimate log_volume(const LogBase& base);

/// (2 pi)^n / log_volume: extremal volume of the torus-fibre class.
double reinhardt_mu(const LogBase& base);

/// Image of the base under t -> U t for U in GL(n, Z), the logarithmic form of the monomial
/// biholomorphism with exponent matrix U^T. Signed permutations keep box lists exact; any
/// other U turns a box list into a predicate sampled with `mc`.
LogBase monomial_pushforward(const LogBase& base, const IntMatrix& u, const MonteCarloConfig& mc = {});

/// Image under z_i -> a_i z_i: translation of t by log|a_i|.
LogBase dilation_pushforward(const LogBase& base, std::span<const Complex> a);

/// Cartesian product of two box-list bases.
LogBase product_base(const LogBase& first, const LogBase& second);

struct InvarianceCheck {
  VolumeEstimate before;
  VolumeEstimate after;
  double mu_before = 0.0;
  double mu_after = 0.0;
  double tolerance = 0.0;  // on |vol_before - vol_after|
  bool ok = false;
};

/// Volumes agree within 3 combined Monte-Carlo standard errors, or to 1e-12 relative when
/// both are exact.
InvarianceCheck compare_log_volumes(const LogBase& before, const LogBase& after);

/// Principal elliptic bundle with deck factor c > 1 over C / (Z + tau Z):
/// log c / (2 pi Im tau).
double elliptic_bundle_mu(double c, Complex tau);

}  // namespace extvol
