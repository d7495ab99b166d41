#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace extvol {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Exact determinant of a square integer matrix (fraction-free Bareiss elimination).
long long integer_determinant(const IntMatrix& m);

/// Rank over the rationals.
int integer_rank(const IntMatrix& m);

struct HermiteForm {
  IntMatrix form;       // row-style HNF, zero rows at the bottom
  IntMatrix transform;  // unimodular, transform * input == form
  int rank = 0;
};

/// Row-style Hermite normal form: positive pivots, entries above each pivot in [0, pivot).
/// Two matrices have the same row lattice iff their forms agree.
HermiteForm hermite_normal_form(const IntMatrix& m);

/// Inverse of a matrix with determinant +-1; throws ErrorCode::not_unimodular otherwise.
IntMatrix unimodular_inverse(const IntMatrix& u);

bool is_signed_permutation(const IntMatrix& u);

/// Row-major flattening, used as an ordering key.
std::vector<long long> flatten(const IntMatrix& m);

}  // namespace extvol
