#include "extvol/integer_matrix.hpp"

#include "extvol/error.hpp"

#include <cstdlib>
#include <limits>
#include <utility>

namespace extvol {
namespace {

__extension__ typedef __int128 Wide;

long long narrow(Wide v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
    throw Error(ErrorCode::invalid_argument, "integer matrix entry overflows 64 bits");
  }
  return static_cast<long long>(v);
}

// Returns (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0.
struct Bezout {
  long long g, x, y;
};

Bezout extended_gcd(long long a, long long b) {
  long long old_r = a, r = b;
  long long old_s = 1, s = 0;
  long long old_t = 0, t = 1;
  while (r != 0) {
    const long long q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Fraction-free elimination; returns the rank and, for square input, the determinant.
std::pair<int, Wide> bareiss(const IntMatrix& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Wide> a(static_cast<std::size_t>(rows * cols));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a[static_cast<std::size_t>(i * cols + j)] = m(i, j);
  auto at = [&](Eigen::Index i, Eigen::Index j) -> Wide& {
    return a[static_cast<std::size_t>(i * cols + j)];
  };

  Wide prev = 1;
  int sign = 1;
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = rank; i < rows; ++i) {
      if (at(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (Eigen::Index j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
      sign = -sign;
    }
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      for (Eigen::Index j = col + 1; j < cols; ++j) {
        at(i, j) = (at(rank, col) * at(i, j) - at(i, col) * at(rank, j)) / prev;
      }
      at(i, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  Wide det = 0;
  if (rows == cols && rank == rows) det = sign * at(rows - 1, cols - 1);
  return {static_cast<int>(rank), det};
}

}  // namespace

long long integer_determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "determinant of a non-square integer matrix");
  }
  if (m.rows() == 0) return 1;
  return narrow(bareiss(m).second);
}

int integer_rank(const IntMatrix& m) {
  if (m.size() == 0) return 0;
  return bareiss(m).first;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix t = IntMatrix::Identity(rows, rows);

  auto combine = [&](Eigen::Index target, Eigen::Index other, long long a, long long b,
                     long long c, long long d) {
    // (row_target, row_other) <- (a*row_target + b*row_other, c*row_target + d*row_other)
    for (IntMatrix* mat : {&h, &t}) {
      for (Eigen::Index j = 0; j < mat->cols(); ++j) {
        const Wide x = (*mat)(target, j), y = (*mat)(other, j);
        (*mat)(target, j) = narrow(a * x + b * y);
        (*mat)(other, j) = narrow(c * x + d * y);
      }
    }
  };

  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    for (Eigen::Index r = row + 1; r < rows; ++r) {
      if (h(r, col) == 0) continue;
      const long long a = h(row, col), b = h(r, col);
      const Bezout bz = extended_gcd(a, b);
      combine(row, r, bz.x, bz.y, -b / bz.g, a / bz.g);
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      h.row(row) *= -1;
      t.row(row) *= -1;
    }
    const long long pivot = h(row, col);
    for (Eigen::Index r = 0; r < row; ++r) {
      const long long q = floor_div(h(r, col), pivot);
      if (q == 0) continue;
      h.row(r) -= q * h.row(row);
      t.row(r) -= q * t.row(row);
    }
    ++row;
  }
  return {std::move(h), std::move(t), static_cast<int>(row)};
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorCode::not_unimodular, "matrix is not square");
  }
  const long long det = integer_determinant(u);
  if (det != 1 && det != -1) {
    throw Error(ErrorCode::not_unimodular, "determinant is " + std::to_string(det));
  }
  // For a unimodular matrix the HNF is the identity, so the transform is the inverse.
  return hermite_normal_form(u).transform;
}

bool is_signed_permutation(const IntMatrix& u) {
  if (u.rows() != u.cols()) return false;
  std::vector<bool> used(static_cast<std::size_t>(u.cols()), false);
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    int nonzero = 0;
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      if (u(i, j) == 0) continue;
      if (std::llabs(u(i, j)) != 1 || used[static_cast<std::size_t>(j)]) return false;
      used[static_cast<std::size_t>(j)] = true;
      ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  return true;
}

std::vector<long long> flatten(const IntMatrix& m) {
  return {m.data(), m.data() + m.size()};
}

}  // namespace extvol
