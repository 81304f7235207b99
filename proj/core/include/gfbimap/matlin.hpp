#pragma once

#include <optional>
#include <vector>

#include "gfbimap/field.hpp"

namespace gfbimap {

// Dense matrix over a Field, row-major.  Vectors are rows throughout the
// library; operators act by right multiplication.
struct Mat {
  const Field* F = nullptr;
  int rows = 0, cols = 0;
  std::vector<Fe> a;

  Mat() = default;
  Mat(const Field& field, int r, int c)
      : F(&field), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  Fe& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  Fe at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool is_zero() const {
    for (Fe x : a)
      if (x != 0) return false;
    return true;
  }
  bool is_square() const { return rows == cols; }
  bool operator==(const Mat& o) const {
    return F == o.F && rows == o.rows && cols == o.cols && a == o.a;
  }
};

Mat mat_identity(const Field& F, int n);
Mat mat_zero(const Field& F, int r, int c);
Mat mat_from_ints(const Field& F, int r, int c,
                  std::initializer_list<std::int64_t> entries);
Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_neg(const Mat& A);
Mat mat_scale(const Mat& A, Fe s);
Mat mat_mul(const Mat& A, const Mat& B);
Mat mat_transpose(const Mat& A);
Mat mat_pow(const Mat& A, std::uint64_t e);
Fe mat_trace(const Mat& A);
Mat mat_hstack(const Mat& A, const Mat& B);
Mat mat_vstack(const Mat& A, const Mat& B);
// Row-major flattening of an r x c matrix to a 1 x (r*c) row vector.
Mat mat_flatten(const Mat& A);
Mat mat_unflatten(const Field& F, const std::vector<Fe>& v, int r, int c);
Mat mat_row(const Mat& A, int i);
bool mat_is_nilpotent(const Mat& A);

struct RrefResult {
  Mat R;
  int rank = 0;
  std::vector<int> pivots;
};

// Reduced row-echelon form (Gauss-Jordan), exact.
RrefResult rref(const Mat& M);

// Inverse of a square matrix; throws Singular.
Mat mat_inverse(const Mat& A);
bool mat_is_invertible(const Mat& A);

// Solve X * A = B for X (row convention).  Returns nullopt when any row of B
// lies outside the row space of A.  When A has full row rank the solution is
// unique.
std::optional<Mat> solve_left(const Mat& A, const Mat& B);

// Canonical subspace of k^n: basis in RREF, rows = dim.  Two Subspaces are
// equal iff their RREF matrices are identical.
struct Subspace {
  const Field* F = nullptr;
  int ambient = 0;
  Mat basis;  // RREF, possibly 0 rows

  Subspace() = default;
  static Subspace zero(const Field& F, int ambient);
  static Subspace full(const Field& F, int ambient);
  static Subspace from_rows(const Mat& gens);

  int dim() const { return basis.rows; }
  bool is_zero() const { return basis.rows == 0; }
  bool is_full() const { return basis.rows == ambient; }

  // Remainder of v after elimination against the RREF basis; zero iff v lies
  // in the subspace.  v is a 1 x ambient row.
  Mat reduce(const Mat& v) const;
  bool contains(const Mat& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const {
    return ambient == o.ambient && basis == o.basis;
  }

  // Coordinates of the ambient space not used as pivots, in increasing
  // order; the standard vectors there form a complement.
  std::vector<int> nonpivot_coords() const;

  // Canonical byte key for hashing orbits of subspaces.
  std::string key() const;
};

Subspace subspace_sum(const Subspace& A, const Subspace& B);
Subspace subspace_intersect(const Subspace& A, const Subspace& B);

// Left nullspace {x : x M = 0} as a canonical Subspace of k^rows.
Subspace nullspace(const Mat& M);

// Kronecker product with row-major pair ordering (i,j) -> i*cols(B)+j.
Mat kronecker(const Mat& A, const Mat& B);

// Least subspace containing `vectors` and closed under right multiplication
// by every actor.
Subspace spin(const Subspace& vectors, const std::vector<Mat>& actors);

// Row-echelon accumulator: keeps an independent generating set with pivot
// bookkeeping; add() returns true when the vector enlarged the span.
class IncrementalSpan {
public:
  IncrementalSpan(const Field& F, int ambient)
      : F_(&F), ambient_(ambient), pivot_row_(ambient, -1) {}

  bool add(Mat v);  // 1 x ambient
  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return ambient_; }
  bool contains(const Mat& v) const;
  Mat reduce(Mat v) const;
  const std::vector<Mat>& rows() const { return rows_; }
  Subspace to_subspace() const;

private:
  const Field* F_;
  int ambient_;
  std::vector<Mat> rows_;       // echelon rows, leading entry 1
  std::vector<int> pivot_row_;  // column -> index into rows_, or -1
};

}  // namespace gfbimap
