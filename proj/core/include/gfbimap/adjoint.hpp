#pragma once

#include "gfbimap/bimap.hpp"

namespace gfbimap {

// Element of End(U) x End(V)^op under the fixed row convention: X acts on
// U-rows by right multiplication, the V-side operator acts on V-rows by
// v -> v Y^T.  The adjoint condition reads X M = M Y per Gram slice, and the
// ring product is componentwise (X1 X2, Y1 Y2).
struct MatPair {
  Mat X, Y;
};

MatPair pair_identity(const Field& F, int a, int b);
MatPair pair_add(const MatPair& p, const MatPair& q);
MatPair pair_sub(const MatPair& p, const MatPair& q);
MatPair pair_mul(const MatPair& p, const MatPair& q);
MatPair pair_scale(const MatPair& p, Fe s);
MatPair pair_neg(const MatPair& p);
bool pair_eq(const MatPair& p, const MatPair& q);
bool pair_is_zero(const MatPair& p);

// Flatten to a 1 x (a^2 + b^2) row: (vec X | vec Y).
Mat pair_flatten(const MatPair& p);
MatPair pair_unflatten(const Field& F, const Mat& v, int a, int b);

// A unital subalgebra of End(U) x End(V)^op given by a closed basis of
// pairs.  The basis is kept in RREF order of the flattened pair space, so
// equal algebras have identical bases.
struct AlgebraPair {
  const Field* F = nullptr;
  int a = 0, b = 0;
  std::vector<MatPair> basis;
  bool unital = false;
  Subspace span;  // flattened pair space

  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const MatPair& p) const { return span.contains(pair_flatten(p)); }
  // Coordinates of p in the canonical basis; throws if p is outside.
  std::vector<Fe> coordinates(const MatPair& p) const;
  MatPair from_coordinates(const std::vector<Fe>& c) const;
};

// Canonicalizes a spanning set of pairs (no closure is performed).
AlgebraPair algebra_from_pairs(const Field& F, int a, int b,
                               const std::vector<MatPair>& gens);
// True when the span is closed under the componentwise product.
bool algebra_is_closed(const AlgebraPair& A);

// Adj(o) = {(X, Y) : X M_l = M_l Y for every slice}; unital and closed.
AlgebraPair adjoint_algebra(const Bimap& bm);

// Linear map on the algebra basis describing an involution.
struct Involution {
  Mat matrix;  // dim x dim: row i = coordinates of basis_i^*
};

MatPair apply_involution(const AlgebraPair& A, const Involution& st,
                         const MatPair& p);

// The * map (X, Y) -> (Y, X) on Adj(o) of a nondegenerate symmetric or
// alternating bimap, expressed in the Adj basis.
Involution star_involution(const Bimap& bm, const AlgebraPair& adj);

}  // namespace gfbimap
