#pragma once

#include "gfbimap/adjoint.hpp"

namespace gfbimap {

// U (x)_S V presented as a quotient of k^(ab) by the mid-linearity
// relations of the spanning set S (arbitrary pair sets are accepted; the
// relations only depend on the span).
struct TensorPresentation {
  const Field* F = nullptr;
  int a = 0, b = 0;
  std::vector<MatPair> s_elements;
  Subspace relations;  // R_S <= k^(ab)
  Bimap product;       // the quotient bimap (x)_S
  Mat quotient_map;    // ab x w
};

TensorPresentation tensor_over(const Field& F, int a, int b,
                               const std::vector<MatPair>& s_elements);

// Quotient of U (x)_A V by <v (x) v> (sign '-') or by the antisymmetric
// relations (sign '+'; rejected in characteristic 2).
TensorPresentation exterior_over(const Field& F, int n,
                                 const std::vector<MatPair>& a_elements,
                                 char sign);

struct InducedMap {
  Mat tau;          // dim(U (x)_S V) x w, with u o v = (u (x) v) tau
  Subspace kernel;  // ker tau in quotient coordinates
  TensorPresentation presentation;
};

// Requires S <= Adj(o) (else NotAdjoint).
InducedMap induced_map(const Bimap& bm, const std::vector<MatPair>& s_elements);

// True iff the induced map U (x)_{Adj(o)} V -> W is a square invertible
// matrix.
bool is_tensor_product(const Bimap& bm);

// Adj((x)_S): a closure operator on pair sets.
AlgebraPair galois_closure(const Field& F, int a, int b,
                           const std::vector<MatPair>& s_elements);

}  // namespace gfbimap
