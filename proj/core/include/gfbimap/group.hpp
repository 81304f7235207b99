#pragma once

#include "gfbimap/adjoint.hpp"

namespace gfbimap {

// Group element of GL(U) x GL(V): F acts on U-rows, G acts on V-rows, and
// composition is componentwise.  Autotopism membership reads
// F W^o G^T = W^o; normalizer conjugation on adjoint-style pairs reads
// (X, Y) -> (F^-1 X F, G^T Y G^-T).  A ring unit (X0, Y0) embeds as the
// group element (X0, Y0^-T).
struct GenPair {
  Mat F, G;
};

GenPair gp_identity(const Field& F, int a, int b);
GenPair gp_mul(const GenPair& x, const GenPair& y);
GenPair gp_inv(const GenPair& x);
bool gp_eq(const GenPair& x, const GenPair& y);
bool gp_is_identity(const GenPair& x);
std::string gp_key(const GenPair& x);
std::string mat_key(const Mat& m);

// Conjugation of an adjoint-style pair by a group element.
MatPair gp_conjugate(const GenPair& g, const MatPair& p);
// Image of a pair-space subspace under gp_conjugate.
Subspace gp_conjugate_space(const GenPair& g, const Subspace& W, int a, int b);

// Embedding of a ring unit of the pair algebra into the group.
GenPair unit_to_group(const MatPair& u);
// Inverse of the embedding: the ring pair whose conjugation the element
// realizes (defined for any invertible pair).
MatPair group_to_unit(const GenPair& g);

// Single-space analogue for *-algebras: g acts on V-rows, conjugation is
// x -> g^-1 x g.
Mat conjugate_single(const Mat& g, const Mat& x);
Subspace conjugate_single_space(const Mat& g, const Subspace& W, int n);

// Group closure by BFS, deterministic for a fixed generator order; throws
// ClosureCapExceeded past the cap.
std::vector<GenPair> closure_elements(const std::vector<GenPair>& gens,
                                      std::uint64_t cap);
BigInt closure_order(const std::vector<GenPair>& gens, std::uint64_t cap);
std::vector<Mat> closure_elements_single(const std::vector<Mat>& gens,
                                         std::uint64_t cap);
BigInt closure_order_single(const std::vector<Mat>& gens, std::uint64_t cap);

}  // namespace gfbimap
