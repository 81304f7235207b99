#pragma once

#include <map>

#include "gfbimap/oracle.hpp"

namespace gfbimap {

// Class-2 exponent-p data: commutator structure constants on n generators
// of G/Z with values in GF(p)^m.
struct PGroupData {
  std::int64_t p = 0;
  int n = 0, m = 0;
  std::map<std::pair<int, int>, std::vector<Fe>> c;  // keys (i, j), i < j
};

// The Baer bimap V x V -> W, V = GF(p)^n, W = U o V <= GF(p)^m; alternating
// and full.
Bimap baer_bimap(const PGroupData& G);

struct PseudoIsometryResult {
  StarGeneratorSet gens;  // generators of Pseudo(o) restricted to V
  BigInt orbit = 1;       // orbit of ker o-hat inside V wedge_A V
  std::optional<BigInt> order;
  std::optional<BigInt> nstar_order;
};

// Pseudo-isometry pipeline: N*(Adj(o)) acting on V wedge_A V, then the stabilizer
// of ker o-hat.  Alternating, nondegenerate, odd characteristic.
PseudoIsometryResult pseudo_isometry_group(const Bimap& bm, std::uint64_t seed,
                                           const Caps& caps = Caps{});

struct StabilizerProblem {
  const Field* F = nullptr;
  int a = 0, b = 0;
  Subspace W;  // <= flattened a x b matrix space
  bool hermitian = false;
  char epsilon = '+';  // w = eps * w-bar^T for all basis elements
};

// The block algebra of the quadratic-stabilizer embedding: block scalars
// plus the W-block radical.
AlgebraPair quadstab_embed(const StabilizerProblem& P);

struct QuadstabResult {
  std::vector<GenPair> gens;  // pairs (x, y) with x W y^T = W
  std::optional<BigInt> order;
};

// Solves Stab(W) = {(x, y) : x W y^T = W} through normalizer_of on the
// embedded algebra, extracting the diagonal blocks.
QuadstabResult quadstab_solve(const StabilizerProblem& P, std::uint64_t seed,
                              const Caps& caps = Caps{});

// Aut(o) restricted to (F, G) pairs through the same embedding; the h part
// is recoverable per autotopism_h.
QuadstabResult autotopisms_via_embedding(const Bimap& bm, std::uint64_t seed,
                                         const Caps& caps = Caps{});

struct HStabResult {
  std::vector<Mat> gens;  // x with x W x-bar^T = W
  std::optional<BigInt> order;
};

// Hermitian stabilizer via the *-structure on the embedded algebra.
HStabResult hermitian_stab_solve(const StabilizerProblem& P, std::uint64_t seed,
                                 const Caps& caps = Caps{});

}  // namespace gfbimap
