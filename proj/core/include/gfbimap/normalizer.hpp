#pragma once

#include <functional>

#include "gfbimap/algdecomp.hpp"

namespace gfbimap {

enum class GenTag { unipotent, torus, semilinear, tensor_factor, swap, stabilizer };
const char* gen_tag_name(GenTag t);

struct TaggedGen {
  GenPair g;
  GenTag tag;
};

struct GeneratorSet {
  const Field* F = nullptr;
  int a = 0, b = 0;
  std::vector<TaggedGen> gens;
  std::optional<BigInt> order;      // exact group order when computable
  std::optional<BigInt> nsj_order;  // structural order of the N(S;J) stage
  std::vector<std::string> warnings;

  std::vector<GenPair> pairs() const {
    std::vector<GenPair> out;
    for (const auto& t : gens) out.push_back(t.g);
    return out;
  }
};

// Normalizer membership: conjugation by (F, G) maps every basis
// pair of A into the span of A.
bool normalizes(const GenPair& g, const AlgebraPair& A);
// Same test against an explicit span (used for N(S) membership).
bool normalizes_span(const GenPair& g, const std::vector<MatPair>& basis,
                     const Subspace& span, int a, int b);

// {1 + z : z over bases of J, J^2, ...}; each invertible by nilpotency.
GeneratorSet unipotent_generators(const AlgebraPair& A, const Subspace& J);

// Generators for the layer-preserving normalizer of S acting between the radical
// layers: per factor the inner GL_d(Delta) units, a Frobenius-semilinear
// element, the one-sided layer-parabolic factors over Delta, and swap
// witnesses for equivalent idempotents; carries the structural order.
GeneratorSet nsj_generators(const WedderburnData& W, const LayerData& L,
                            std::uint64_t seed);

// The structural order of the group generated by nsj_generators.
BigInt nsj_order_formula(const WedderburnData& W, const LayerData& L,
                         const std::vector<std::vector<int>>& classes);
// Partition of factor indices under the equivalence of Lemma perms.
std::vector<std::vector<int>> factor_classes(const WedderburnData& W,
                                             const LayerData& L);

using PairAction =
    std::function<Subspace(const GenPair&, const Subspace&)>;

struct StabilizeResult {
  std::vector<TaggedGen> gens;  // Schreier generators of the stabilizer
  BigInt orbit_size = 1;
};

// Orbit-stabilizer on canonical subspaces: BFS orbit of `target` under the
// given action with Schreier generators for the stabilizer.  Throws
// OrbitCapExceeded past caps.orbit.
StabilizeResult stabilize_subspace(const std::vector<GenPair>& gens,
                                   const Subspace& target,
                                   const PairAction& act, const Caps& caps);
// Joint stabilizer of several targets in one BFS (the orbit of the tuple);
// avoids feeding one stage's Schreier generators into the next.
StabilizeResult stabilize_subspace_tuple(const std::vector<GenPair>& gens,
                                         const std::vector<Subspace>& targets,
                                         const PairAction& act,
                                         const Caps& caps);
// Conjugation action on pair-space subspaces (the default for N(A)).
PairAction conjugation_action(int a, int b);

// Drops generators lying in the subgroup generated by the kept ones; exact.
// Returns the input unchanged when the group exceeds the cap.
std::vector<GenPair> reduce_generators(const std::vector<GenPair>& gens,
                                       std::uint64_t cap);

struct NormalizerResult {
  GeneratorSet gens;                  // generators of N(A)
  std::vector<TaggedGen> stab_gens;   // the Stab_{N(S;J)}(J) stage
  BigInt nsj_order = 0;
  BigInt orbit = 1;
  BigInt stab_order = 0;              // nsj_order / orbit
  std::optional<BigInt> intersection; // |(1+J) ∩ Stab|
  WedderburnData wedderburn;
  LayerData layers;
};

// Full N(A) pipeline: radical, complement, idempotents, layers,
// N(S;J) generators, stabilizer of J, unipotent part; every generator
// passes normalizes().  The exact order is |1+J| * |Stab| / |(1+J) ∩ Stab|
// when the enumeration caps permit.
NormalizerResult normalizer_of(const AlgebraPair& A, std::uint64_t seed,
                               const Caps& caps = Caps{});

BigInt gl_order(const BigInt& q, int n);
// Order of the block-upper-triangular parabolic with the given block sizes.
BigInt parabolic_order(const BigInt& q, const std::vector<int>& blocks);

}  // namespace gfbimap
