#pragma once

#include "gfbimap/group.hpp"
#include "gfbimap/matfield.hpp"

namespace gfbimap {

// A module for a list of acting matrices: row vectors, right multiplication.
// The actor list stays aligned across restrictions and quotients, so actor t
// always represents the same algebra element.
struct ModuleAction {
  const Field* F = nullptr;
  int dim = 0;
  std::vector<Mat> actors;
};

// Proper nonzero submodule, or nullopt with irreducibility proven
// (Holt-Rees MeatAxe with Norton's dual test).  Las Vegas.
std::optional<Subspace> meataxe_find_submodule(const ModuleAction& M, Rng& rng,
                                               int budget = 64);
bool module_is_irreducible(const ModuleAction& M, Rng& rng, int budget = 64);

// Composition factors with actions aligned to the input actor list.
std::vector<ModuleAction> composition_factors(const ModuleAction& M, Rng& rng);

// Restriction of the action to an invariant subspace / induced quotient.
ModuleAction module_restrict(const ModuleAction& M, const Subspace& W);
ModuleAction module_quotient(const ModuleAction& M, const Subspace& W);

// Endomorphism algebra {T : T A_i = A_i T for all actors}, as matrices.
std::vector<Mat> module_endomorphisms(const ModuleAction& M);

// --- pair-algebra structure theory ---------------------------------------

// Least unital subalgebra containing the generators.
AlgebraPair envelope(const Field& F, int a, int b,
                     const std::vector<MatPair>& gens);

// Jacobson radical as a subspace of the flattened pair space.  Computed as
// the annihilator of the composition factors of the left regular module;
// nilpotency and semisimplicity of the quotient are re-verified.
Subspace radical(const AlgebraPair& A, std::uint64_t seed);

// Wedderburn-Malcev complement: S with A = J + S, S a unital subalgebra,
// found by quadratic lifting mod J^(2^i).
Subspace wedderburn_complement(const AlgebraPair& A, const Subspace& J,
                               std::uint64_t seed);

// Central-primitive idempotents of the semisimple span S.  When `unit` is
// given, S is treated as a block with that identity (a corner eSe) and the
// returned idempotents sum to it.
std::vector<MatPair> central_primitive_idempotents(const AlgebraPair& A,
                                                   const Subspace& S,
                                                   std::uint64_t seed,
                                                   const MatPair* unit = nullptr);

// Simple factor data: eSe isomorphic to d x d matrices over Delta = GF(q^m),
// with Delta realized as the center Z(eSe) = k[omega].
struct WedderburnFactor {
  MatPair e;
  std::vector<MatPair> ese_basis;
  int d = 0, m = 0;
  MatPair omega;      // primitive element of Z(eSe)^x
  Poly omega_minpoly; // irreducible of degree m over the base field

  bool side_u = true; // simple module found inside Ue (else eV)
  // k-basis of the simple module W0 in ambient coordinates (d*m rows), and
  // a Delta-basis of it (d rows); row order of w_basis is (s major, j minor)
  // for w_s * omega^j.
  Mat w0;
  Mat delta_vectors;
  Mat w_basis;

  // iso(eSe) = M_d(Delta): entry polynomials (in omega) for each basis pair,
  // row-major d x d.
  std::vector<std::vector<Poly>> iso_images;
};

// Elements of Delta are polynomials in omega of degree < m.
using DPoly = Poly;
using DMat = std::vector<DPoly>;  // d x d row-major over Delta

DMat iso_apply(const AlgebraPair& A, const WedderburnFactor& f,
               const MatPair& p);
MatPair iso_inverse(const AlgebraPair& A, const WedderburnFactor& f,
                    const DMat& dm);
MatPair factor_matrix_unit(const AlgebraPair& A, const WedderburnFactor& f,
                           int s, int t);  // iso^-1(E_st)
// Central element representing a Delta scalar.
MatPair factor_scalar(const AlgebraPair& A, const WedderburnFactor& f,
                      const DPoly& delta);

struct WedderburnData {
  AlgebraPair A;
  Subspace J;  // pair space
  Subspace S;
  std::vector<MatPair> j_basis, s_basis;
  int c = 0;  // J^(c+1) = 0, J^c != 0; c = 0 when J = 0
  std::vector<Subspace> j_powers;  // J^1 .. J^c
  std::vector<WedderburnFactor> factors;
};

WedderburnData wedderburn_decompose(const AlgebraPair& A, std::uint64_t seed);

// Assembles the decomposition data from an externally supplied radical and
// complement (used by the *-pipeline, whose complement must be *-invariant).
WedderburnData wedderburn_from(const AlgebraPair& A, const Subspace& J,
                               const Subspace& S, std::uint64_t seed);

// Analysis of one simple factor eSe: parameters, center field, simple
// module, iso to d x d matrices over Delta.
WedderburnFactor analyze_simple_factor(const AlgebraPair& A,
                                       const std::vector<MatPair>& s_basis,
                                       const MatPair& e, Rng& rng);

struct LayerData {
  std::vector<Subspace> UJ, JV;  // chains UJ^0 > ... > UJ^c(+1 sentinel = 0)
  std::vector<Subspace> X, Y;    // S-invariant complements, layers 0..c
  // multiplicities m[e][i], n[e][i] per factor e and layer i
  std::vector<std::vector<int>> m, n;
};

LayerData radical_series_layers(const WedderburnData& W);

// S-invariant complement of `sub` inside `big` (both invariant under the
// right action of every actor).
Subspace invariant_complement(const Subspace& big, const Subspace& sub,
                              const std::vector<Mat>& actors);

// Morita-aligned basis of a layer part X_i e (side U) or e Y_i (side V):
// row (t, s, j) = c_t * units[s] * omega_pows[j] acting on the proper side,
// where the c_t form a Delta-basis of the multiplicity space (layer * eps).
struct MoritaBlock {
  Mat cvecs;  // mult x ambient
  Mat rows;   // (mult * d * m) x ambient
};
MoritaBlock morita_block(const Field& F, const Subspace& layer_part, int d,
                         int m, const std::vector<MatPair>& omega_pows,
                         const std::vector<MatPair>& units, const MatPair& eps,
                         bool side_u, int mult);
// Standard (self-aligned) block of a factor on a layer of U or V.
MoritaBlock factor_morita_block(const AlgebraPair& A, const WedderburnFactor& f,
                                const Subspace& layer, bool side_u, int mult);
// The part of a layer supporting an idempotent: span of layer * e.
Subspace layer_factor_part(const Subspace& layer, const MatPair& e, bool side_u);
// omega^0 = e, omega, ..., omega^(m-1) as pairs.
std::vector<MatPair> omega_powers(const WedderburnFactor& f);
// Row action of a pair element on the chosen side (U: v X, V: v Y^T).
Mat pair_act_side(const Mat& v, const MatPair& p, bool side_u);

// Equivalence of Lemma-perms type: matching simple type and all layer
// multiplicities.  Returns a group element exchanging the e/e' components
// and fixing the remaining factors, or nullopt.
std::optional<GenPair> idempotent_equivalent(const WedderburnData& W,
                                             const LayerData& L, int e1,
                                             int e2, std::uint64_t seed);

// 1+z in 1+J conjugating span S1 onto span S2 (Malcev transitivity);
// desk-scale enumeration, for the validation suite.
std::optional<MatPair> find_malcev_conjugator(const AlgebraPair& A,
                                              const Subspace& J,
                                              const Subspace& S1,
                                              const Subspace& S2,
                                              std::uint64_t cap = 100000);

// Evaluate a polynomial on a pair, the constant term acting through `unit`.
MatPair eval_poly_pair(const Field& F, const Poly& f, const MatPair& z,
                       const MatPair& unit);

// Rows of a pair-space subspace as pairs.
std::vector<MatPair> subspace_pairs(const Field& F, const Subspace& S, int a,
                                    int b);

// Powers J^1, J^2, ... as pair-space subspaces, until zero.
std::vector<Subspace> radical_powers(const AlgebraPair& A, const Subspace& J);

}  // namespace gfbimap
