#pragma once

#include "gfbimap/normalizer.hpp"

namespace gfbimap {

// A *-subalgebra of End(V): matrices acting on V-rows by right
// multiplication, with the involution given on the canonical basis.
struct StarAlgebra {
  const Field* F = nullptr;
  int n = 0;
  std::vector<Mat> basis;  // canonical RREF order in k^(n^2)
  Subspace span;
  Mat star;  // dim x dim: row i = coordinates of basis_i^*
  bool unital = false;

  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const Mat& x) const {
    return span.contains(mat_flatten(x));
  }
  std::vector<Fe> coordinates(const Mat& x) const;
  Mat from_coordinates(const std::vector<Fe>& c) const;
  Mat apply_star(const Mat& x) const;
};

StarAlgebra star_algebra_from(const Field& F, int n,
                              const std::vector<Mat>& gens,
                              const std::function<Mat(const Mat&)>& star_map);

// A = Adj(o) realized on V with x* = the adjoint partner; o must be
// nondegenerate symmetric or alternating.
StarAlgebra star_algebra_of_bimap(const Bimap& bm);

// Conjugation normalizes the span and commutes with * on the basis.
bool star_normalizes(const Mat& g, const StarAlgebra& A);

struct SingleGen {
  Mat g;
  GenTag tag;
};

struct StarGeneratorSet {
  const Field* F = nullptr;
  int n = 0;
  std::vector<SingleGen> gens;
  std::optional<BigInt> order;
  std::vector<std::string> warnings;

  std::vector<Mat> mats() const {
    std::vector<Mat> out;
    for (const auto& t : gens) out.push_back(t.g);
    return out;
  }
};

// Taft: a complement S with A = J + S and S* = S (odd characteristic),
// found by unipotent corrections of an ordinary complement.
Subspace star_invariant_complement(const StarAlgebra& A, const Subspace& J,
                                   std::uint64_t seed);

// E* = I0 ∪ {e + e* : e in E0 - I0} from the plain central-primitive
// idempotents of S.
std::vector<Mat> star_idempotents(const StarAlgebra& A, const Subspace& S,
                                  std::uint64_t seed);

// J^+ / J^- eigenspaces of * on an invariant subspace (odd characteristic).
std::pair<Subspace, Subspace> star_eigenspaces(const StarAlgebra& A,
                                               const Subspace& J);

// {z + sqrt(1+z^2) : z over bases of (J^i)^-}; every element g has gg* = 1.
StarGeneratorSet jminus_unipotents(const StarAlgebra& A, const Subspace& J);

// Square root of the unipotent element 1 + w (w nilpotent) by Newton
// iteration; exact, char != 2.
Mat sqrt_unipotent(const Mat& one_plus_w);

struct StarFactorData {
  Mat e;         // *-fixed central-primitive idempotent
  char type = 0; // 'o' orthogonal, 's' symplectic, 'u' unitary, 'x' exchange
  int d = 0, m = 0;
  char eps = 0;  // for even orthogonal: '+' or '-'
  BigInt isom_order = 0;
  BigInt pseudo_order = 0;
  std::vector<Mat> isom_gens;    // global matrices: Isom(bullet_e) + 1 - e
  std::vector<Mat> pseudo_gens;  // Isom extended by the similitude scalars
};

// Classical isometry group orders.
BigInt sp_order(const BigInt& q, int d);        // d even
BigInt gu_order(const BigInt& q0, int d);       // over GF(q0^2)
BigInt o_order(const BigInt& q, int d, char eps);

struct StarNormalizerResult {
  StarGeneratorSet gens;
  std::vector<SingleGen> stab_gens;
  Subspace J, S, Jplus, Jminus;
  std::vector<StarFactorData> factors;
  // orbit_minus carries the joint orbit of the (J^-, J^+) pair; the two
  // eigenspaces are stabilized in a single BFS.
  BigInt orbit_minus = 1, orbit_plus = 1;
  std::optional<BigInt> stab_order;  // closure order under the cap
  std::optional<BigInt> intersection;
};

// N*(A) pipeline: *-invariant Wedderburn data, per-factor classical
// generators, commutant and swap parts, stabilization of J^- and J^+, and
// the J^- unipotents.  Odd characteristic only.
StarNormalizerResult star_normalizer(const StarAlgebra& A, std::uint64_t seed,
                                     const Caps& caps = Caps{});

// Factor classification and generators, exposed for tests.
StarFactorData star_simple_type(const StarAlgebra& A, const Subspace& S,
                                const Mat& e, std::uint64_t seed,
                                const Caps& caps = Caps{});

}  // namespace gfbimap
