#pragma once

#include "gfbimap/matlin.hpp"

namespace gfbimap {

// Full bimap U x V -> W over GF(q), stored as w Gram-matrix slices: the l-th
// coordinate of u o v is u * M_l * v^T.
struct Bimap {
  const Field* F = nullptr;
  int a = 0, b = 0, w = 0;
  std::vector<Mat> slices;
  bool symmetric = false, alternating = false;

  const Field& field() const { return *F; }
};

// Triple (f, g; h) with f: a x a, g: b x b, h: w x w, all acting on rows.
// Invariant: f * M_l * g^T = sum_m h_{l m} M_m for every slice l.
struct Homotopism {
  Mat f, g, h;
};

// Constructs a Bimap from slices that are already known to span a full map;
// throws if the flattened slice matrix is rank-deficient.
Bimap bimap_from_slices(const Field& F, int a, int b, std::vector<Mat> slices);

struct MakeFullResult {
  Bimap bimap;
  // Maps old W coordinates to new: new_value = old_value * projection,
  // shape (#raw slices) x w.
  Mat projection;
};

// Records the bimap against a basis of U o V (the row space of the flattened
// slice matrix).  All-zero input yields the w = 0 bimap (the lattice top).
MakeFullResult make_full(const Field& F, int a, int b,
                         const std::vector<Mat>& raw_slices);

// Span of the slices inside the flattened a*b matrix space (the Gram
// representation W^o).
Subspace gram_span(const Bimap& bm);

// Matrix of the induced map U (x) V -> W on pure tensors: row (i*b+j) is the
// value vector of e_i o e_j.  Shape ab x w.
Mat hat_matrix(const Bimap& bm);
// ker of the induced map, as a Subspace of k^(ab).
Subspace hat_kernel(const Bimap& bm);

// Value vector of u o v, shape 1 x w.
Mat bimap_value(const Bimap& bm, const Mat& u, const Mat& v);

// left radical {u : u o V = 0} and right radical {v : U o v = 0}.
std::pair<Subspace, Subspace> radicals(const Bimap& bm);
bool is_nondegenerate(const Bimap& bm);

Bimap bimap_meet(const Bimap& c, const Bimap& d);
Bimap bimap_join(const Bimap& c, const Bimap& d);

struct RegularModResult {
  Bimap bimap;
  // Quotient map k^(ab) -> k^w on row vectors, shape ab x w.
  Mat quotient_map;
};

// The regular bimap mod K: u . v = u (x) v + K, written against the
// complement-coordinate basis (non-pivot coordinates of K, in order).
RegularModResult regular_mod(const Field& F, int a, int b, const Subspace& K);

// tau with d = c^tau iff ker c-hat is contained in ker d-hat; else nullopt.
std::optional<Mat> factors_through(const Bimap& c, const Bimap& d);
bool factor_equivalent(const Bimap& c, const Bimap& d);

bool is_homotopism(const Bimap& bm, const Homotopism& h);
// (F, G) is (the restriction of) an autotopism iff F * W^o * G^T = W^o; then
// h is determined.  Returns h, or nullopt if the pair is not an autotopism.
std::optional<Mat> autotopism_h(const Bimap& bm, const Mat& f, const Mat& g);
bool is_autotopism_pair(const Bimap& bm, const Mat& f, const Mat& g);

// Named fixtures shared by tests and the CLI corpus.
Bimap fixture_mult(std::int64_t q_p, std::int64_t q_k = 1);
Bimap fixture_sympl2(std::int64_t p);
Bimap fixture_sym2(std::int64_t p);
Bimap fixture_tensor(int a, int b, std::int64_t p);
Bimap fixture_heis(std::int64_t p);
// Lookup by name: mult-q, sympl2-q, sym2-q, tensor-AB-q, heis-p.
Bimap fixture_by_name(const std::string& name);

// Seeded random full bimap (used by the verification suites).
Bimap random_full_bimap(const Field& F, int a, int b, int w, Rng& rng);

}  // namespace gfbimap
