#pragma once

#include "gfbimap/starnorm.hpp"
#include "gfbimap/tensor.hpp"

namespace gfbimap {

// Deterministic enumeration of GL_n(q), row by row over vectors outside the
// span of the previous rows.
class GLIterator {
public:
  GLIterator(const Field& F, int n);
  bool next(Mat& out);

private:
  bool fill_level(int level);
  const Field* F_;
  int n_;
  std::uint64_t qn_;
  std::vector<std::uint64_t> idx_;
  std::vector<Mat> rows_;
  bool started_ = false, exhausted_ = false;
  Mat decode(std::uint64_t v) const;
};

// Explicit list of group elements, hash-indexed; order = size.
struct ElementTable {
  std::vector<GenPair> pairs;
  std::vector<Mat> singles;

  BigInt order() const {
    return BigInt(pairs.empty() ? singles.size() : pairs.size());
  }
  bool closed_under_random_products(Rng& rng, int trials = 100) const;
};

// All (F, G) with F W^o G^T = W^o.
ElementTable brute_autotopisms(const Bimap& bm, const Caps& caps = Caps{});
// All F with F W^o F^T = W^o (a = b).
ElementTable brute_pseudo_isometries(const Bimap& bm, const Caps& caps = Caps{});
// All F with F M_l F^T = M_l for every slice.
ElementTable brute_isometries(const Bimap& bm, const Caps& caps = Caps{});
// Exhaustive filter of GL_a x GL_b by normalizes().
ElementTable brute_normalizer(const AlgebraPair& A, const Caps& caps = Caps{});
// Exhaustive filter of GL_n by conjugation-normalizing + *-commuting.
ElementTable brute_star_normalizer(const StarAlgebra& A,
                                   const Caps& caps = Caps{});
// All (x, y) with x W y^T = W (the quadratic stabilizer, brute force).
ElementTable brute_quadstab(const Field& F, int a, int b, const Subspace& W,
                            const Caps& caps = Caps{});

}  // namespace gfbimap
