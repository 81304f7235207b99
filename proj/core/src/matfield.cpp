#include "gfbimap/matfield.hpp"

#include <algorithm>

namespace gfbimap {

Poly minimal_polynomial_rel(const Mat& M, const Mat& unit) {
  require(M.is_square() && unit.rows == M.rows && unit.cols == M.cols,
          "minpoly shape mismatch");
  const Field& F = *M.F;
  int n2 = M.rows * M.cols;
  IncrementalSpan span(F, n2);
  std::vector<Mat> powers;  // M^0 = unit, M^1, ...
  Mat P = unit;
  while (true) {
    Mat flat = mat_flatten(P);
    if (!span.add(flat)) {
      // P is dependent on lower powers: solve for coefficients
      int d = static_cast<int>(powers.size());
      Mat A(F, d, n2);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < n2; ++j) A.at(i, j) = powers[i].a[j];
      auto sol = solve_left(A, flat);
      require(sol.has_value(), "minimal polynomial solve failed");
      std::vector<Fe> c(d + 1, 0);
      for (int i = 0; i < d; ++i) c[i] = F.neg(sol->at(0, i));
      c[d] = F.one();
      return Poly(std::move(c));
    }
    powers.push_back(P);
    P = mat_mul(P, M);
    require(static_cast<int>(powers.size()) <= n2 + 1, "minpoly runaway");
  }
}

Poly minimal_polynomial(const Mat& M) {
  return minimal_polynomial_rel(M, mat_identity(*M.F, M.rows));
}

namespace {

Mat eval_poly_on_matrix(const Field& F, const Poly& f, const Mat& tau,
                        const Mat& unit) {
  Mat acc = mat_zero(F, tau.rows, tau.cols);
  for (int i = f.degree(); i >= 0; --i) {
    acc = mat_mul(acc, tau);
    if (f.c[i] != 0) acc = mat_add(acc, mat_scale(unit, f.c[i]));
  }
  return acc;
}

}  // namespace

Mat root_in_algebra(const Field& F, const Poly& f, const std::vector<Mat>& basis,
                    const Mat& unit, std::uint64_t seed, std::uint64_t budget) {
  (void)seed;  // enumeration is deterministic; seed kept for the contract
  require(!basis.empty(), "empty algebra basis");
  int n = basis[0].rows;
  std::uint64_t count = 1;
  for (size_t i = 0; i < basis.size(); ++i) {
    count *= F.q();
    if (count > budget) throw RandomnessExhausted("root_in_algebra budget");
  }
  std::vector<Fe> coeff(basis.size(), 0);
  for (std::uint64_t it = 0; it < count; ++it) {
    Mat tau = mat_zero(F, n, n);
    for (size_t i = 0; i < basis.size(); ++i)
      if (coeff[i] != 0) tau = mat_add(tau, mat_scale(basis[i], coeff[i]));
    if (eval_poly_on_matrix(F, f, tau, unit).is_zero()) return tau;
    // odometer
    for (size_t i = 0; i < coeff.size(); ++i) {
      coeff[i] = static_cast<Fe>((coeff[i] + 1) % F.q());
      if (coeff[i] != 0) break;
    }
  }
  throw NoRoot("no root of the polynomial in the given algebra");
}

BigInt MatrixField::order() const {
  BigInt r = 1;
  for (int i = 0; i < m; ++i) r *= F->q();
  return r;
}

Mat MatrixField::to_matrix(const Poly& elem) const {
  Poly e = poly_mod(*F, elem, minpoly);
  return eval_poly_on_matrix(*F, e, gen, unit);
}

Poly MatrixField::mul(const Poly& a, const Poly& b) const {
  return poly_mod(*F, poly_mul(*F, a, b), minpoly);
}
Poly MatrixField::add(const Poly& a, const Poly& b) const {
  return poly_add(*F, a, b);
}
Poly MatrixField::sub(const Poly& a, const Poly& b) const {
  return poly_sub(*F, a, b);
}
Poly MatrixField::one() const { return Poly({F->one()}); }

Poly MatrixField::pow(const Poly& a, const BigInt& e) const {
  return poly_powmod(*F, a, e, minpoly);
}

Poly MatrixField::inv(const Poly& a) const {
  require(!poly_mod(*F, a, minpoly).is_zero(), "inverse of zero in L");
  return pow(a, order() - 2);
}

Poly MatrixField::frobenius_q(const Poly& a) const {
  return pow(a, BigInt(F->q()));
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n && d <= 10'000'000ULL; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    // leftover must be prime at desk scale (single factor)
    out.push_back(n);
  }
  return out;
}

MatrixField make_matrix_field(const Field& F, const std::vector<Mat>& basis,
                              const Mat& unit, std::uint64_t seed) {
  require(!basis.empty(), "empty field basis");
  int m = static_cast<int>(basis.size());
  std::uint64_t Q = 1;
  for (int i = 0; i < m; ++i) {
    Q *= F.q();
    require(Q < (1ULL << 62), "matrix field too large");
  }
  auto factors = prime_factors_u64(Q - 1);

  Rng rng(seed);
  for (int attempt = 0; attempt < 4096; ++attempt) {
    Mat g = mat_zero(F, unit.rows, unit.cols);
    for (const Mat& b : basis)
      g = mat_add(g, mat_scale(b, static_cast<Fe>(rng.below(F.q()))));
    if (g.is_zero()) continue;
    // g must be a unit of order exactly Q-1 (then it generates L over k).
    Mat gq = mat_pow(g, Q - 1);
    if (!(gq == unit)) continue;  // not a unit of the block, or wrong order
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (mat_pow(g, (Q - 1) / r) == unit) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    MatrixField L;
    L.F = &F;
    L.unit = unit;
    L.gen = g;
    L.minpoly = minimal_polynomial_rel(g, unit);
    L.m = m;
    require(L.minpoly.degree() == m, "primitive element does not generate");
    require(poly_is_irreducible(F, L.minpoly), "matrix field minpoly reducible");
    return L;
  }
  throw RandomnessExhausted("primitive element search");
}

Mat field_isomorphism(const MatrixField& L1, const MatrixField& L2,
                      std::uint64_t seed) {
  if (L1.m != L2.m) throw DegreeMismatch("field degrees differ");
  // Basis of L2 as powers of its generator.
  std::vector<Mat> basis;
  Mat P = L2.unit;
  for (int i = 0; i < L2.m; ++i) {
    basis.push_back(P);
    P = mat_mul(P, L2.gen);
  }
  return root_in_algebra(*L1.F, L1.minpoly, basis, L2.unit, seed);
}

}  // namespace gfbimap
