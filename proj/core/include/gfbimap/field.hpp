#pragma once

#include <cstdint>
#include <vector>

#include "gfbimap/common.hpp"

namespace gfbimap {

// Field element, encoded as an index in [0, q).  The coefficient vector
// (c_0,...,c_{k-1}) over GF(p) corresponds to the index sum c_i * p^i.
using Fe = std::uint16_t;

// Univariate polynomial over a Field, coefficients low-degree-first with no
// trailing zeros.  The zero polynomial is the empty sequence.
struct Poly {
  std::vector<Fe> c;

  Poly() = default;
  explicit Poly(std::vector<Fe> coeffs) : c(std::move(coeffs)) { trim(); }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Fe leading() const { return c.back(); }
  Fe coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Fe{0};
  }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool operator==(const Poly& o) const { return c == o.c; }
};

// Exact arithmetic in GF(p^k).  Instances are interned: Field::get returns a
// stable pointer for the lifetime of the process, so containers can hold
// `const Field*` freely.  All arithmetic is table-driven (q <= 1024).
class Field {
public:
  // Default modulus: the lexicographically least monic irreducible of degree
  // k over GF(p), coefficients compared low-degree-first.
  static const Field& get(std::int64_t p, std::int64_t k);
  static const Field& get(std::int64_t p, std::int64_t k, const Poly& modulus);

  std::int64_t p() const { return p_; }
  std::int64_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  // Modulus coefficients over GF(p), length k+1, monic.
  const std::vector<Fe>& modulus() const { return modulus_; }

  Fe zero() const { return 0; }
  Fe one() const { return 1; }

  Fe add(Fe a, Fe b) const { return add_[a * q_ + b]; }
  Fe sub(Fe a, Fe b) const { return add_[a * q_ + neg_[b]]; }
  Fe neg(Fe a) const { return neg_[a]; }
  Fe mul(Fe a, Fe b) const { return mul_[a * q_ + b]; }
  Fe inv(Fe a) const {
    if (a == 0) throw Singular("inverse of zero field element");
    return inv_[a];
  }
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  // Frobenius x -> x^p; an automorphism of order k.
  Fe frob(Fe a) const { return frob_[a]; }

  Fe pow(Fe a, std::uint64_t e) const;
  Fe pow(Fe a, const BigInt& e) const;

  // Index <-> coefficient vector over GF(p).
  std::vector<Fe> coeffs(Fe a) const;
  Fe from_coeffs(const std::vector<Fe>& cs) const;
  // Embeds an integer through the prime subfield (reduces mod p).
  Fe from_int(std::int64_t v) const;

  bool operator==(const Field& o) const { return this == &o; }

private:
  Field(std::int64_t p, std::int64_t k, std::vector<Fe> modulus);

  std::int64_t p_, k_;
  std::uint32_t q_;
  std::vector<Fe> modulus_;
  std::vector<Fe> add_, mul_, neg_, inv_, frob_;
};

bool is_prime(std::int64_t n);

// --- polynomial algebra over a Field -----------------------------------

Poly poly_from_ints(const Field& F, std::initializer_list<std::int64_t> cs);
Poly poly_x(const Field& F);
Poly poly_constant(const Field& F, Fe a);
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
Poly poly_scale(const Field& F, const Poly& a, Fe s);
// Division with remainder; b nonzero.
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b);
Poly poly_mod(const Field& F, const Poly& a, const Poly& b);
Poly poly_monic(const Field& F, const Poly& a);
Poly poly_gcd(const Field& F, Poly a, Poly b);  // monic gcd
Poly poly_deriv(const Field& F, const Poly& a);
Fe poly_eval(const Field& F, const Poly& a, Fe x);
Poly poly_powmod(const Field& F, Poly base, const BigInt& e, const Poly& mod);
bool poly_is_irreducible(const Field& F, const Poly& f);
// (g, s, t) with s*a + t*b = g = monic gcd(a, b).
std::tuple<Poly, Poly, Poly> poly_egcd(const Field& F, const Poly& a,
                                       const Poly& b);
Poly poly_lcm(const Field& F, const Poly& a, const Poly& b);

// Irreducible factors with multiplicities, deterministic given seed.
// Las Vegas: retries internally, never returns a wrong factorization.
std::vector<std::pair<Poly, int>> poly_factor(const Field& F, const Poly& f,
                                              std::uint64_t seed);
// Roots in the base field, with multiplicity.
std::vector<std::pair<Fe, int>> poly_roots(const Field& F, const Poly& f,
                                           std::uint64_t seed);

}  // namespace gfbimap
