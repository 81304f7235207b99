#include "gfbimap/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace gfbimap {

std::string to_decimal(const BigInt& v) { return v.str(); }

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// --- raw GF(p) polynomial helpers used during field construction --------

namespace {

using PVec = std::vector<Fe>;  // coefficients mod p, low-first

PVec pv_trim(PVec v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

PVec pv_mulmod(const PVec& a, const PVec& b, const PVec& mod, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::int64_t> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + std::int64_t(a[i]) * b[j]) % p;
  // reduce by monic mod
  int m = static_cast<int>(mod.size()) - 1;
  for (int d = static_cast<int>(prod.size()) - 1; d >= m; --d) {
    std::int64_t c = prod[d];
    if (c == 0) continue;
    for (int i = 0; i <= m; ++i) {
      int idx = d - m + i;
      prod[idx] = ((prod[idx] - c * mod[i]) % p + p) % p;
    }
  }
  PVec out;
  for (int i = 0; i < m && i < static_cast<int>(prod.size()); ++i)
    out.push_back(static_cast<Fe>(prod[i]));
  return pv_trim(out);
}

bool pv_is_irreducible_over_prime(const PVec& f, std::int64_t p);

PVec pv_powmod(PVec base, BigInt e, const PVec& mod, std::int64_t p) {
  PVec result{1};
  while (e > 0) {
    if ((e & 1) != 0) result = pv_mulmod(result, base, mod, p);
    base = pv_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return result;
}

PVec pv_gcd(PVec a, PVec b, std::int64_t p) {
  auto inv_mod_p = [p](std::int64_t x) {
    std::int64_t r = 1, b = x % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  a = pv_trim(std::move(a));
  b = pv_trim(std::move(b));
  while (!b.empty()) {
    // a mod b
    std::vector<std::int64_t> r(a.begin(), a.end());
    std::int64_t lead_inv = inv_mod_p(b.back());
    for (int d = static_cast<int>(r.size()) - 1;
         d >= static_cast<int>(b.size()) - 1; --d) {
      std::int64_t c = r[d] % p;
      if (c == 0) continue;
      std::int64_t factor = c * lead_inv % p;
      int off = d - (static_cast<int>(b.size()) - 1);
      for (size_t i = 0; i < b.size(); ++i)
        r[off + i] = ((r[off + i] - factor * b[i]) % p + p) % p;
    }
    PVec rem;
    for (size_t i = 0; i + 1 < b.size() && i < r.size(); ++i)
      rem.push_back(static_cast<Fe>(r[i]));
    a = std::move(b);
    b = pv_trim(std::move(rem));
  }
  return a;
}

bool pv_is_irreducible_over_prime(const PVec& f, std::int64_t p) {
  int n = static_cast<int>(f.size()) - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  // x^(p^n) == x mod f, and gcd(x^(p^(n/r)) - x, f) == 1 for prime r | n.
  PVec x{0, 1};
  BigInt pn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  PVec xq = pv_powmod(x, pn, f, p);
  if (pv_trim(xq) != pv_trim(x)) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(r)) continue;
    BigInt e = 1;
    for (int i = 0; i < n / r; ++i) e *= p;
    PVec xe = pv_powmod(x, e, f, p);
    // xe - x
    PVec diff = xe;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<Fe>(((std::int64_t(diff[1]) - 1) % p + p) % p);
    diff = pv_trim(std::move(diff));
    PVec g = pv_gcd(diff, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

PVec default_modulus(std::int64_t p, std::int64_t k) {
  if (k == 1) return PVec{0, 1};  // x
  // Enumerate monic degree-k polynomials in lexicographic order of
  // (c_0, c_1, ..., c_{k-1}), low coefficient most significant.
  PVec f(k + 1, 0);
  f[k] = 1;
  std::vector<std::int64_t> c(k, 0);
  while (true) {
    for (std::int64_t i = 0; i < k; ++i) f[i] = static_cast<Fe>(c[i]);
    if (pv_is_irreducible_over_prime(f, p)) return f;
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && c[pos] == p - 1) c[pos--] = 0;
    if (pos < 0) throw Internal("no irreducible polynomial found");
    ++c[pos];
  }
}

}  // namespace

Field::Field(std::int64_t p, std::int64_t k, std::vector<Fe> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  std::int64_t q = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    q *= p;
    if (q > 1024) throw Unsupported("field too large (q > 1024)");
  }
  q_ = static_cast<std::uint32_t>(q);

  add_.resize(std::size_t(q_) * q_);
  mul_.resize(std::size_t(q_) * q_);
  neg_.resize(q_);
  inv_.resize(q_);
  frob_.resize(q_);

  auto decode = [&](Fe a) {
    PVec cs(k_);
    for (std::int64_t i = 0; i < k_; ++i) {
      cs[i] = static_cast<Fe>(a % p_);
      a = static_cast<Fe>(a / p_);
    }
    return cs;
  };
  auto encode = [&](const PVec& cs) {
    std::int64_t v = 0;
    for (std::int64_t i = k_ - 1; i >= 0; --i)
      v = v * p_ + (i < static_cast<std::int64_t>(cs.size()) ? cs[i] : 0);
    return static_cast<Fe>(v);
  };

  for (std::uint32_t a = 0; a < q_; ++a) {
    PVec ca = decode(static_cast<Fe>(a));
    PVec cn(k_);
    for (std::int64_t i = 0; i < k_; ++i)
      cn[i] = static_cast<Fe>((p_ - ca[i]) % p_);
    neg_[a] = encode(cn);
    for (std::uint32_t b = 0; b < q_; ++b) {
      PVec cb = decode(static_cast<Fe>(b));
      PVec cs(k_);
      for (std::int64_t i = 0; i < k_; ++i)
        cs[i] = static_cast<Fe>((ca[i] + cb[i]) % p_);
      add_[a * q_ + b] = encode(cs);
      mul_[a * q_ + b] = encode(pv_mulmod(ca, cb, modulus_, p_));
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a) {
    // inverse by Fermat: a^(q-2)
    Fe r = 1, base = static_cast<Fe>(a);
    std::uint64_t e = q_ - 2;
    while (e) {
      if (e & 1) r = mul_[r * q_ + base];
      base = mul_[base * q_ + base];
      e >>= 1;
    }
    inv_[a] = r;
  }
  inv_[0] = 0;
  for (std::uint32_t a = 0; a < q_; ++a) {
    Fe r = 1, base = static_cast<Fe>(a);
    std::uint64_t e = static_cast<std::uint64_t>(p_);
    while (e) {
      if (e & 1) r = mul_[r * q_ + base];
      base = mul_[base * q_ + base];
      e >>= 1;
    }
    frob_[a] = r;
  }
}

const Field& Field::get(std::int64_t p, std::int64_t k) {
  if (!is_prime(p)) throw NonPrime("p = " + std::to_string(p));
  if (k < 1) throw Unsupported("extension degree must be >= 1");
  return get(p, k, Poly(default_modulus(p, k)));
}

const Field& Field::get(std::int64_t p, std::int64_t k, const Poly& modulus) {
  if (!is_prime(p)) throw NonPrime("p = " + std::to_string(p));
  if (k < 1) throw Unsupported("extension degree must be >= 1");
  PVec m = modulus.c;
  if (static_cast<std::int64_t>(m.size()) != k + 1 || m.back() != 1)
    throw ReducibleModulus("modulus must be monic of degree k");
  for (Fe c : m)
    if (c >= p) throw ReducibleModulus("modulus coefficients must lie in GF(p)");
  if (k > 1 && !pv_is_irreducible_over_prime(m, p))
    throw ReducibleModulus("modulus is reducible");

  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, std::int64_t, PVec>,
                  std::unique_ptr<Field>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, k, m);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::unique_ptr<Field>(new Field(p, k, m))).first;
  }
  return *it->second;
}

Fe Field::pow(Fe a, std::uint64_t e) const {
  Fe r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fe Field::pow(Fe a, const BigInt& e) const {
  // element orders divide q-1, q small
  if (a == 0) return e == 0 ? one() : zero();
  BigInt r = e % (q_ - 1);
  if (r < 0) r += q_ - 1;
  return pow(a, r.convert_to<std::uint64_t>());
}

std::vector<Fe> Field::coeffs(Fe a) const {
  std::vector<Fe> cs(k_);
  for (std::int64_t i = 0; i < k_; ++i) {
    cs[i] = static_cast<Fe>(a % p_);
    a = static_cast<Fe>(a / p_);
  }
  return cs;
}

Fe Field::from_coeffs(const std::vector<Fe>& cs) const {
  std::int64_t v = 0;
  for (std::int64_t i = k_ - 1; i >= 0; --i) {
    std::int64_t c = i < static_cast<std::int64_t>(cs.size()) ? cs[i] : 0;
    require(0 <= c && c < p_, "coefficient out of range");
    v = v * p_ + c;
  }
  return static_cast<Fe>(v);
}

Fe Field::from_int(std::int64_t v) const {
  std::int64_t c = ((v % p_) + p_) % p_;
  return static_cast<Fe>(c);
}

// --- polynomial algebra --------------------------------------------------

Poly poly_from_ints(const Field& F, std::initializer_list<std::int64_t> cs) {
  std::vector<Fe> v;
  v.reserve(cs.size());
  for (auto c : cs) v.push_back(F.from_int(c));
  return Poly(std::move(v));
}

Poly poly_x(const Field& F) { return Poly({F.zero(), F.one()}); }

Poly poly_constant(const Field& F, Fe a) {
  (void)F;
  return Poly({a});
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Fe> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return Poly(std::move(c));
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Fe> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = F.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return Poly(std::move(c));
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Fe> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
  }
  return Poly(std::move(c));
}

Poly poly_scale(const Field& F, const Poly& a, Fe s) {
  std::vector<Fe> c(a.c);
  for (auto& x : c) x = F.mul(x, s);
  return Poly(std::move(c));
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a,
                                  const Poly& b) {
  require(!b.is_zero(), "polynomial division by zero");
  std::vector<Fe> r(a.c);
  int db = b.degree();
  Fe lead_inv = F.inv(b.leading());
  std::vector<Fe> qv;
  int dq = static_cast<int>(r.size()) - 1 - db;
  if (dq < 0) return {Poly(), a};
  qv.assign(dq + 1, 0);
  for (int d = static_cast<int>(r.size()) - 1; d >= db; --d) {
    Fe c = r[d];
    if (c == 0) continue;
    Fe f = F.mul(c, lead_inv);
    qv[d - db] = f;
    for (int i = 0; i <= db; ++i)
      r[d - db + i] = F.sub(r[d - db + i], F.mul(f, b.c[i]));
  }
  r.resize(db > 0 ? db : 0);
  return {Poly(std::move(qv)), Poly(std::move(r))};
}

Poly poly_mod(const Field& F, const Poly& a, const Poly& b) {
  return poly_divmod(F, a, b).second;
}

Poly poly_monic(const Field& F, const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(F, a, F.inv(a.leading()));
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

std::tuple<Poly, Poly, Poly> poly_egcd(const Field& F, const Poly& a,
                                       const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0({F.one()}), s1;
  Poly t0, t1({F.one()});
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(F, r0, r1);
    Poly s2 = poly_sub(F, s0, poly_mul(F, q, s1));
    Poly t2 = poly_sub(F, t0, poly_mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Fe lead = r0.leading();
  Fe inv = F.inv(lead);
  return {poly_scale(F, r0, inv), poly_scale(F, s0, inv), poly_scale(F, t0, inv)};
}

Poly poly_lcm(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly g = poly_gcd(F, a, b);
  return poly_monic(F, poly_mul(F, poly_divmod(F, a, g).first, b));
}

Poly poly_deriv(const Field& F, const Poly& a) {
  if (a.degree() < 1) return Poly();
  std::vector<Fe> c(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) {
    Fe mult = F.from_int(static_cast<std::int64_t>(i));
    c[i - 1] = F.mul(a.c[i], mult);
  }
  return Poly(std::move(c));
}

Fe poly_eval(const Field& F, const Poly& a, Fe x) {
  Fe r = 0;
  for (int i = a.degree(); i >= 0; --i) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

Poly poly_powmod(const Field& F, Poly base, const BigInt& e, const Poly& mod) {
  Poly result({F.one()});
  base = poly_mod(F, base, mod);
  BigInt ex = e;
  while (ex > 0) {
    if ((ex & 1) != 0) result = poly_mod(F, poly_mul(F, result, base), mod);
    base = poly_mod(F, poly_mul(F, base, base), mod);
    ex >>= 1;
  }
  return result;
}

namespace {

BigInt q_pow(const Field& F, int d) {
  BigInt r = 1;
  for (int i = 0; i < d; ++i) r *= F.q();
  return r;
}

// p-th root coefficientwise: inverse Frobenius is x -> x^(p^(k-1)).
Fe inv_frob(const Field& F, Fe a) {
  Fe r = a;
  for (std::int64_t i = 0; i + 1 < F.k(); ++i) r = F.frob(r);
  return r;
}

// Squarefree decomposition: returns (g, mult) pairs with product of g^mult
// equal to f up to leading unit, each g squarefree.
std::vector<std::pair<Poly, int>> squarefree_parts(const Field& F, Poly f,
                                                   int outer_mult) {
  std::vector<std::pair<Poly, int>> out;
  if (f.degree() < 1) return out;
  Poly d = poly_deriv(F, f);
  if (d.is_zero()) {
    // f = h(x^p): take p-th root of coefficients
    std::vector<Fe> h;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(F.p()))
      h.push_back(inv_frob(F, f.coeff(i)));
    auto inner = squarefree_parts(F, Poly(std::move(h)),
                                  outer_mult * static_cast<int>(F.p()));
    for (auto& pr : inner) out.push_back(pr);
    return out;
  }
  Poly g = poly_gcd(F, f, d);
  Poly w = poly_divmod(F, f, g).first;  // product of squarefree part
  int mult = 1;
  while (w.degree() >= 1) {
    Poly y = poly_gcd(F, w, g);
    Poly z = poly_divmod(F, w, y).first;  // factors of exact multiplicity mult
    if (z.degree() >= 1) out.emplace_back(poly_monic(F, z), mult * outer_mult);
    g = poly_divmod(F, g, y).first;
    w = std::move(y);
    ++mult;
  }
  if (g.degree() >= 1) {
    // remaining part is a p-th power
    auto inner = squarefree_parts(F, g, outer_mult);
    for (auto& pr : inner) {
      bool merged = false;
      for (auto& e : out)
        if (e.first == pr.first) {
          e.second += pr.second;
          merged = true;
        }
      if (!merged) out.push_back(pr);
    }
  }
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus), f squarefree product of
// irreducibles of degree d.
void equal_degree_split(const Field& F, const Poly& f, int d, Rng& rng,
                        std::vector<Poly>& out, int depth = 0) {
  if (f.degree() == d) {
    out.push_back(poly_monic(F, f));
    return;
  }
  if (depth > 200) throw RandomnessExhausted("equal-degree splitting");
  int n = f.degree();
  Poly a;
  {
    std::vector<Fe> c(n);
    for (auto& x : c) x = static_cast<Fe>(rng.below(F.q()));
    a = Poly(std::move(c));
  }
  if (a.degree() < 1) {
    equal_degree_split(F, f, d, rng, out, depth + 1);
    return;
  }
  Poly g = poly_gcd(F, a, f);
  if (g.degree() >= 1 && g.degree() < n) {
    equal_degree_split(F, g, d, rng, out, depth + 1);
    equal_degree_split(F, poly_divmod(F, f, g).first, d, rng, out, depth + 1);
    return;
  }
  Poly b;
  if (F.p() != 2) {
    BigInt e = (q_pow(F, d) - 1) / 2;
    b = poly_powmod(F, a, e, f);
    b = poly_sub(F, b, poly_constant(F, F.one()));
  } else {
    // trace map over GF(2^k): sum of a^(2^i), i < k*d
    Poly t = poly_mod(F, a, f);
    Poly acc = t;
    std::int64_t steps = F.k() * d;
    for (std::int64_t i = 1; i < steps; ++i) {
      t = poly_mod(F, poly_mul(F, t, t), f);
      acc = poly_add(F, acc, t);
    }
    b = acc;
  }
  Poly h = poly_gcd(F, b, f);
  if (h.degree() >= 1 && h.degree() < n) {
    equal_degree_split(F, h, d, rng, out, depth + 1);
    equal_degree_split(F, poly_divmod(F, f, h).first, d, rng, out, depth + 1);
  } else {
    equal_degree_split(F, f, d, rng, out, depth + 1);
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> poly_factor(const Field& F, const Poly& f,
                                              std::uint64_t seed) {
  require(!f.is_zero(), "factoring the zero polynomial");
  Rng rng(seed);
  std::vector<std::pair<Poly, int>> result;
  if (f.degree() < 1) return result;

  for (auto& [sq, mult] : squarefree_parts(F, poly_monic(F, f), 1)) {
    // distinct-degree on sq
    Poly rest = sq;
    Poly x = poly_x(F);
    Poly h = x;
    int d = 0;
    while (rest.degree() >= 1) {
      ++d;
      if (2 * d > rest.degree()) {
        // remainder is irreducible
        result.emplace_back(poly_monic(F, rest), mult);
        break;
      }
      h = poly_powmod(F, h, BigInt(F.q()), rest);
      Poly g = poly_gcd(F, poly_sub(F, h, x), rest);
      if (g.degree() >= 1) {
        std::vector<Poly> irr;
        equal_degree_split(F, g, d, rng, irr);
        for (auto& fac : irr) result.emplace_back(fac, mult);
        rest = poly_divmod(F, rest, g).first;
        h = poly_mod(F, h, rest);
      }
    }
  }

  // exactness check: product of factors re-multiplies to monic(f)
  Poly prod({F.one()});
  for (auto& [g, m] : result)
    for (int i = 0; i < m; ++i) prod = poly_mul(F, prod, g);
  require(prod == poly_monic(F, f), "factorization re-multiplication failed");
  return result;
}

bool poly_is_irreducible(const Field& F, const Poly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  auto fac = poly_factor(F, f, 1);
  return fac.size() == 1 && fac[0].second == 1;
}

std::vector<std::pair<Fe, int>> poly_roots(const Field& F, const Poly& f,
                                           std::uint64_t seed) {
  std::vector<std::pair<Fe, int>> roots;
  for (auto& [g, m] : poly_factor(F, f, seed))
    if (g.degree() == 1) roots.emplace_back(F.neg(g.c[0]), m);
  return roots;
}

}  // namespace gfbimap
