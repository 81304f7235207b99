#include "gfbimap/bimap.hpp"

#include <sstream>

namespace gfbimap {

namespace {

void compute_flags(Bimap& bm) {
  bm.symmetric = bm.a == bm.b;
  bm.alternating = bm.a == bm.b;
  for (const Mat& M : bm.slices) {
    if (bm.a != bm.b) break;
    Mat Mt = mat_transpose(M);
    if (!(Mt == M)) bm.symmetric = false;
    if (!(mat_neg(Mt) == M)) bm.alternating = false;
    for (int i = 0; i < bm.a && bm.alternating; ++i)
      if (M.at(i, i) != 0) bm.alternating = false;
  }
  if (bm.w == 0) {
    bm.symmetric = bm.a == bm.b;
    bm.alternating = bm.a == bm.b;
  }
}

Mat flat_slice_matrix(const Field& F, int a, int b,
                      const std::vector<Mat>& slices) {
  Mat T(F, static_cast<int>(slices.size()), a * b);
  for (size_t l = 0; l < slices.size(); ++l) {
    require(slices[l].rows == a && slices[l].cols == b, "slice shape mismatch");
    for (int i = 0; i < a * b; ++i) T.at(static_cast<int>(l), i) = slices[l].a[i];
  }
  return T;
}

}  // namespace

Bimap bimap_from_slices(const Field& F, int a, int b, std::vector<Mat> slices) {
  Bimap bm;
  bm.F = &F;
  bm.a = a;
  bm.b = b;
  bm.w = static_cast<int>(slices.size());
  bm.slices = std::move(slices);
  if (bm.w > 0) {
    auto r = rref(flat_slice_matrix(F, a, b, bm.slices));
    require(r.rank == bm.w, "bimap is not full");
  }
  compute_flags(bm);
  return bm;
}

MakeFullResult make_full(const Field& F, int a, int b,
                         const std::vector<Mat>& raw_slices) {
  int r = static_cast<int>(raw_slices.size());
  Mat T = flat_slice_matrix(F, a, b, raw_slices);
  auto red = rref(T);
  int w = red.rank;

  MakeFullResult out;
  out.bimap.F = &F;
  out.bimap.a = a;
  out.bimap.b = b;
  out.bimap.w = w;
  for (int l = 0; l < w; ++l) {
    std::vector<Fe> v(a * b);
    for (int i = 0; i < a * b; ++i) v[i] = red.R.at(l, i);
    out.bimap.slices.push_back(mat_unflatten(F, v, a, b));
  }
  compute_flags(out.bimap);

  if (w == 0) {
    out.projection = Mat(F, r, 0);
    return out;
  }
  // C: old slices in terms of new basis, C * R = T.
  Mat basis(F, w, a * b);
  for (int l = 0; l < w; ++l)
    for (int i = 0; i < a * b; ++i) basis.at(l, i) = red.R.at(l, i);
  auto C = solve_left(basis, T);
  require(C.has_value(), "make_full coefficient solve failed");
  // projection P with C^T P = I_w, i.e. new = old * P.
  auto X = solve_left(*C, mat_identity(F, w));
  require(X.has_value(), "make_full projection solve failed");
  out.projection = mat_transpose(*X);
  return out;
}

Subspace gram_span(const Bimap& bm) {
  if (bm.w == 0) return Subspace::zero(*bm.F, bm.a * bm.b);
  return Subspace::from_rows(flat_slice_matrix(*bm.F, bm.a, bm.b, bm.slices));
}

Mat hat_matrix(const Bimap& bm) {
  Mat H(*bm.F, bm.a * bm.b, bm.w);
  for (int i = 0; i < bm.a; ++i)
    for (int j = 0; j < bm.b; ++j)
      for (int l = 0; l < bm.w; ++l)
        H.at(i * bm.b + j, l) = bm.slices[l].at(i, j);
  return H;
}

Subspace hat_kernel(const Bimap& bm) { return nullspace(hat_matrix(bm)); }

Mat bimap_value(const Bimap& bm, const Mat& u, const Mat& v) {
  Mat out(*bm.F, 1, bm.w);
  Mat vt = mat_transpose(v);
  for (int l = 0; l < bm.w; ++l)
    out.at(0, l) = mat_mul(mat_mul(u, bm.slices[l]), vt).at(0, 0);
  return out;
}

std::pair<Subspace, Subspace> radicals(const Bimap& bm) {
  const Field& F = *bm.F;
  // left: u with u M_l = 0 for all l  ==  left nullspace of [M_1 | ... | M_w]
  Mat L(F, bm.a, bm.b * bm.w);
  for (int l = 0; l < bm.w; ++l)
    for (int i = 0; i < bm.a; ++i)
      for (int j = 0; j < bm.b; ++j)
        L.at(i, l * bm.b + j) = bm.slices[l].at(i, j);
  Mat R(F, bm.b, bm.a * bm.w);
  for (int l = 0; l < bm.w; ++l)
    for (int i = 0; i < bm.a; ++i)
      for (int j = 0; j < bm.b; ++j)
        R.at(j, l * bm.a + i) = bm.slices[l].at(i, j);
  if (bm.w == 0) {
    return {Subspace::full(F, bm.a), Subspace::full(F, bm.b)};
  }
  return {nullspace(L), nullspace(R)};
}

bool is_nondegenerate(const Bimap& bm) {
  auto [l, r] = radicals(bm);
  return l.is_zero() && r.is_zero();
}

Bimap bimap_meet(const Bimap& c, const Bimap& d) {
  if (c.F != d.F || c.a != d.a || c.b != d.b)
    throw DimensionMismatch("meet over different spaces");
  std::vector<Mat> slices = c.slices;
  slices.insert(slices.end(), d.slices.begin(), d.slices.end());
  return make_full(*c.F, c.a, c.b, slices).bimap;
}

Bimap bimap_join(const Bimap& c, const Bimap& d) {
  if (c.F != d.F || c.a != d.a || c.b != d.b)
    throw DimensionMismatch("join over different spaces");
  Subspace K = subspace_sum(hat_kernel(c), hat_kernel(d));
  return regular_mod(*c.F, c.a, c.b, K).bimap;
}

RegularModResult regular_mod(const Field& F, int a, int b, const Subspace& K) {
  require(K.ambient == a * b, "regular_mod ambient mismatch");
  auto free_coords = K.nonpivot_coords();
  int w = static_cast<int>(free_coords.size());

  RegularModResult out;
  out.quotient_map = Mat(F, a * b, w);
  for (int x = 0; x < a * b; ++x) {
    Mat e(F, 1, a * b);
    e.at(0, x) = F.one();
    Mat r = K.reduce(e);
    for (int t = 0; t < w; ++t) out.quotient_map.at(x, t) = r.at(0, free_coords[t]);
  }
  out.bimap.F = &F;
  out.bimap.a = a;
  out.bimap.b = b;
  out.bimap.w = w;
  for (int l = 0; l < w; ++l) {
    Mat M(F, a, b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) M.at(i, j) = out.quotient_map.at(i * b + j, l);
    out.bimap.slices.push_back(std::move(M));
  }
  compute_flags(out.bimap);
  return out;
}

std::optional<Mat> factors_through(const Bimap& c, const Bimap& d) {
  if (c.F != d.F || c.a != d.a || c.b != d.b)
    throw DimensionMismatch("factors_through over different spaces");
  // Solve Hat_c * tau = Hat_d; consistent iff ker c-hat <= ker d-hat.
  Mat A = hat_matrix(c), B = hat_matrix(d);
  auto Xt = solve_left(mat_transpose(A), mat_transpose(B));
  if (!Xt.has_value()) return std::nullopt;
  return mat_transpose(*Xt);
}

bool factor_equivalent(const Bimap& c, const Bimap& d) {
  return factors_through(c, d).has_value() &&
         factors_through(d, c).has_value();
}

bool is_homotopism(const Bimap& bm, const Homotopism& h) {
  for (int l = 0; l < bm.w; ++l) {
    Mat lhs = mat_mul(mat_mul(h.f, bm.slices[l]), mat_transpose(h.g));
    Mat rhs = mat_zero(*bm.F, bm.a, bm.b);
    for (int m = 0; m < bm.w; ++m)
      rhs = mat_add(rhs, mat_scale(bm.slices[m], h.h.at(l, m)));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

std::optional<Mat> autotopism_h(const Bimap& bm, const Mat& f, const Mat& g) {
  const Field& F = *bm.F;
  // h rows solve F M_l G^T = sum_m h_{lm} M_m.
  Mat basis(F, bm.w, bm.a * bm.b);
  for (int l = 0; l < bm.w; ++l)
    for (int i = 0; i < bm.a * bm.b; ++i) basis.at(l, i) = bm.slices[l].a[i];
  Mat images(F, bm.w, bm.a * bm.b);
  Mat gt = mat_transpose(g);
  for (int l = 0; l < bm.w; ++l) {
    Mat img = mat_mul(mat_mul(f, bm.slices[l]), gt);
    for (int i = 0; i < bm.a * bm.b; ++i) images.at(l, i) = img.a[i];
  }
  auto h = solve_left(basis, images);
  if (!h.has_value()) return std::nullopt;
  if (!mat_is_invertible(*h)) return std::nullopt;
  return h;
}

bool is_autotopism_pair(const Bimap& bm, const Mat& f, const Mat& g) {
  if (!mat_is_invertible(f) || !mat_is_invertible(g)) return false;
  return autotopism_h(bm, f, g).has_value();
}

// --- fixtures -------------------------------------------------------------

Bimap fixture_mult(std::int64_t q_p, std::int64_t q_k) {
  const Field& F = Field::get(q_p, q_k);
  return bimap_from_slices(F, 1, 1, {mat_from_ints(F, 1, 1, {1})});
}

Bimap fixture_sympl2(std::int64_t p) {
  const Field& F = Field::get(p, 1);
  return bimap_from_slices(F, 2, 2, {mat_from_ints(F, 2, 2, {0, 1, -1, 0})});
}

Bimap fixture_sym2(std::int64_t p) {
  const Field& F = Field::get(p, 1);
  return bimap_from_slices(F, 2, 2, {mat_identity(F, 2)});
}

Bimap fixture_tensor(int a, int b, std::int64_t p) {
  const Field& F = Field::get(p, 1);
  std::vector<Mat> slices;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      Mat E(F, a, b);
      E.at(i, j) = F.one();
      slices.push_back(std::move(E));
    }
  return bimap_from_slices(F, a, b, std::move(slices));
}

Bimap fixture_heis(std::int64_t p) {
  // Baer bimap of the Heisenberg group of order p^3: single commutator
  // relation [x1, x2] = z.
  return fixture_sympl2(p);
}

Bimap fixture_by_name(const std::string& name) {
  auto dash = name.rfind('-');
  require(dash != std::string::npos, "fixture name without parameter");
  std::string kind = name.substr(0, dash);
  std::int64_t q = std::stoll(name.substr(dash + 1));
  if (kind == "mult") return fixture_mult(q);
  if (kind == "sympl2") return fixture_sympl2(q);
  if (kind == "sym2") return fixture_sym2(q);
  if (kind == "heis") return fixture_heis(q);
  if (kind.rfind("tensor-", 0) == 0) {
    std::string dims = kind.substr(7);
    require(dims.size() == 2, "tensor fixture wants tensor-AB-q");
    return fixture_tensor(dims[0] - '0', dims[1] - '0', q);
  }
  throw Unsupported("unknown fixture: " + name);
}

Bimap random_full_bimap(const Field& F, int a, int b, int w, Rng& rng) {
  require(w <= a * b, "w exceeds ab");
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<Mat> slices;
    for (int l = 0; l < w; ++l) {
      Mat M(F, a, b);
      for (auto& x : M.a) x = static_cast<Fe>(rng.below(F.q()));
      slices.push_back(std::move(M));
    }
    auto full = make_full(F, a, b, slices);
    if (full.bimap.w == w) return full.bimap;
  }
  throw RandomnessExhausted("random full bimap");
}

}  // namespace gfbimap
