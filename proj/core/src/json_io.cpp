#include "gfbimap/json_io.hpp"

namespace gfbimap {

Json field_to_json(const Field& F) {
  Json j;
  j["p"] = F.p();
  j["k"] = F.k();
  j["modulus"] = Json::array();
  for (Fe c : F.modulus()) j["modulus"].push_back(static_cast<int>(c));
  return j;
}

const Field& field_from_json(const Json& j) {
  std::int64_t p = j.at("p").get<std::int64_t>();
  std::int64_t k = j.at("k").get<std::int64_t>();
  if (j.contains("modulus")) {
    std::vector<Fe> m;
    for (const auto& c : j.at("modulus")) m.push_back(c.get<Fe>());
    return Field::get(p, k, Poly(m));
  }
  return Field::get(p, k);
}

Json fe_to_json(const Field& F, Fe x) {
  if (F.k() == 1) return static_cast<int>(x);
  Json arr = Json::array();
  for (Fe c : F.coeffs(x)) arr.push_back(static_cast<int>(c));
  return arr;
}

Fe fe_from_json(const Field& F, const Json& j) {
  if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
  std::vector<Fe> cs;
  for (const auto& c : j) cs.push_back(F.from_int(c.get<std::int64_t>()));
  return F.from_coeffs(cs);
}

Json mat_to_json(const Mat& M) {
  Json rows = Json::array();
  for (int i = 0; i < M.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols; ++j) row.push_back(fe_to_json(*M.F, M.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Field& F, const Json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows ? static_cast<int>(j.at(0).size()) : 0;
  Mat M(F, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) M.at(i, c) = fe_from_json(F, j.at(i).at(c));
  return M;
}

Json bimap_to_json(const Bimap& bm) {
  Json j;
  j["field"] = field_to_json(*bm.F);
  j["dims"] = Json{{"a", bm.a}, {"b", bm.b}, {"w", bm.w}};
  j["slices"] = Json::array();
  for (const Mat& M : bm.slices) j["slices"].push_back(mat_to_json(M));
  return j;
}

Bimap bimap_from_json(const Json& j) {
  const Field& F = field_from_json(j.at("field"));
  int a = j.at("dims").at("a").get<int>();
  int b = j.at("dims").at("b").get<int>();
  std::vector<Mat> slices;
  for (const auto& s : j.at("slices")) slices.push_back(mat_from_json(F, s));
  return bimap_from_slices(F, a, b, std::move(slices));
}

Json algebra_to_json(const AlgebraPair& A, const Involution* star) {
  Json j;
  j["field"] = field_to_json(*A.F);
  j["a"] = A.a;
  j["b"] = A.b;
  j["pairs"] = Json::array();
  for (const auto& p : A.basis)
    j["pairs"].push_back(Json{{"X", mat_to_json(p.X)}, {"Y", mat_to_json(p.Y)}});
  if (star != nullptr) j["star"] = mat_to_json(star->matrix);
  return j;
}

AlgebraPair algebra_from_json(const Json& j) {
  const Field& F = field_from_json(j.at("field"));
  int a = j.at("a").get<int>();
  int b = j.at("b").get<int>();
  std::vector<MatPair> pairs;
  for (const auto& p : j.at("pairs"))
    pairs.push_back({mat_from_json(F, p.at("X")), mat_from_json(F, p.at("Y"))});
  return algebra_from_pairs(F, a, b, pairs);
}

Json star_algebra_to_json(const StarAlgebra& A) {
  Json j;
  j["field"] = field_to_json(*A.F);
  j["n"] = A.n;
  j["basis"] = Json::array();
  for (const Mat& m : A.basis) j["basis"].push_back(mat_to_json(m));
  j["star"] = mat_to_json(A.star);
  return j;
}

StarAlgebra star_algebra_from_json(const Json& j) {
  const Field& F = field_from_json(j.at("field"));
  int n = j.at("n").get<int>();
  std::vector<Mat> basis;
  for (const auto& m : j.at("basis")) basis.push_back(mat_from_json(F, m));
  Mat star = mat_from_json(F, j.at("star"));
  // reconstruct through the coordinate map
  StarAlgebra tmp = star_algebra_from(F, n, basis, [&](const Mat& x) {
    // star given in the coordinates of the listed basis
    Mat rows(F, static_cast<int>(basis.size()), n * n);
    for (size_t i = 0; i < basis.size(); ++i)
      for (int t = 0; t < n * n; ++t) rows.at(static_cast<int>(i), t) = basis[i].a[t];
    auto sol = solve_left(rows, mat_flatten(x));
    require(sol.has_value(), "element outside listed basis span");
    Mat out = mat_zero(F, n, n);
    for (size_t i = 0; i < basis.size(); ++i) {
      Fe c = sol->at(0, static_cast<int>(i));
      if (c == 0) continue;
      for (size_t t = 0; t < basis.size(); ++t) {
        Fe s = star.at(static_cast<int>(i), static_cast<int>(t));
        if (s != 0) out = mat_add(out, mat_scale(basis[t], F.mul(c, s)));
      }
    }
    return out;
  });
  return tmp;
}

Json subspace_to_json(const Subspace& S) {
  Json rows = Json::array();
  for (int i = 0; i < S.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < S.ambient; ++j)
      row.push_back(fe_to_json(*S.F, S.basis.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Subspace subspace_from_json(const Field& F, const Json& j, int ambient) {
  Mat rows(F, static_cast<int>(j.size()), ambient);
  for (size_t i = 0; i < j.size(); ++i)
    for (int c = 0; c < ambient; ++c)
      rows.at(static_cast<int>(i), c) = fe_from_json(F, j.at(i).at(c));
  if (j.empty()) return Subspace::zero(F, ambient);
  return Subspace::from_rows(rows);
}

std::string order_string(const std::optional<BigInt>& order) {
  return order.has_value() ? to_decimal(*order) : std::string();
}

Json genset_to_json(const GeneratorSet& G) {
  Json j;
  j["field"] = field_to_json(*G.F);
  j["a"] = G.a;
  j["b"] = G.b;
  j["generators"] = Json::array();
  for (const auto& t : G.gens)
    j["generators"].push_back(Json{{"F", mat_to_json(t.g.F)},
                                   {"G", mat_to_json(t.g.G)},
                                   {"tag", gen_tag_name(t.tag)}});
  j["order"] = G.order.has_value() ? Json(to_decimal(*G.order)) : Json(nullptr);
  if (G.nsj_order.has_value()) j["nsj_order"] = to_decimal(*G.nsj_order);
  if (!G.warnings.empty()) j["warnings"] = G.warnings;
  return j;
}

Json star_genset_to_json(const StarGeneratorSet& G) {
  Json j;
  j["field"] = field_to_json(*G.F);
  j["n"] = G.n;
  j["generators"] = Json::array();
  for (const auto& t : G.gens)
    j["generators"].push_back(
        Json{{"F", mat_to_json(t.g)}, {"tag", gen_tag_name(t.tag)}});
  j["order"] = G.order.has_value() ? Json(to_decimal(*G.order)) : Json(nullptr);
  if (!G.warnings.empty()) j["warnings"] = G.warnings;
  return j;
}

Json pgroup_to_json(const PGroupData& G) {
  Json j;
  j["p"] = G.p;
  j["n"] = G.n;
  j["m"] = G.m;
  Json c = Json::object();
  for (const auto& [key, vals] : G.c) {
    std::string name =
        "(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
    Json arr = Json::array();
    for (Fe v : vals) arr.push_back(static_cast<int>(v));
    c[name] = std::move(arr);
  }
  j["c"] = std::move(c);
  return j;
}

PGroupData pgroup_from_json(const Json& j) {
  PGroupData G;
  G.p = j.at("p").get<std::int64_t>();
  G.n = j.at("n").get<int>();
  G.m = j.at("m").get<int>();
  const Field& F = Field::get(G.p, 1);
  if (j.contains("c")) {
    for (auto it = j.at("c").begin(); it != j.at("c").end(); ++it) {
      std::string key = it.key();
      require(key.size() >= 5 && key.front() == '(' && key.back() == ')',
              "structure constant key must be (i,j)");
      auto comma = key.find(',');
      int i = std::stoi(key.substr(1, comma - 1));
      int jj = std::stoi(key.substr(comma + 1, key.size() - comma - 2));
      std::vector<Fe> vals;
      for (const auto& v : it.value())
        vals.push_back(F.from_int(v.get<std::int64_t>()));
      G.c[{i, jj}] = std::move(vals);
    }
  }
  return G;
}

Json quadstab_to_json(const StabilizerProblem& P) {
  Json j;
  j["field"] = field_to_json(*P.F);
  j["a"] = P.a;
  j["b"] = P.b;
  Json mats = Json::array();
  for (int i = 0; i < P.W.dim(); ++i)
    mats.push_back(mat_to_json(
        mat_unflatten(*P.F, mat_row(P.W.basis, i).a, P.a, P.b)));
  j["W"] = std::move(mats);
  if (P.hermitian) {
    j["hermitian"] = true;
    j["epsilon"] = std::string(1, P.epsilon);
  }
  return j;
}

StabilizerProblem quadstab_from_json(const Json& j) {
  StabilizerProblem P;
  const Field& F = field_from_json(j.at("field"));
  P.F = &F;
  P.a = j.at("a").get<int>();
  P.b = j.at("b").get<int>();
  Mat rows(F, static_cast<int>(j.at("W").size()), P.a * P.b);
  for (size_t i = 0; i < j.at("W").size(); ++i) {
    Mat Z = mat_from_json(F, j.at("W").at(i));
    require(Z.rows == P.a && Z.cols == P.b, "W matrix shape mismatch");
    for (int t = 0; t < P.a * P.b; ++t) rows.at(static_cast<int>(i), t) = Z.a[t];
  }
  P.W = j.at("W").empty() ? Subspace::zero(F, P.a * P.b)
                          : Subspace::from_rows(rows);
  if (j.contains("hermitian") && j.at("hermitian").get<bool>()) {
    P.hermitian = true;
    std::string eps = j.value("epsilon", "+");
    P.epsilon = eps.empty() ? '+' : eps[0];
  }
  return P;
}

}  // namespace gfbimap
