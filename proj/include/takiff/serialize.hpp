#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "takiff/nc.hpp"

namespace takiff {

using Json = nlohmann::ordered_json;

// ---------- algebra files ----------
//
// {
//   "label": "A2", "dim": 8, "basis_names": [...],
//   "structure_constants": [[i, j, k, "p/q"], ...],   (sparse, i*dim+j rows)
//   "gram": [["p/q", ...], ...],                      (dense)
//   "dual_coxeter": "3" | null,
//   "rep": { "N": 3, "matrices": [[i, row, col, "p/q"], ...] }
// }
//
// Ingest validates the schema and reruns the full structural checks, so a
// corrupted file fails with a named witness instead of poisoning results.

inline Json algebra_to_json(const LieAlgebraData& alg, const Representation& rep) {
  Json j;
  j["label"] = alg.label;
  j["dim"] = alg.dim;
  j["basis_names"] = alg.basis_names;
  Json sc = Json::array();
  for (int i = 0; i < alg.dim; ++i)
    for (int k = 0; k < alg.dim; ++k)
      for (const auto& [t, c] : alg.bracket(i, k)) sc.push_back(Json::array({i, k, t, rat_str(c)}));
  j["structure_constants"] = std::move(sc);
  Json gram = Json::array();
  for (int i = 0; i < alg.dim; ++i) {
    Json row = Json::array();
    for (int k = 0; k < alg.dim; ++k) row.push_back(rat_str(alg.gram.at(i, k)));
    gram.push_back(std::move(row));
  }
  j["gram"] = std::move(gram);
  if (alg.is_reductive)
    j["dual_coxeter"] = nullptr;
  else
    j["dual_coxeter"] = rat_str(alg.dual_coxeter);
  Json rj;
  rj["N"] = rep.N;
  Json mats = Json::array();
  for (int i = 0; i < alg.dim; ++i)
    for (int r = 0; r < rep.N; ++r)
      for (int c = 0; c < rep.N; ++c)
        if (rep.matrices[i].at(r, c) != 0)
          mats.push_back(Json::array({i, r, c, rat_str(rep.matrices[i].at(r, c))}));
  rj["matrices"] = std::move(mats);
  j["rep"] = std::move(rj);
  return j;
}

inline std::pair<LieAlgebraData, Representation> algebra_from_json(const Json& j) {
  auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw std::invalid_argument(std::string("algebra file misses '") + key + "'");
    return j.at(key);
  };

  LieAlgebraData alg;
  alg.label = need("label").get<std::string>();
  const auto [series, n] = parse_label(alg.label);
  alg.series = series;
  alg.n = n;
  alg.is_reductive = (series == Series::GL);

  alg.dim = need("dim").get<int>();
  if (alg.dim <= 0) throw std::invalid_argument("algebra file has nonpositive dim");
  alg.basis_names = need("basis_names").get<std::vector<std::string>>();
  if (static_cast<int>(alg.basis_names.size()) != alg.dim)
    throw std::invalid_argument("basis_names size differs from dim");

  alg.brackets.assign(static_cast<size_t>(alg.dim) * alg.dim, {});
  for (const Json& row : need("structure_constants")) {
    if (!row.is_array() || row.size() != 4)
      throw std::invalid_argument("structure constant rows must be [i, j, k, \"p/q\"]");
    const int i = row[0].get<int>(), jj = row[1].get<int>(), k = row[2].get<int>();
    if (i < 0 || i >= alg.dim || jj < 0 || jj >= alg.dim || k < 0 || k >= alg.dim)
      throw std::invalid_argument("structure constant index out of range");
    alg.brackets[static_cast<size_t>(i) * alg.dim + jj].emplace_back(
        k, rat_parse(row[3].get<std::string>()));
  }

  const Json& gram = need("gram");
  if (!gram.is_array() || static_cast<int>(gram.size()) != alg.dim)
    throw std::invalid_argument("gram must be a dim x dim array");
  alg.gram = RatMatrix(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i) {
    const Json& row = gram.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != alg.dim)
      throw std::invalid_argument("gram must be a dim x dim array");
    for (int c = 0; c < alg.dim; ++c) alg.gram.at(i, c) = rat_parse(row.at(c).get<std::string>());
  }
  try {
    alg.gram_inv = alg.gram.inverse();
  } catch (const std::domain_error&) {
    throw std::invalid_argument("gram matrix in algebra file is degenerate");
  }

  const Json& dc = need("dual_coxeter");
  if (alg.is_reductive) {
    if (!dc.is_null())
      throw std::invalid_argument("dual_coxeter must be null for reductive algebras");
    alg.dual_coxeter = 0;
  } else {
    if (dc.is_null()) throw std::invalid_argument("dual_coxeter missing for a simple algebra");
    alg.dual_coxeter = rat_parse(dc.get<std::string>());
  }

  const Json& rj = need("rep");
  Representation rep;
  rep.N = rj.at("N").get<int>();
  if (rep.N <= 0) throw std::invalid_argument("rep.N must be positive");
  rep.matrices.assign(alg.dim, RatMatrix(rep.N, rep.N));
  for (const Json& row : rj.at("matrices")) {
    if (!row.is_array() || row.size() != 4)
      throw std::invalid_argument("rep matrix rows must be [i, row, col, \"p/q\"]");
    const int i = row[0].get<int>(), r = row[1].get<int>(), c = row[2].get<int>();
    if (i < 0 || i >= alg.dim || r < 0 || r >= rep.N || c < 0 || c >= rep.N)
      throw std::invalid_argument("rep matrix index out of range");
    rep.matrices[i].at(r, c) = rat_parse(row[3].get<std::string>());
  }

  check_algebra(alg, rep);  // full revalidation with witnesses
  return {std::move(alg), std::move(rep)};
}

// ---------- enveloping-algebra elements ----------
//
// { "terms": [ { "monomial": [[basis, deg, mode|null], ...], "coeff": "p/q" }, ... ] }
// Terms and monomials are emitted in canonical (graded-lexicographic) order.

inline Json ncpoly_to_json(const NCPoly& p, bool affine) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json mono = Json::array();
    for (GenKey g : m) {
      Json letter = Json::array({gen_basis(g), gen_deg(g)});
      if (affine)
        letter.push_back(gen_mode(g));
      else
        letter.push_back(nullptr);
      mono.push_back(std::move(letter));
    }
    terms.push_back(Json{{"monomial", std::move(mono)}, {"coeff", rat_str(c)}});
  }
  return Json{{"terms", std::move(terms)}};
}

inline NCPoly ncpoly_from_json(const Json& j, bool affine) {
  NCPoly p;
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw std::invalid_argument("element file needs a 'terms' array");
  for (const Json& t : j.at("terms")) {
    Mono m;
    for (const Json& letter : t.at("monomial")) {
      if (!letter.is_array() || letter.size() != 3)
        throw std::invalid_argument("monomial letters must be [basis, deg, mode|null]");
      const int basis = letter[0].get<int>(), deg = letter[1].get<int>();
      int mode = 0;
      if (letter[2].is_null()) {
        if (affine) throw std::invalid_argument("affine element with null mode");
      } else {
        mode = letter[2].get<int>();
        if (!affine && mode != 0)
          throw std::invalid_argument("finite element with nonzero mode");
      }
      m.push_back(gen_key(basis, deg, mode));
    }
    if (!mono_is_sorted(m))
      throw std::invalid_argument("element monomials must be normally ordered");
    p.add_term(m, rat_parse(t.at("coeff").get<std::string>()));
  }
  return p;
}

// ---------- files ----------

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

}  // namespace takiff
