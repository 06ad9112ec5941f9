#pragma once
// JSON serialization: form specifications (exact round trip), certificates
// with their construction traces, quotient fixtures, and lift reports.
// Field elements travel as strings in the owning field's text encoding.

#include "json.hpp"
#include "pgrass/lifting.hpp"
#include "pgrass/spanning.hpp"

namespace pgrass {

using nlohmann::json;

inline json elts_to_json(const Field& F, const std::vector<Elt>& v) {
  json a = json::array();
  for (const Elt& x : v) a.push_back(F.str(x));
  return a;
}

inline std::vector<Elt> elts_from_json(const Field& F, const json& a) {
  std::vector<Elt> v;
  for (const auto& s : a) v.push_back(F.parse(s.get<std::string>()));
  return v;
}

inline json form_to_json(const Form& f) {
  return json{{"kind", form_kind_name(f.kind)},
              {"field", f.field.spec_string()},
              {"n", f.params.n},
              {"d0", f.params.d0},
              {"d", f.params.d},
              {"m", f.params.m},
              {"dp0", f.params.dp0},
              {"lambda", elts_to_json(f.field, f.lambda)},
              {"mu", elts_to_json(f.field, f.mu)},
              {"kappa", elts_to_json(f.field, f.kappa)}};
}

inline Form form_from_json(const json& j) {
  Field F = Field::parse_spec(j.at("field").get<std::string>());
  std::string kind = j.at("kind").get<std::string>();
  int n = j.at("n").get<int>();
  int d = j.value("d", 0);
  auto opt_elts = [&](const char* key) {
    return j.contains(key) ? elts_from_json(F, j.at(key)) : std::vector<Elt>{};
  };
  if (kind == "alternating" || kind == "symplectic") return build_alternating(F, n, d);
  if (kind == "hermitian")
    return build_hermitian(F, n, j.value("d0", 0), d, opt_elts("kappa"));
  if (kind == "quadratic") {
    if (F.characteristic() == 2)
      return build_quadratic_even(F, n, j.value("m", 0), j.value("dp0", 0), d,
                                  opt_elts("lambda"), opt_elts("mu"), opt_elts("kappa"));
    return build_quadratic_odd(F, n, j.value("d0", 0), d, opt_elts("kappa"));
  }
  throw std::invalid_argument("unknown form kind: " + kind);
}

inline json subspace_to_json(const Subspace& s) {
  json rows = json::array();
  for (int i = 0; i < s.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < s.ambient(); ++j) row.push_back(s.field().str(s.basis().at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json wedge_to_json(const WedgeVector& w) {
  json coords = json::array();
  for (std::int64_t i = 0; i < w.size(); ++i) {
    if (w.field().is_zero(w[i])) continue;
    coords.push_back(json{{"subset", subset_unrank(i, w.grade())}, {"coeff", w.field().str(w[i])}});
  }
  return json{{"grade", w.grade()}, {"ambient", w.ambient()}, {"coords", coords}};
}

inline json trace_to_json(const TraceNode& t) {
  json j{{"label", t.label}};
  if (!t.children.empty()) {
    json c = json::array();
    for (const TraceNode& ch : t.children) c.push_back(trace_to_json(ch));
    j["children"] = c;
  }
  return j;
}

inline json certificate_to_json(const Certificate& c) {
  json terms = json::array();
  for (const CertTerm& t : c.terms)
    terms.push_back(json{{"coeff", c.form.field.str(t.coeff)}, {"basis", subspace_to_json(t.generator)}});
  return json{{"form", form_to_json(c.form)},
              {"k", c.k},
              {"target", wedge_to_json(c.target)},
              {"terms", terms},
              {"trace", trace_to_json(c.trace)}};
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.field().str(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// One vector lift through a quotient pair: the chosen representative, its
// unique lift, and the round-trip check phi(lift) = representative.
inline json lift_report_json(const QuotientPair& pair, int point, const Vec& v) {
  const Field& F = pair.top.field;
  Vec lifted = lift_vector(pair, point, v);
  json rep = json::array(), lif = json::array();
  for (const Elt& x : v) rep.push_back(F.str(x));
  for (const Elt& x : lifted) lif.push_back(F.str(x));
  return json{{"point", point},
              {"representative", rep},
              {"lifting", lif},
              {"check", mul(pair.phi, lifted) == v}};
}

inline json quotient_pair_to_json(const QuotientPair& p) {
  json images = json::object();
  for (const auto& [id, s] : p.top.image) images[std::to_string(id)] = subspace_to_json(s);
  json bimages = json::object();
  for (const auto& [id, s] : p.bottom.image) bimages[std::to_string(id)] = subspace_to_json(s);
  return json{{"field", p.top.field.spec_string()},
              {"points", p.top.points},
              {"lines", p.top.lines},
              {"top_dim", p.top.codomain_dim},
              {"bottom_dim", p.bottom.codomain_dim},
              {"top_images", images},
              {"bottom_images", bimages},
              {"phi", matrix_to_json(p.phi)}};
}

}  // namespace pgrass
