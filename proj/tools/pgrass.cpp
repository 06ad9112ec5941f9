// Batch verification campaigns and single-instance commands over polar
// Grassmannian embeddings. Reports are JSON Lines by default (one row per
// instance, deterministic given --jobs 1), CSV on request.
//
// Exit codes: 0 all checks pass, 1 any dimension-check mismatch, 2 invalid
// input.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pgrass/io.hpp"

using namespace pgrass;
using nlohmann::json;

namespace {

struct Options {
  std::string form;
  std::string field = "2^1";
  std::string params;
  std::vector<int> ks;
  std::string campaign;
  std::string out;
  std::string format = "jsonl";
  int jobs = 1;
  bool fast = false;
};

std::map<std::string, int> parse_params(const std::string& text) {
  std::map<std::string, int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad --params entry: " + tok);
    out[tok.substr(0, eq)] = std::stoi(tok.substr(eq + 1));
  }
  return out;
}

Form build_from_cli(const std::string& kind, const std::string& field_spec,
                    const std::map<std::string, int>& p) {
  Field F = Field::parse_spec(field_spec);
  auto get = [&](const char* key, int dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
  };
  int n = get("n", 2), d = get("d", 0);
  if (kind == "symplectic" || kind == "alternating") return build_alternating(F, n, d);
  if (kind == "hermitian") return build_hermitian(F, n, get("d0", 0), d);
  if (kind == "quadratic") {
    if (F.characteristic() == 2)
      return build_quadratic_even(F, n, get("m", 0), get("dp0", 0), d);
    return build_quadratic_odd(F, n, get("d0", 0), d);
  }
  throw std::invalid_argument("unknown form kind: " + kind);
}

std::string cli_kind(const Form& f) {
  return f.kind == FormKind::Alternating ? "symplectic" : form_kind_name(f.kind);
}

json instance_header(const Form& f) {
  return json{{"form", cli_kind(f)}, {"field", f.field.spec_string()}, {"n", f.params.n},
              {"d0", f.params.d0},   {"d", f.params.d},              {"N", f.params.N},
              {"m", f.params.m},     {"dp0", f.params.dp0}};
}

json run_dims(const Form& f, int k, bool fast) {
  json row = instance_header(f);
  std::int64_t predicted = predicted_dim(f, k);
  EmbeddingSpan es = embedding_span(f, k, fast, fast ? predicted : -1);
  row["check"] = "dims";
  row["k"] = k;
  row["points"] = es.points;
  row["computed_dim"] = es.dim;
  row["predicted_dim"] = predicted;
  row["match"] = es.dim == predicted;
  row["regime"] = k <= f.params.n ? "k<=n" : "k>n";
  row["proper_subspace"] = es.dim < binom(f.params.N, k);
  row["pass"] = es.dim == predicted;
  return row;
}

json run_decompose(const Form& f, int k) {
  json row = instance_header(f);
  DecompositionReport rep = decomposition_verify(f, k);
  row["check"] = "decompose";
  row["k"] = k;
  row["dim_full"] = rep.dim_full;
  row["dim_sum"] = rep.dim_sum;
  row["subspace_equal"] = rep.subspace_equal;
  row["dim_identity"] = rep.dim_identity;
  json terms = json::array();
  for (const auto& t : rep.terms)
    terms.push_back(json{{"i", t.i}, {"reduced_dim", t.reduced_dim}, {"radical_choose", t.radical_choose}});
  row["terms"] = terms;
  row["pass"] = rep.ok();
  return row;
}

json run_genset(const Form& f, int k) {
  json row = instance_header(f);
  GensetReport rep = verify_genset(f, k);
  row["check"] = "genset";
  row["k"] = k;
  row["cardinality"] = rep.cardinality;
  row["span_dim"] = rep.span_dim;
  row["embedding_dim"] = rep.embedding_dim;
  row["spans"] = rep.spans;
  row["predicted_dim"] = rep.predicted;
  row["cardinality_equals_dim"] = rep.cardinality_equals_dim;
  row["pass"] = rep.spans;
  return row;
}

json run_span_compare(const Form& f, int k) {
  json row = instance_header(f);
  SpanCompareReport rep = span_compare(f, k);
  row["check"] = "span-compare";
  row["k"] = k;
  row["dim_quadric"] = rep.dim_quadric;
  row["dim_symplectic"] = rep.dim_symplectic;
  row["relation"] = rep.relation == SpanRelation::Equal ? "equal" : "strict-subset";
  row["pass"] = rep.relation == SpanRelation::Equal;
  return row;
}

json run_extend(const Form& f) {
  json row = instance_header(f);
  Extension ext = f.even_char() ? extend_normalize_even(f) : extend_normalize_odd(f);
  row["check"] = "extend";
  row["field_hat"] = ext.Fhat.spec_string();
  row["degree"] = ext.degree;
  row["new_basis"] = matrix_to_json(ext.new_basis);
  int dpp = std::max(0, (f.even_char() ? f.params.dp0 : f.params.d0) - 1);
  std::int64_t bound = f.even_char() ? 2 * f.params.m + 2 * dpp : 2 * dpp;
  row["degree_bound"] = bound;
  bool shape = true;
  int pairs = f.params.n + f.params.m + (f.even_char() ? 0 : (f.params.d0 == 2 ? 1 : 0));
  const Field& Fh = ext.Fhat;
  for (int i = 0; i < pairs; ++i) {
    Vec u = ext.new_basis.row(2 * i), v = ext.new_basis.row(2 * i + 1);
    if (!Fh.is_zero(evaluate(ext.fhat, u)) || !Fh.is_zero(evaluate(ext.fhat, v)) ||
        !(pair_value(ext.fhat, u, v) == Fh.one()))
      shape = false;
  }
  row["shape_ok"] = shape;
  row["pass"] = shape && ext.degree <= std::max<std::int64_t>(1, bound);
  return row;
}

GenDescriptor parse_descriptor(const std::string& text) {
  GenDescriptor g;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    size_t eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad descriptor part: " + part);
    std::string key = part.substr(0, eq);
    std::stringstream body(part.substr(eq + 1));
    std::string tok;
    while (std::getline(body, tok, ',')) {
      if (tok.empty()) continue;
      if (key == "C") {
        size_t dash = tok.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("C pairs look like i-j");
        g.C.push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))});
      } else if (key == "A") {
        g.A.push_back(std::stoi(tok));
      } else if (key == "B") {
        g.B.push_back(std::stoi(tok));
      } else if (key == "D") {
        g.D.push_back(std::stoi(tok));
      } else {
        throw std::invalid_argument("descriptor keys are A, B, C, D");
      }
    }
  }
  return g;
}

std::vector<int> parse_subset(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

// The verification grid: every builder family at desk scale.
std::vector<Form> default_grid() {
  std::vector<Form> grid;
  Field F2 = Field::gf(2), F3 = Field::gf(3), F4 = Field::gf(2, 2);
  for (auto [n, d0, d] : std::vector<std::array<int, 3>>{{2, 0, 0}, {2, 1, 0}, {2, 0, 1}, {3, 0, 0}})
    grid.push_back(build_hermitian(F4, n, d0, d));
  for (const Field& F : {F2, F3})
    for (auto [n, d] : std::vector<std::array<int, 2>>{{2, 0}, {3, 0}, {2, 1}, {2, 2}})
      grid.push_back(build_alternating(F, n, d));
  for (auto [n, d0, d] : std::vector<std::array<int, 3>>{{2, 0, 0}, {2, 1, 0}, {2, 2, 0}, {2, 1, 1}})
    grid.push_back(build_quadratic_odd(F3, n, d0, d));
  for (const Field& F : {F2, F4})
    for (auto [n, m, dp0, d] :
         std::vector<std::array<int, 4>>{{2, 0, 0, 0}, {2, 1, 0, 0}, {2, 0, 1, 0}, {2, 0, 1, 1}, {3, 0, 0, 0}})
      grid.push_back(build_quadratic_even(F, n, m, dp0, d));
  return grid;
}

struct Task {
  Form form;
  int k;
  std::string check;
};

json run_task(const Task& t, bool fast) {
  try {
    if (t.check == "dims") return run_dims(t.form, t.k, fast);
    if (t.check == "decompose") return run_decompose(t.form, t.k);
    if (t.check == "genset") return run_genset(t.form, t.k);
    if (t.check == "span-compare") return run_span_compare(t.form, t.k);
    if (t.check == "extend") return run_extend(t.form);
    throw std::invalid_argument("unknown check: " + t.check);
  } catch (const std::exception& e) {
    json row = instance_header(t.form);
    row["check"] = t.check;
    row["k"] = t.k;
    row["error"] = e.what();
    row["pass"] = false;
    return row;
  }
}

std::vector<json> run_tasks(const std::vector<Task>& tasks, int jobs, bool fast) {
  std::vector<json> rows(tasks.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) rows[i] = run_task(tasks[i], fast);
    return rows;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        rows[i] = run_task(tasks[i], fast);
      }
    });
  for (auto& th : pool) th.join();
  return rows;
}

void emit(const std::vector<json>& rows, const Options& opt) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) throw std::invalid_argument("cannot open output file " + opt.out);
    os = &file;
  }
  if (opt.format == "jsonl") {
    for (const json& r : rows) *os << r.dump() << "\n";
    return;
  }
  if (opt.format != "csv") throw std::invalid_argument("format must be jsonl or csv");
  auto cell = [](std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  };
  std::vector<std::string> cols;
  std::set<std::string> seen;
  for (const json& r : rows)
    for (auto it = r.begin(); it != r.end(); ++it)
      if (seen.insert(it.key()).second) cols.push_back(it.key());
  for (size_t c = 0; c < cols.size(); ++c) *os << (c ? "," : "") << cell(cols[c]);
  *os << "\n";
  for (const json& r : rows) {
    for (size_t c = 0; c < cols.size(); ++c) {
      *os << (c ? "," : "");
      if (r.contains(cols[c])) {
        const json& v = r.at(cols[c]);
        *os << cell(v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
    *os << "\n";
  }
}

int exit_code(const std::vector<json>& rows) {
  for (const json& r : rows)
    if (r.contains("error")) return 2;
  for (const json& r : rows)
    if (r.contains("pass") && !r.at("pass").get<bool>()) return 1;
  return 0;
}

std::vector<int> k_range(const Form& f, const std::vector<int>& ks, bool include_defect_range) {
  if (!ks.empty()) return ks;
  std::vector<int> all;
  int top = include_defect_range ? f.params.witt_index() : f.params.n;
  for (int k = 1; k <= top; ++k) all.push_back(k);
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Grassmann embeddings of polar Grassmannians"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--form", opt.form, "hermitian|symplectic|quadratic");
    cmd->add_option("--field", opt.field, "field spec: p^e or Q");
    cmd->add_option("--params", opt.params, "comma list n=..,d0=..,d=..,m=..,dp0=..");
    cmd->add_option("--k", opt.ks, "grade(s); defaults to the full range");
    cmd->add_option("--jobs", opt.jobs, "worker threads");
    cmd->add_flag("--fast", opt.fast, "stop streaming once the predicted dimension is reached");
    cmd->add_option("--out", opt.out, "write the report here instead of stdout");
    cmd->add_option("--format", opt.format, "jsonl|csv");
  };

  CLI::App* dims = app.add_subcommand("verify-dims", "computed vs predicted span dimensions");
  add_common(dims);
  dims->add_option("--campaign", opt.campaign, "JSON campaign file");

  CLI::App* genset = app.add_subcommand("genset", "symplectic generating-set check");
  add_common(genset);

  CLI::App* decompose = app.add_subcommand("decompose", "radical decomposition check");
  add_common(decompose);

  CLI::App* spancmp = app.add_subcommand("span-compare", "char-2 quadric vs symplectic span");
  add_common(spancmp);

  CLI::App* extend = app.add_subcommand("extend", "field-extension normalization");
  add_common(extend);

  std::string target_text, desc_text;
  CLI::App* certify = app.add_subcommand("certify", "emit a spanning certificate");
  add_common(certify);
  certify->add_option("--target", target_text, "coordinate subset, e.g. 1,5");
  certify->add_option("--desc", desc_text, "descriptor A=..;B=..;C=i-j,..;D=.. (char-2 quadratic)");

  CLI::App* points = app.add_subcommand("points", "stream the enumerated points");
  add_common(points);

  std::string fixture = "nucleus";
  int fixture_n = 2;
  std::string subfield_spec;
  CLI::App* lift = app.add_subcommand("lift", "quotient fixtures and subfield lifting");
  lift->add_option("--fixture", fixture, "fixture name (nucleus)");
  lift->add_option("--n", fixture_n, "fixture rank");
  lift->add_option("--field", opt.field, "field spec p^e (char 2)");
  lift->add_option("--subfield", subfield_spec, "subfield spec; lifts the rational subgeometry");
  lift->add_option("--out", opt.out, "write the report here instead of stdout");
  lift->add_option("--format", opt.format, "jsonl|csv");

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<Task> tasks;
    std::vector<json> rows;

    if (dims->parsed()) {
      if (!opt.campaign.empty()) {
        std::ifstream in(opt.campaign);
        if (!in) throw std::invalid_argument("cannot read campaign file " + opt.campaign);
        json doc = json::parse(in);
        for (const json& inst : doc) {
          Form f = form_from_json(inst.at("form"));
          std::vector<int> ks;
          if (inst.contains("k")) {
            if (inst.at("k").is_array())
              for (const auto& kk : inst.at("k")) ks.push_back(kk.get<int>());
            else
              ks.push_back(inst.at("k").get<int>());
          }
          std::vector<std::string> checks = {"dims"};
          if (inst.contains("checks")) checks = inst.at("checks").get<std::vector<std::string>>();
          for (const std::string& c : checks) {
            if (c == "extend") {
              tasks.push_back({f, 0, c});
              continue;
            }
            bool full_range = c == "dims" || c == "decompose";
            for (int k : k_range(f, ks, full_range)) tasks.push_back({f, k, c});
          }
        }
      } else if (!opt.form.empty()) {
        Form f = build_from_cli(opt.form, opt.field, parse_params(opt.params));
        for (int k : k_range(f, opt.ks, true)) tasks.push_back({f, k, "dims"});
      } else {
        for (const Form& f : default_grid())
          for (int k : k_range(f, opt.ks, true)) tasks.push_back({f, k, "dims"});
      }
      rows = run_tasks(tasks, opt.jobs, opt.fast);
      emit(rows, opt);
      return exit_code(rows);
    }

    if (genset->parsed() || decompose->parsed() || spancmp->parsed() || extend->parsed()) {
      std::string check = genset->parsed() ? "genset"
                          : decompose->parsed() ? "decompose"
                          : spancmp->parsed() ? "span-compare"
                                              : "extend";
      if (opt.form.empty()) throw std::invalid_argument("--form is required");
      Form f = build_from_cli(opt.form, opt.field, parse_params(opt.params));
      if (check == "extend") {
        tasks.push_back({f, 0, check});
      } else {
        bool full_range = check == "decompose";
        std::vector<int> ks = opt.ks;
        if (ks.empty() && (check == "genset" || check == "span-compare"))
          ks = k_range(f, {}, false);
        for (int k : k_range(f, ks, full_range)) tasks.push_back({f, k, check});
      }
      rows = run_tasks(tasks, opt.jobs, opt.fast);
      emit(rows, opt);
      return exit_code(rows);
    }

    if (certify->parsed()) {
      if (opt.form.empty()) throw std::invalid_argument("--form is required");
      Form f = build_from_cli(opt.form, opt.field, parse_params(opt.params));
      int k = opt.ks.empty() ? f.params.n : opt.ks.front();
      Certificate cert;
      if (!desc_text.empty()) {
        cert = certificate_quadratic_even(f, k, parse_descriptor(desc_text));
      } else {
        std::vector<int> J = parse_subset(target_text);
        if (f.kind == FormKind::Hermitian) cert = certificate_hermitian(f, k, J);
        else if (f.kind == FormKind::Quadratic && !f.even_char())
          cert = certificate_quadratic_odd(f, k, J);
        else
          throw std::invalid_argument("char-2 quadratic certificates take --desc");
      }
      VerifyResult v = verify_certificate(cert);
      json doc = certificate_to_json(cert);
      doc["verified"] = v.ok;
      if (!v.ok) doc["failure"] = v.message;
      std::vector<json> one = {doc};
      emit(one, opt);
      return v.ok ? 0 : 1;
    }

    if (points->parsed()) {
      if (opt.form.empty()) throw std::invalid_argument("--form is required");
      Form f = build_from_cli(opt.form, opt.field, parse_params(opt.params));
      int k = opt.ks.empty() ? 1 : opt.ks.front();
      if (opt.out.empty()) {
        stream_points(f, k, std::cout);
      } else {
        std::ofstream file(opt.out);
        stream_points(f, k, file);
      }
      return 0;
    }

    if (lift->parsed()) {
      if (fixture != "nucleus") throw std::invalid_argument("unknown fixture: " + fixture);
      Field F = Field::parse_spec(opt.field);
      QuotientPair pair = nucleus_fixture(fixture_n, F);
      ValidationReport rep = validate_quotient(pair);
      json doc{{"fixture", fixture},
               {"field", F.spec_string()},
               {"n", fixture_n},
               {"points", pair.top.points.size()},
               {"valid", rep.ok}};
      if (!rep.ok) doc["violations"] = rep.violations;
      bool pass = rep.ok;
      if (!subfield_spec.empty()) {
        Field F0 = Field::parse_spec(subfield_spec);
        std::vector<int> pts0;
        std::set<int> in0;
        for (int p : pair.bottom.points) {
          bool rational = true;
          for (const Elt& x : pair.bottom.rep(p))
            if (!pgrass::detail::in_subfield(F, F0.e, x)) rational = false;
          if (rational) {
            pts0.push_back(p);
            in0.insert(p);
          }
        }
        std::int64_t q0 = 1;
        for (int i = 0; i < F0.e; ++i) q0 *= F.p;
        std::vector<std::vector<int>> lines0;
        for (const auto& line : pair.top.lines) {
          std::vector<int> restricted;
          for (int p : line)
            if (in0.count(p)) restricted.push_back(p);
          if ((std::int64_t)restricted.size() == q0 + 1) lines0.push_back(restricted);
        }
        LiftedEmbedding lifted = lift_embedding(pair, F0, pts0, lines0);
        doc["subfield"] = F0.spec_string();
        doc["subgeometry_points"] = pts0.size();
        doc["subgeometry_lines"] = lines0.size();
        doc["lifted_dim"] = lifted.dim_over_subfield;
        doc["degree"] = lifted.g;
        doc["lines_ok"] = lifted.lines_ok;
        json reports = json::array();
        for (int p : pts0) reports.push_back(lift_report_json(pair, p, pair.bottom.rep(p)));
        doc["liftings"] = reports;
        pass = pass && lifted.lines_ok;
      }
      doc["pass"] = pass;
      std::vector<json> one = {doc};
      emit(one, opt);
      return pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
