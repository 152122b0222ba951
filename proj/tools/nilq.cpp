#include <filesystem>
#include <iostream>

#include <gmp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilq/freeness.hpp"
#include "nilq/goldens.hpp"
#include "nilq/reduction.hpp"
#include "nilq/three_step.hpp"
#include "nilq/witness.hpp"

using namespace nilq;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kInput = 1, kNegative = 2, kUndecided = 3 };

struct Report {
  std::string command;
  Json inputs = Json::object();
  std::string verdict;
  Json data = Json::object();
  Json provenance = Json::array();
  int exit_code = kOk;
};

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::string input;
  std::string v = "v", h = "h";
  unsigned budget = 0;
  unsigned degree = kSliceDegreeCeiling;
  unsigned d_x0 = 1;
  unsigned ansatz = kDefaultAnsatzDegree;
  std::size_t nodes = kDefaultNodeBudget;
  std::string delta;
};

struct Source {
  LieDocument doc;
  std::optional<CatalogEntry> entry;
  std::string origin;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Catalog entry by exact name or unique prefix ("yoshino" for yoshino7).
std::optional<CatalogEntry> lookup(const std::string& name) {
  if (auto e = catalog_entry(name)) return e;
  std::optional<std::string> hit;
  for (const auto& n : catalog_names())
    if (n.rfind(name, 0) == 0) {
      if (hit) return std::nullopt;
      hit = n;
    }
  return hit ? catalog_entry(*hit) : std::nullopt;
}

Source load(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return {parse_lie(read_file(arg)), std::nullopt, "file:" + arg};
  if (auto e = lookup(arg)) {
    std::string origin = "catalog:" + e->name;
    LieDocument doc = e->doc;
    return {std::move(doc), std::move(e), origin};
  }
  throw InputError("no such file or catalog entry: '" + arg + "'");
}

struct FamilySource {
  std::vector<Derivation> family;
  std::vector<std::string> labels;
  std::string origin;
};

FamilySource induced_family(const Source& src, const Options& o) {
  const auto& a = src.doc.algebra;
  auto act = induced_action(src.doc, src.doc.subspace(o.v), src.doc.subspace(o.h));
  FamilySource out{act.family, {}, src.origin + " induced by " + o.v + " on G/" + o.h};
  for (const auto& g : act.generators) out.labels.push_back(a.format(g));
  return out;
}

/// A `.der` file, `<catalog>-action`, `<catalog>-quotient`, or a `.lie` file / catalog name.
FamilySource load_family(const std::string& arg, const Options& o) {
  if (std::filesystem::is_regular_file(arg) && ends_with(arg, ".der")) {
    auto f = parse_derivation_file(read_file(arg));
    FamilySource out{{}, {}, "file:" + arg};
    for (auto& [name, d] : f.derivations) {
      out.labels.push_back(name);
      out.family.push_back(std::move(d));
    }
    if (out.family.empty()) throw InputError(arg + ": no derivations");
    return out;
  }
  for (const std::string suffix : {"-action", "-quotient"}) {
    if (!ends_with(arg, suffix) || std::filesystem::is_regular_file(arg)) continue;
    auto fam = induced_family(load(arg.substr(0, arg.size() - suffix.size())), o);
    if (suffix == "-quotient") {
      fam.family = {quotient_by_unit(fam.family)};
      fam.labels = {"quotient"};
      fam.origin += ", quotient by the generator with a unit image";
    }
    return fam;
  }
  return induced_family(load(arg), o);
}

Json basis_json(const LieAlgebra& a, const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(a.format(v));
  return out;
}

Json laurent_json(const std::vector<LaurentSeries>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(format_laurent(x));
  return out;
}

void require_pair(const Source& src, const Options& o, Report& r) {
  if (!src.doc.has_subspace(o.v)) throw InputError("no subspace named '" + o.v + "'");
  if (!src.doc.has_subspace(o.h)) throw InputError("no subspace named '" + o.h + "'");
  r.inputs["v"] = o.v;
  r.inputs["h"] = o.h;
}

void cmd_validate(const Options& o, Report& r) {
  Source src = load(o.input);
  const auto& a = src.doc.algebra;
  r.provenance.push_back(src.origin);
  r.data["name"] = a.name();
  r.data["dim"] = a.dim();
  r.data["basis"] = a.labels();
  std::size_t brackets = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (!is_zero(a.bracket(a.basis_vector(i), a.basis_vector(j)))) ++brackets;
  r.data["nonzero_brackets"] = brackets;
  r.data["jacobi"] = "ok";
  Json subs = Json::object();
  for (const auto& [name, s] : src.doc.subspaces) subs[name] = basis_json(a, s.basis());
  r.data["subspaces"] = subs;
  r.data["presentation"] = a.presentation() ? Json(a.presentation()->size) : Json(nullptr);
  r.verdict = "Valid";
}

void cmd_series(const Options& o, Report& r) {
  Source src = load(o.input);
  const auto& a = src.doc.algebra;
  r.provenance.push_back(src.origin);
  Json dims = Json::array(), terms = Json::array();
  for (const auto& t : a.central_series()) {
    dims.push_back(t.dim());
    terms.push_back(basis_json(a, t.basis()));
  }
  r.data["central_series"] = dims;
  r.data["nilpotency_step"] = a.nilpotency_step();
  r.data["terms"] = terms;
  r.data["center"] = basis_json(a, a.center().basis());
  r.verdict = "Computed";
}

void cmd_freeness(const Options& o, Report& r) {
  Source src = load(o.input);
  require_pair(src, o, r);
  const auto& a = src.doc.algebra;
  r.inputs["budget"] = o.budget;
  r.provenance.push_back(src.origin);
  auto c = freeness_check(a, src.doc.subspace(o.v), src.doc.subspace(o.h), o.budget, o.seed);
  r.verdict = to_string(c.verdict);
  std::vector<std::string> t;
  for (std::size_t i = 0; i < a.dim(); ++i) t.push_back("t" + std::to_string(i + 1));
  r.data["reason"] = c.reason;
  r.data["minor_count"] = c.minor_count;
  r.data["max_degree_searched"] = c.max_degree_searched;
  if (c.verdict == FreenessVerdict::Certified) {
    r.data["degree"] = c.degree;
    Json minors = Json::array(), mult = Json::array();
    for (const auto& m : c.minors) minors.push_back(m.to_string(t));
    for (const auto& m : c.multipliers) mult.push_back(m.to_string(t));
    r.data["minors"] = minors;
    r.data["multipliers"] = mult;
    r.data["variables"] = t;
  }
  if (c.witness) {
    r.data["witness_g"] = a.format(c.witness->log);
    r.data["witness_x"] = a.format(c.witness_x);
  }
  r.data["samples_tried"] = c.samples_tried;
  r.data["clean_samples"] = c.clean_samples;
  if (c.verdict == FreenessVerdict::Refuted) r.exit_code = kNegative;
  if (c.verdict == FreenessVerdict::Unknown) r.exit_code = kUndecided;
}

Json action_json(const FamilySource& f) {
  Json out = Json::array();
  for (std::size_t i = 0; i < f.family.size(); ++i)
    out.push_back(Json{{"generator", f.labels[i]}, {"derivation", format_derivation(f.family[i])}});
  return out;
}

void cmd_induced(const Options& o, Report& r) {
  Source src = load(o.input);
  require_pair(src, o, r);
  auto act = induced_action(src.doc, src.doc.subspace(o.v), src.doc.subspace(o.h));
  FamilySource f = induced_family(src, o);
  r.provenance.push_back(f.origin);
  r.data["chart"] = act.chart.kind == ChartKind::Log ? "log" : "product";
  r.data["variables"] = act.chart.ring.names;
  r.data["weights"] = act.chart.ring.weights;
  r.data["derivations"] = action_json(f);
  r.data["commuting"] = pairwise_commuting(f.family);
  bool triangular = true;
  for (const auto& d : f.family) triangular = triangular && is_triangular(d);
  r.data["triangular"] = triangular;
  r.data["action_degree"] = action_degree(f.family);
  r.verdict = "Computed";
}

void cmd_slice(const Options& o, Report& r) {
  Source src = load(o.input);
  require_pair(src, o, r);
  r.inputs["degree"] = o.degree;
  auto act = induced_action(src.doc, src.doc.subspace(o.v), src.doc.subspace(o.h));
  r.provenance.push_back(src.origin);
  r.data["variables"] = act.chart.ring.names;
  for (unsigned b = 1; b <= o.degree; ++b)
    if (auto fs = slice_function_search(act.family, b)) {
      Json eq = Json::array();
      for (const auto& f : *fs) eq.push_back(f.to_string(act.chart.ring.names));
      r.data["degree"] = b;
      r.data["slice_functions"] = eq;
      r.data["verified"] = verify_slice_functions(act.family, *fs, 50, o.seed);
      r.verdict = "Found";
      return;
    }
  r.data["max_degree_searched"] = o.degree;
  r.verdict = "NoneFound";
  r.exit_code = kUndecided;
}

void cmd_depth(const Options& o, Report& r) {
  FamilySource f = load_family(o.input, o);
  r.inputs["d_x0"] = o.d_x0;
  r.provenance.push_back(f.origin);
  std::size_t pick = 0;
  if (!o.delta.empty()) {
    auto it = std::find(f.labels.begin(), f.labels.end(), o.delta);
    if (it == f.labels.end()) throw InputError("no derivation named '" + o.delta + "'");
    pick = static_cast<std::size_t>(it - f.labels.begin());
  }
  r.inputs["delta"] = f.labels[pick];
  r.data["derivation"] = format_derivation(f.family[pick]);
  auto rep = depth_bound(f.family[pick], o.d_x0);
  Json bounds = Json::object();
  for (const auto& [name, d] : rep.bounds) bounds[name] = d;
  r.data["bounds"] = bounds;
  r.data["max_depth"] = rep.max_depth;
  r.data["nonzero_term"] = rep.nonzero_term;
  r.data["note"] = "g^(" + std::to_string(rep.nonzero_term) + ") != 0";
  r.verdict = "Computed";
}

void cmd_witness(const Options& o, Report& r) {
  FamilySource f = load_family(o.input, o);
  r.inputs["ansatz"] = o.ansatz;
  r.inputs["node_budget"] = o.nodes;
  r.provenance.push_back(f.origin);
  r.data["action"] = action_json(f);
  auto rep = properness_witness_search(f.family, o.ansatz, o.nodes);
  r.data["nodes"] = rep.nodes;
  r.data["budget_exhausted"] = rep.budget_exhausted;
  if (rep.found) {
    r.verdict = "WitnessFound";
    r.exit_code = kNegative;
    r.data["ansatz_degree"] = rep.ansatz_degree;
    r.data["group_ray"] = laurent_json(rep.group_ray);
    r.data["point_ray"] = laurent_json(rep.point_ray);
    r.data["image_ray"] = laurent_json(rep.image_ray);
    r.data["unbounded_index"] = rep.unbounded_index;
    r.data["verified"] = verify_witness(f.family, rep);
  } else {
    r.verdict = "NoneFound";
    r.exit_code = kUndecided;
  }
}

Json problem_json(const ReducedProblem& p) {
  Json steps = Json::array();
  for (const auto& s : p.provenance) steps.push_back(Json{{"kind", s.kind}, {"dim", s.data.dim()}});
  return Json{{"dim", p.algebra.dim()},
              {"v", basis_json(p.algebra, p.v.basis())},
              {"h", basis_json(p.algebra, p.h.basis())},
              {"steps", steps}};
}

void cmd_reduce(const Options& o, Report& r) {
  Source src = load(o.input);
  require_pair(src, o, r);
  const auto& a = src.doc.algebra;
  const auto& v = src.doc.subspace(o.v);
  const auto& h = src.doc.subspace(o.h);
  r.provenance.push_back(src.origin);
  r.data["center"] = problem_json(reduce_by_center(a, v, h));
  auto shadow = reduce_common_shadow(a, v, h);
  Json sj = problem_json(shadow);
  sj["complement_v"] = basis_json(a, shadow.provenance[0].complement_v);
  sj["complement_h"] = basis_json(a, shadow.provenance[0].complement_h);
  r.data["common_shadow"] = sj;
  if (auto split = family_split(a, v, h))
    r.data["family_split"] =
        Json{{"y0", a.format(split->y0)}, {"g1", basis_json(a, split->g1.basis())}, {"preserves", split->normalizes_v ? "v" : "h"}};
  else
    r.data["family_split"] = nullptr;
  r.verdict = "Computed";
  if (v.dim() != 1) return;
  auto d1 = dim1_pipeline(src.doc, v, h);
  if (auto* u = std::get_if<Unsupported>(&d1)) {
    r.data["dim1"] = Json{{"result", "Unsupported"}, {"reason", u->reason}};
    r.verdict = "Unsupported";
    r.exit_code = kUndecided;
    return;
  }
  const auto& s = std::get<SliceDescription>(d1);
  r.data["dim1"] = Json{{"result", "Slice"}, {"kind", s.kind}, {"route", s.route}, {"slice", s.describe()},
                        {"dimension", s.dimension}};
  auto fail = verify_slice(a, v, h, s, 50, o.seed);
  r.data["dim1"]["roundtrip"] = fail ? *fail : "ok";
}

void cmd_demo(const Options& o, Report& r) {
  auto entry = lookup(o.input);
  if (!entry) throw InputError("no catalog entry '" + o.input + "'");
  const auto& doc = entry->doc;
  const auto& a = doc.algebra;
  r.provenance.push_back("catalog:" + entry->name);
  Json dims = Json::array();
  for (const auto& t : a.central_series()) dims.push_back(t.dim());
  r.data["central_series"] = dims;
  r.data["nilpotency_step"] = a.nilpotency_step();
  if (doc.has_subspace("v") && doc.has_subspace("h")) {
    const auto& v = doc.subspace("v");
    const auto& h = doc.subspace("h");
    auto c = freeness_check(a, v, h, 0, o.seed);
    r.data["freeness"] = Json{{"verdict", to_string(c.verdict)}, {"reason", c.reason}, {"degree", c.degree}};
    if (c.verdict != FreenessVerdict::Refuted) {
      Options io = o;
      FamilySource f = induced_family({doc, entry, "catalog:" + entry->name}, io);
      r.data["induced"] = action_json(f);
      r.data["action_degree"] = action_degree(f.family);
      Json slice = Json{{"result", "NoneFound"}, {"max_degree", kSliceDegreeCeiling}};
      if (pairwise_commuting(f.family))
        for (unsigned b = 1; b <= kSliceDegreeCeiling; ++b)
          if (auto fs = slice_function_search(f.family, b)) {
            auto names = f.family[0].ring.names;
            Json eq = Json::array();
            for (const auto& p : *fs) eq.push_back(p.to_string(names));
            slice = Json{{"result", "Found"}, {"degree", b}, {"functions", eq}};
            break;
          }
      r.data["slice_search"] = slice;
    }
  }
  Json goldens = Json::array();
  bool all = true;
  for (const auto& g : check_goldens(*entry)) {
    goldens.push_back(Json{{"key", g.golden.key}, {"expected", g.golden.value}, {"actual", g.actual},
                           {"tag", g.golden.tag}, {"pass", g.pass}});
    r.provenance.push_back(g.golden.key + " [" + g.golden.tag + "]");
    all = all && g.pass;
  }
  r.data["goldens"] = goldens;
  r.verdict = all ? "GoldensPass" : "GoldenMismatch";
  if (!all) r.exit_code = kInput;
}

void cmd_emit(const Options& o, Report& r) {
  Source src = load(o.input);
  r.provenance.push_back(src.origin);
  r.data["text"] = emit_lie(src.doc);
  r.verdict = "Emitted";
}

Json to_json(const Report& r, const Options& o) {
  return Json{{"command", r.command},
              {"inputs", r.inputs},
              {"verdict", r.verdict},
              {"data", r.data},
              {"provenance", r.provenance},
              {"seed", o.seed},
              {"versions", Json{{"nilq", kVersion}, {"gmp", gmp_version}}}};
}

void print_human(const Json& j, const std::string& indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& val = it.value();
    if (val.is_object()) {
      std::cout << indent << it.key() << ":\n";
      print_human(val, indent + "  ");
    } else if (val.is_array() && !val.empty() && (val[0].is_object() || val[0].is_string())) {
      std::cout << indent << it.key() << ":\n";
      for (const auto& x : val) {
        if (x.is_object()) {
          std::cout << indent << "  -";
          for (auto f = x.begin(); f != x.end(); ++f)
            std::cout << " " << f.key() << "=" << (f.value().is_string() ? f.value().get<std::string>() : f.value().dump());
          std::cout << "\n";
        } else {
          std::cout << indent << "  - " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
        }
      }
    } else {
      std::cout << indent << it.key() << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for biquotients of unipotent groups"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Emit a JSON report");
  app.add_option("--seed", o.seed, "Seed for all sampling")->capture_default_str();

  auto pair_opts = [&](CLI::App* sub) {
    sub->add_option("--v", o.v, "Name of the subspace v")->capture_default_str();
    sub->add_option("--h", o.h, "Name of the subspace h")->capture_default_str();
  };
  std::map<CLI::App*, std::function<void(const Options&, Report&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<void(const Options&, Report&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, "A .lie file or catalog name")->required();
    handlers[sub] = std::move(fn);
    return sub;
  };
  add("validate", "Parse a .lie file and check its structure", cmd_validate);
  add("series", "Descending central series and center", cmd_series);
  auto fr = add("freeness", "Freeness of the V x H action", cmd_freeness);
  pair_opts(fr);
  fr->add_option("--budget", o.budget, "Certificate degree budget (0: twice the step)")->capture_default_str();
  auto sl = add("slice", "Polynomial slice functions for the induced action", cmd_slice);
  pair_opts(sl);
  sl->add_option("--degree", o.degree, "Largest degree searched")->capture_default_str();
  auto in = add("induced", "Induced derivations on G/H", cmd_induced);
  pair_opts(in);
  auto de = add("depth", "Depth bounds for a triangular derivation (.der file or <catalog>-quotient)", cmd_depth);
  pair_opts(de);
  de->add_option("--d-x0", o.d_x0, "Depth of the parameter")->capture_default_str();
  de->add_option("--delta", o.delta, "Name of the derivation in a .der file");
  auto wi = add("witness", "Search for a non-properness ray (.der file, <catalog>-action or .lie)", cmd_witness);
  pair_opts(wi);
  wi->add_option("--ansatz", o.ansatz, "Ansatz degree")->capture_default_str();
  wi->add_option("--nodes", o.nodes, "Search node budget")->capture_default_str();
  auto re = add("reduce", "Reductions, family split and the dim-1 pipeline", cmd_reduce);
  pair_opts(re);
  add("demo", "End-to-end run on a catalog entry with golden checks", cmd_demo);
  add("emit", "Canonical .lie text", cmd_emit);

  CLI11_PARSE(app, argc, argv);

  Report r;
  CLI::App* sub = app.get_subcommands().front();
  r.command = sub->get_name();
  r.inputs["input"] = o.input;
  try {
    handlers.at(sub)(o, r);
  } catch (const std::exception& e) {
    bool input = dynamic_cast<const InputError*>(&e) || dynamic_cast<const CapabilityError*>(&e);
    r.verdict = input ? "InputError" : "InternalError";
    r.data = Json{{"message", e.what()}};
    r.exit_code = kInput;
    if (!o.json) std::cerr << "error: " << e.what() << "\n";
  }
  if (o.json) {
    std::cout << to_json(r, o).dump(2) << "\n";
  } else if (r.exit_code != kInput || !r.data.contains("message")) {
    if (r.command == "emit" && r.data.contains("text")) {
      std::cout << r.data["text"].get<std::string>();
    } else {
      print_human(to_json(r, o), "");
    }
  }
  return r.exit_code;
}
