#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "mbanach/axioms.hpp"
#include "mbanach/cbmaps.hpp"
#include "mbanach/cli.hpp"
#include "mbanach/errors.hpp"
#include "mbanach/parse.hpp"
#include "mbanach/tensor.hpp"

namespace mbanach {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string caps;
  int samples = -1;
  std::uint64_t seed = 0;
  double tol = 0.5;
  int threads = 0;
  std::string out;
  std::string format = "text";
  int hadamard = -1;
  std::string config;

  std::string alphabet;
  std::string array;
  std::vector<std::string> cofactors;
  std::string op;
  std::string l1sum;
  std::string map;
  std::string target = "min";
  std::string into;
  std::string set_map;
  std::string point;
  std::string vector;
  std::string left = "min";
  std::string right = "min";
  std::string tensor;
  int restarts = 50;
  int steps = 2000;
  std::string element;
  std::string generators;
  std::uint64_t sampled_checks = 100000;
};

Json tagged(double value, Direction d, const std::string& witness = {}) {
  Json j;
  j["value"] = value;
  j["direction"] = to_string(d);
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

Json caps_json(const EnumCaps& c) {
  return Json{{"rows", c.max_rows},        {"cols", c.max_cols}, {"cells", c.max_cells},
              {"samples", c.samples},      {"seed", c.seed},     {"hadamard_depth", c.hadamard_depth}};
}

Json complex_json(Complex c) { return format_complex(c); }

Json vector_json(const std::vector<Complex>& v) {
  Json j = Json::array();
  for (Complex c : v) j.push_back(complex_json(c));
  return j;
}

// key.sub = value lines; arrays index with [k].
void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    }
  } else if (j.is_array()) {
    if (j.empty()) os << prefix << " = []\n";
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", os);
  } else if (j.is_string()) {
    os << prefix << " = " << j.get<std::string>() << "\n";
  } else {
    os << prefix << " = " << j.dump() << "\n";
  }
}

std::string render(const Json& report, const std::string& format) {
  std::ostringstream os;
  if (format == "structured") {
    os << report.dump(2) << "\n";
  } else {
    flatten(report, "", os);
  }
  return os.str();
}

void apply_config(const std::string& path, Options& o, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw InputError("config file must hold a JSON object");
  const auto unset = [&](const char* flag) { return app.count(flag) == 0; };
  try {
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
      const std::string& k = it.key();
      const Json& v = it.value();
      if (k == "caps") {
        if (unset("--caps")) o.caps = v.get<std::string>();
      } else if (k == "samples") {
        if (unset("--samples")) o.samples = v.get<int>();
      } else if (k == "seed") {
        if (unset("--seed")) o.seed = v.get<std::uint64_t>();
      } else if (k == "tol") {
        if (unset("--tol")) o.tol = v.get<double>();
      } else if (k == "threads") {
        if (unset("--threads")) o.threads = v.get<int>();
      } else if (k == "out") {
        if (unset("--out")) o.out = v.get<std::string>();
      } else if (k == "format") {
        if (unset("--format")) o.format = v.get<std::string>();
      } else if (k == "hadamard") {
        if (unset("--hadamard")) o.hadamard = v.get<int>();
      } else if (k == "alphabet") {
        if (o.alphabet.empty()) o.alphabet = v.get<std::string>();
      } else {
        throw InputError("unknown config key '" + k + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw InputError("config value has the wrong type: " + std::string(e.what()));
  }
}

EnumCaps build_caps(const Options& o) {
  EnumCaps caps;
  if (!o.caps.empty()) caps = parse_caps(o.caps);
  if (o.samples >= 0) caps.samples = o.samples;
  caps.seed = o.seed;
  caps.hadamard_depth = o.hadamard;
  validate(caps);
  return caps;
}

std::shared_ptr<const AWSet> need_alphabet(const Options& o, const EnumCaps& caps) {
  if (o.alphabet.empty()) throw InputError("--alphabet is required");
  return parse_alphabet(o.alphabet, caps);
}

std::shared_ptr<const MatrixNorm> parse_side(const std::string& kind) {
  if (kind == "min") return std::make_shared<MinScalarNorm>();
  if (kind == "amax") return std::make_shared<AmaxScalarNorm>();
  if (kind.rfind("amaxl1:", 0) == 0) {
    std::vector<double> w;
    for (const auto& t : split(kind.substr(7), ',')) {
      const Complex c = parse_complex(t);
      if (c.imag() != 0.0) throw InputError("weights must be real");
      w.push_back(c.real());
    }
    return std::make_shared<AmaxWeightedL1Norm>(std::move(w));
  }
  throw InputError("unknown component space '" + kind + "' (min, amax, amaxl1:w1,w2,...)");
}

Json array_json(const AWSet& x, const std::optional<Array>& a) {
  if (!a) return nullptr;
  return x.format_array(*a);
}

// ---------------------------------------------------------------- commands

Json cmd_norm(const Options& o, int& status) {
  status = 0;
  Json r;
  if (o.op.empty() && o.l1sum.empty()) throw InputError("norm needs --op or --l1sum");
  if (!o.op.empty()) {
    const ScalarMatrix m = parse_scalar_matrix(o.op);
    r["operator"] = tagged(operator_norm(m), Direction::exact);
    r["trace"] = tagged(trace_norm(m), Direction::exact);
    r["frobenius"] = tagged(frobenius_norm(m), Direction::exact);
  }
  if (!o.l1sum.empty()) {
    std::vector<ScalarMatrix> blocks;
    for (const auto& b : split(o.l1sum, '|')) blocks.push_back(parse_scalar_matrix(b));
    auto block = std::make_shared<const MinScalarNorm>();
    const L1SumNorm sum(std::vector<std::shared_ptr<const MatrixNorm>>(blocks.size(), block));
    r["l1_sum_of_min"] = tagged(sum.norm(VectorMatrix(std::move(blocks))), Direction::exact);
  }
  return r;
}

Json bracket_json(const WeightBracket& b) {
  Json r;
  r["lower"] = tagged(b.lower.value, b.lower.direction, b.lower.witness);
  r["upper"] = tagged(b.upper.value, b.upper.direction, b.upper.witness);
  r["notes"] = b.notes;
  return r;
}

Json cmd_weight(const Options& o, const EnumCaps& caps) {
  const auto x = need_alphabet(o, caps);
  if (o.array.empty()) throw InputError("--array is required");
  const Array a = x->parse_array(o.array);
  Json r;
  r["rule"] = x->rule().kind();
  if (x->exact()) {
    r["weight"] = tagged(x->exact_weight(a), Direction::exact);
  } else {
    r["weight"] = bracket_json(x->bracket(a));
  }
  return r;
}

Json cmd_zx(const Options& o, const EnumCaps& caps) {
  const auto z = zx_set(need_alphabet(o, caps));
  if (o.array.empty()) throw InputError("--array is required");
  const WeightBound w = zx_weight(*z, z->parse_array(o.array));
  Json r;
  r["weight"] = tagged(w.value, w.direction, w.witness);
  return r;
}

Json cmd_coproduct(const Options& o, const EnumCaps& caps) {
  if (o.cofactors.empty()) throw InputError("at least one --cofactor is required");
  std::vector<std::shared_ptr<const AWSet>> parts;
  for (const auto& c : o.cofactors) parts.push_back(parse_alphabet(c, caps));
  const auto d = disjoint_union(parts, caps);
  if (o.array.empty()) throw InputError("--array is required");
  const auto& rule = dynamic_cast<const DisjointUnionRule&>(d->rule());
  Json r = bracket_json(d->bracket(d->parse_array(o.array)));
  r["amax_map"] = rule.amax_map_status().empty() ? Json("not admissible") : Json(rule.amax_map_status());
  return r;
}

Json cmd_axioms(const Options& o, const EnumCaps& caps, int& status) {
  const auto x = need_alphabet(o, caps);
  const AxiomReport rep = check_axioms(*x, caps, o.sampled_checks);
  Json r;
  r["rule"] = rep.rule;
  r["exhaustive_arrays"] = rep.exhaustive_arrays;
  r["exhaustive_checks"] = rep.exhaustive_checks;
  r["sampled_arrays"] = rep.sampled_arrays;
  r["sampled_checks"] = rep.sampled_checks;
  r["violations"] = rep.violation_count;
  Json list = Json::array();
  for (std::size_t k = 0; k < rep.violations.size() && k < 10; ++k) {
    const auto& v = rep.violations[k];
    list.push_back({{"axiom", v.axiom},
                    {"array", x->format_array(v.array)},
                    {"rows", v.rows},
                    {"cols", v.cols},
                    {"lhs", v.lhs},
                    {"rhs", v.rhs},
                    {"sampled", v.sampled}});
  }
  r["first_violations"] = list;
  r["passed"] = rep.passed();
  status = rep.passed() ? 0 : 1;
  return r;
}

Json cmd_cbnd(const Options& o, const EnumCaps& caps) {
  const auto x = need_alphabet(o, caps);
  CbndReport rep;
  std::shared_ptr<const AWSet> y;
  if (!o.into.empty()) {
    y = parse_alphabet(o.into, caps);
    if (o.set_map.empty()) throw InputError("--set-map is required with --into");
    SetMap phi;
    phi.target_size = y->size();
    phi.images.assign(static_cast<std::size_t>(x->size()), -1);
    for (const auto& item : split(o.set_map, ',')) {
      const auto eq = item.rfind('=');
      if (eq == std::string::npos) throw InputError("set-map entry '" + item + "' needs source=target");
      phi.images[static_cast<std::size_t>(x->index_of(trim(item.substr(0, eq))))] = y->index_of(trim(item.substr(eq + 1)));
    }
    if (std::count(phi.images.begin(), phi.images.end(), -1) > 0) throw InputError("set-map must cover every point");
    rep = cbnd_estimate(phi, *x, *y, caps);
  } else {
    if (o.map.empty()) throw InputError("cbnd needs --map or --into/--set-map");
    ScalarMap phi;
    phi.values.assign(static_cast<std::size_t>(x->size()), 0.0);
    for (const auto& item : split(o.map, ',')) {
      const auto eq = item.rfind('=');
      if (eq == std::string::npos) throw InputError("map entry '" + item + "' needs label=value");
      phi.values[static_cast<std::size_t>(x->index_of(trim(item.substr(0, eq))))] = parse_complex(item.substr(eq + 1));
    }
    if (o.target != "min" && o.target != "amax") throw InputError("--target must be min or amax");
    rep = cbnd_estimate(phi, *x, o.target == "min" ? ScalarTarget::min : ScalarTarget::amax, caps);
  }
  Json r;
  r["lower_bound"] = tagged(rep.lower_bound, rep.exact ? Direction::exact : Direction::lower);
  r["witness"] = array_json(*x, rep.witness);
  r["zero_weight_violation"] = array_json(*x, rep.zero_weight_violation);
  r["completely_bounded"] = rep.zero_weight_violation ? Json(false) : Json("unknown unless exact");
  if (rep.exact) r["exact_reason"] = rep.exact_reason;
  r["arrays_inspected"] = rep.arrays_inspected;
  return r;
}

Json cmd_brn(const Options& o, const EnumCaps& caps) {
  const auto x = need_alphabet(o, caps);
  const BrnReport rep = brn_estimate(*x, caps);
  Json r;
  r["upper_bound"] = tagged(rep.upper_bound, Direction::upper, rep.witness_note);
  r["witness"] = array_json(*x, rep.witness);
  Json cert = Json::array();
  for (const auto& step : rep.certificate) cert.push_back({{"m", step.m}, {"bound", step.bound}});
  r["certificate"] = cert;
  if (rep.exact_value) {
    r["exact"] = tagged(*rep.exact_value, Direction::exact, rep.justification);
  } else {
    r["exact"] = nullptr;
  }
  r["arrays_inspected"] = rep.arrays_inspected;
  return r;
}

Json cmd_array_free(const Options& o, const EnumCaps& caps) {
  const auto x = need_alphabet(o, caps);
  std::vector<int> points;
  if (o.point.empty()) {
    for (int i = 0; i < x->size(); ++i) points.push_back(i);
  } else {
    points.push_back(x->index_of(o.point));
  }
  Json r = Json::array();
  for (int p : points) {
    const ArrayFreeReport rep = array_free_report(*x, p, caps);
    Json growth = Json::array();
    for (const auto& g : rep.growth) growth.push_back({{"size", g.m}, {"ratio", g.bound}});
    r.push_back({{"point", x->point(p).label},
                 {"classification", to_string(rep.classification)},
                 {"route", rep.route},
                 {"cbnd_lower_bound", tagged(rep.cbnd_lower_bound, Direction::lower)},
                 {"growth", growth}});
  }
  return Json{{"points", r}};
}

Json qx_json(const QxEstimate& e) {
  Json r;
  r["value"] = tagged(e.value, Direction::upper, "cutting-plane relaxation over the finite feasible set");
  r["feasible_lower"] = tagged(e.feasible_lower, Direction::lower, "best feasible functional");
  r["maximizer"] = vector_json(e.maximizer.values);
  r["iterations"] = e.iterations;
  r["cuts"] = e.cuts;
  r["constraints"] = e.constraints;
  r["low_confidence"] = e.low_confidence;
  return r;
}

Json cmd_qx(const Options& o, const EnumCaps& caps) {
  const auto x = need_alphabet(o, caps);
  if (o.vector.empty()) throw InputError("--vector is required");
  const FreeVector v = parse_free_vector(*x, o.vector);
  Json r = qx_json(qx_norm_estimate(*x, v, caps));
  r["vector"] = vector_json(v.coeffs);
  return r;
}

Json cmd_nullspace(const Options& o, const EnumCaps& caps) {
  const auto x = need_alphabet(o, caps);
  const NullspaceReport rep = nullspace_estimate(*x, caps, o.tol);
  Json r;
  Json basis = Json::array();
  for (const auto& v : rep.basis) basis.push_back(vector_json(v.coeffs));
  r["basis"] = basis;
  r["dimension"] = rep.basis.size();
  r["tol"] = rep.tol;
  Json probes = Json::array();
  for (const auto& p : rep.probes) probes.push_back({{"direction", vector_json(p.direction.coeffs)}, {"estimate", p.estimate}});
  r["probes"] = probes;
  r["caveat"] = rep.caveat;
  return r;
}

Json cmd_haagerup(const Options& o) {
  const auto left = parse_side(o.left);
  const auto right = parse_side(o.right);
  if (o.tensor.empty()) throw InputError("--tensor is required (slices joined by '|')");
  std::vector<ScalarMatrix> slices;
  for (const auto& s : split(o.tensor, '|')) slices.push_back(parse_scalar_matrix(s));
  const TensorMatrix c = make_tensor_matrix(std::move(slices), left->dim(), right->dim());
  HaagerupBudget budget;
  budget.restarts = o.restarts;
  budget.steps = o.steps;
  budget.seed = o.seed;
  const HaagerupResult h = haagerup_upper(c, *left, *right, budget);
  Json r;
  r["upper"] = tagged(h.upper.value, Direction::upper, h.upper.witness);
  r["lower"] = tagged(h.lower, Direction::lower, h.lower_reason);
  r["factorization_terms"] = h.factorization.size();
  r["restarts_run"] = h.restarts_run;
  r["budget"] = {{"restarts", budget.restarts}, {"steps", budget.steps}, {"seed", budget.seed}};
  return r;
}

Json cmd_word_norm(const Options& o) {
  if (o.generators.empty()) throw InputError("--generators is required (name=norm,...)");
  std::vector<std::string> names;
  std::vector<double> norms;
  for (const auto& item : split(o.generators, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("generator '" + item + "' needs name=norm");
    names.push_back(trim(item.substr(0, eq)));
    const Complex c = parse_complex(item.substr(eq + 1));
    if (c.imag() != 0.0) throw InputError("generator norms must be real");
    norms.push_back(c.real());
  }
  const TensorElement e = TensorElement::parse(o.element, names);
  const WeightBound w = word_norm_upper(e, norms);
  Json r;
  r["element"] = e.format(names);
  r["norm"] = tagged(w.value, w.direction, w.witness);
  return r;
}

Json cmd_verify(int& status) {
  const auto items = paper_verify();
  Json list = Json::array();
  int failures = 0;
  for (const auto& it : items) {
    if (!it.pass) ++failures;
    Json j{{"name", it.name}, {"expected", it.expected}, {"computed", it.computed}, {"status", it.pass ? "PASS" : "FAIL"}};
    if (!it.detail.empty()) j["detail"] = it.detail;
    list.push_back(j);
  }
  status = failures == 0 ? 0 : 1;
  return Json{{"items", list}, {"failures", failures}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Norms, array weights and their certificates on finite instances"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--caps", o.caps, "enumeration caps R,C,P");
    sub->add_option("--samples", o.samples, "random arrays beyond the exhaustive caps");
    sub->add_option("--seed", o.seed, "seed for sampled arrays and searches");
    sub->add_option("--tol", o.tol, "tolerance in (0, 1) (nullspace threshold)");
    sub->add_option("--threads", o.threads, "OpenMP threads (results do not depend on it)");
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--hadamard", o.hadamard, "depth of the alternating-block arrays, -1 for none");
    sub->add_option("--config", o.config, "JSON file with default flag values");
  };
  const auto with_alphabet = [&](CLI::App* sub) { sub->add_option("--alphabet", o.alphabet, "alphabet descriptor or preset"); };

  auto* norm = app.add_subcommand("norm", "operator, trace and l1-sum norms of scalar matrices");
  norm->add_option("--op", o.op, "matrix literal, rows ';' entries ','");
  norm->add_option("--l1sum", o.l1sum, "blocks joined by '|', each normed in MIN(C)");
  auto* weight = app.add_subcommand("weight", "weight of an array");
  with_alphabet(weight);
  weight->add_option("--array", o.array, "array literal over point labels");
  auto* zx = app.add_subcommand("zx", "weight in the zero-append of an alphabet");
  with_alphabet(zx);
  zx->add_option("--array", o.array, "array literal; Theta marks the appended point");
  auto* cop = app.add_subcommand("coproduct-bounds", "bracket for the disjoint-union weight");
  cop->add_option("--cofactor", o.cofactors, "cofactor alphabet (repeatable)");
  cop->add_option("--array", o.array, "array literal");
  auto* ax = app.add_subcommand("axioms-check", "property-test the array-weight axioms");
  with_alphabet(ax);
  ax->add_option("--sampled-checks", o.sampled_checks, "number of sampled checks");
  auto* cbnd = app.add_subcommand("cbnd", "lower bound on a complete bound constant");
  with_alphabet(cbnd);
  cbnd->add_option("--map", o.map, "scalar map label=value,...");
  cbnd->add_option("--target", o.target, "min or amax");
  cbnd->add_option("--into", o.into, "target alphabet for a set map");
  cbnd->add_option("--set-map", o.set_map, "set map source=target,...");
  auto* brn = app.add_subcommand("brn", "bounded range number bounds");
  with_alphabet(brn);
  auto* af = app.add_subcommand("array-free", "array-freeness classification");
  with_alphabet(af);
  af->add_option("--point", o.point, "point label (default: all)");
  auto* qx = app.add_subcommand("qx-norm", "quotient seminorm estimate of a free vector");
  with_alphabet(qx);
  qx->add_option("--vector", o.vector, "label:coeff,...");
  auto* ns = app.add_subcommand("nullspace", "near-null directions of the quotient seminorm");
  with_alphabet(ns);
  auto* hg = app.add_subcommand("haagerup", "upper bound on a Haagerup tensor norm");
  hg->add_option("--left", o.left, "min, amax or amaxl1:w1,...");
  hg->add_option("--right", o.right, "min, amax or amaxl1:w1,...");
  hg->add_option("--tensor", o.tensor, "slices (a,b) in row-major order joined by '|'");
  hg->add_option("--restarts", o.restarts, "random restarts of the local search");
  hg->add_option("--steps", o.steps, "descent steps per restart");
  auto* wn = app.add_subcommand("word-norm", "norm bound in the tensor algebra");
  wn->add_option("--element", o.element, "coeff@g1*g2 + ...");
  wn->add_option("--generators", o.generators, "name=norm,...");
  auto* pv = app.add_subcommand("paper-verify", "run the golden verification table");
  for (auto* sub : app.get_subcommands({})) common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  int status = 0;
  Json report;
  try {
    if (!o.config.empty()) apply_config(o.config, o, *sub);
    if (o.format != "text" && o.format != "structured") throw InputError("--format must be text or structured");
    if (!(o.tol > 0.0 && o.tol < 1.0)) throw ParameterError("--tol must lie in (0, 1)");
    if (o.threads < 0) throw ParameterError("--threads must be nonnegative");
    if (o.threads > 0) set_thread_count(o.threads);
    const EnumCaps caps = build_caps(o);
    const std::string name = sub->get_name();

    report["command"] = name;
    report["version"] = kVersion;
    Json inputs = Json::object();
    for (const auto* opt : sub->get_options()) {
      if (opt->get_name() == "--help" || opt->count() == 0 || opt->get_name() == "--threads" ||
          opt->get_name() == "--out" || opt->get_name() == "--format") {
        continue;
      }
      const auto res = opt->results();
      inputs[opt->get_name()] = res.size() == 1 ? Json(res.front()) : Json(res);
    }
    report["inputs"] = inputs;
    report["caps"] = caps_json(caps);

    const auto start = std::chrono::steady_clock::now();
    Json results;
    if (sub == norm) {
      results = cmd_norm(o, status);
    } else if (sub == weight) {
      results = cmd_weight(o, caps);
    } else if (sub == zx) {
      results = cmd_zx(o, caps);
    } else if (sub == cop) {
      results = cmd_coproduct(o, caps);
    } else if (sub == ax) {
      results = cmd_axioms(o, caps, status);
    } else if (sub == cbnd) {
      results = cmd_cbnd(o, caps);
    } else if (sub == brn) {
      results = cmd_brn(o, caps);
    } else if (sub == af) {
      results = cmd_array_free(o, caps);
    } else if (sub == qx) {
      results = cmd_qx(o, caps);
    } else if (sub == ns) {
      results = cmd_nullspace(o, caps);
    } else if (sub == hg) {
      results = cmd_haagerup(o);
    } else if (sub == wn) {
      results = cmd_word_norm(o);
    } else if (sub == pv) {
      results = cmd_verify(status);
    }
    report["results"] = results;
    report["status"] = status == 0 ? "ok" : "check failed";
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = {{"seconds", seconds}, {"threads", thread_count()}};
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << " (estimate " << e.estimate() << ")\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string text = render(report, o.format);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out);
    if (!file) {
      err << "cannot write '" << o.out << "'\n";
      return 2;
    }
    file << text;
  }
  return status;
}

}  // namespace mbanach
