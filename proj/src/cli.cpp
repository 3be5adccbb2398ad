#include "liehom/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "liehom/complex_structure.hpp"
#include "liehom/harness.hpp"
#include "liehom/specfile.hpp"

namespace liehom::cli {

namespace {

using json = nlohmann::ordered_json;

class InputError : public Error {
 public:
  InputError(std::string kind, const std::string& what) : Error(std::move(kind), what) {}
};

struct Report {
  int code = kHolds;
  json j;
  std::vector<std::string> text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("FileNotFound", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

template <class S>
json exact(const Vector<S>& v) {
  json a = json::array();
  for (Index k = 0; k < v.size(); ++k) a.push_back(v[k].str());
  return a;
}

template <class S>
std::string bracketed(const Vector<S>& v) {
  std::string s = "[";
  for (Index k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
  return s + "]";
}

std::string bracketed(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os.precision(6);
  os << '[';
  for (Index k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k];
  os << ']';
  return os.str();
}

template <class S>
json witness(const std::string& role, const std::vector<std::string>& labels, const Vector<S>& v) {
  return json{{"role", role}, {"label", format_combination(labels, v)}, {"coordinates", exact(v)}};
}

json floats(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

template <class S>
std::string witness_line(const std::string& role, const std::vector<std::string>& labels, const Vector<S>& v) {
  return "  " + role + " = " + format_combination(labels, v) + "  " + bracketed(v);
}

struct Selection {
  spec::Workspace ws;
  std::string pair_name;
  std::string op_name;
  const HomogeneousPair* pair = nullptr;
  const spec::CompiledOperator* op = nullptr;
};

Selection select(const RunConfig& config) {
  Selection s;
  s.ws = spec::compile(spec::parse(read_file(config.input)));
  if (config.pair) {
    if (!s.ws.pairs.count(*config.pair)) throw InputError("UnknownName", "no pair named '" + *config.pair + "'");
    s.pair_name = *config.pair;
  } else if (s.ws.pairs.size() == 1) {
    s.pair_name = s.ws.pairs.begin()->first;
  } else {
    throw InputError("NameRequired", "--pair is required: the file declares " + std::to_string(s.ws.pairs.size()) +
                                         " pairs");
  }
  s.pair = &s.ws.pairs.at(s.pair_name);
  if (config.op) {
    if (!s.ws.operators.count(*config.op)) throw InputError("UnknownName", "no operator named '" + *config.op + "'");
    s.op_name = *config.op;
  } else {
    std::vector<std::string> candidates;
    for (const auto& [name, op] : s.ws.operators)
      if (op.op.alg() == s.pair->alg()) candidates.push_back(name);
    if (candidates.size() != 1)
      throw InputError("NameRequired", "--operator is required: " + std::to_string(candidates.size()) +
                                           " operators act on the algebra of pair '" + s.pair_name + "'");
    s.op_name = candidates.front();
  }
  s.op = &s.ws.operators.at(s.op_name);
  if (s.op->op.alg() != s.pair->alg())
    throw InputError("AlgebraMismatch",
                     "operator '" + s.op_name + "' does not act on the algebra of pair '" + s.pair_name + "'");
  return s;
}

void named(Report& r, const Selection& s) {
  r.j["pair"] = s.pair_name;
  r.j["operator"] = s.op_name;
}

json pair_dims(const HomogeneousPair& pair) {
  json d{{"g", pair.dim()}, {"k", pair.k().dim()}};
  if (pair.m()) d["m"] = pair.m()->dim();
  return d;
}

void admissibility_witness(const VerdictReport& v, const std::vector<std::string>& labels, Report& r) {
  if (!v.witness) return;
  const AdmissibilityWitness& w = *v.witness;
  json value = witness("value", labels, w.value);
  value["clause"] = w.clause;
  value["basis_index"] = w.basis_index;
  if (w.component) value["component"] = *w.component;
  r.j["witnesses"].push_back(value);
  r.text.push_back("  failing clause: " + w.clause);
  if (w.z) {
    r.j["witnesses"].push_back(witness("z", labels, *w.z));
    r.text.push_back(witness_line("z", labels, *w.z));
  }
  if (w.component) r.text.push_back("  component representative #" + std::to_string(*w.component));
  r.text.push_back(witness_line("value", labels, w.value));
}

Report cmd_check(const RunConfig& config) {
  const Selection s = select(config);
  const auto& labels = s.pair->alg()->labels();
  const VerdictReport v = check_admissible(*s.pair, s.op->op);
  Report r;
  named(r, s);
  r.code = v.holds ? kHolds : kFails;
  r.j["dims"] = pair_dims(*s.pair);
  json details{{"scope", to_string(v.scope)}, {"clauses", v.clauses}};
  r.text.push_back(std::string("admissible: ") + (v.holds ? "yes" : "no"));
  r.text.push_back("scope: " + to_string(v.scope) + (s.pair->connected() ? "" : " (component representatives given)"));
  std::string clauses;
  for (const std::string& c : v.clauses) clauses += (clauses.empty() ? "" : "; ") + c;
  r.text.push_back("clauses evaluated: " + clauses);
  if (s.pair->m()) {
    const VerdictReport split = check_split_admissible(*s.pair, s.op->op);
    details["split_admissible"] = split.holds;
    r.text.push_back(std::string("split admissible: ") + (split.holds ? "yes" : "no"));
  }
  admissibility_witness(v, labels, r);
  r.j["details"] = details;
  return r;
}

TorsionMode parse_mode(const std::string& text) {
  if (text == "all-pairs" || text == "all") return TorsionMode::AllPairs;
  if (text == "complement-pairs" || text == "complement") return TorsionMode::ComplementPairs;
  return TorsionMode::AdSpecialized;
}

Report cmd_torsion(const RunConfig& config) {
  const Selection s = select(config);
  const auto& labels = s.pair->alg()->labels();
  const std::optional<TorsionMode> mode = config.mode ? std::optional(parse_mode(*config.mode)) : std::nullopt;
  TorsionReport t;
  if (mode == TorsionMode::AdSpecialized) {
    if (!s.op->ad)
      throw InputError("NotAdOperator", "operator '" + s.op_name + "' is not declared as ad(...)");
    t = check_nijenhuis_ad(*s.pair, *s.op->ad);
  } else {
    t = check_nijenhuis(*s.pair, s.op->op, mode);
  }
  Report r;
  named(r, s);
  r.code = t.holds ? kHolds : kFails;
  r.j["dims"] = pair_dims(*s.pair);
  r.j["details"] = {{"mode", to_string(t.mode)}, {"checked_pairs", t.checked_pairs}};
  r.text.push_back(std::string("Nijenhuis: ") + (t.holds ? "yes" : "no"));
  r.text.push_back("mode: " + to_string(t.mode) + ", " + std::to_string(t.checked_pairs) + " basis pairs checked");
  if (t.witness) {
    const std::string value_role = t.mode == TorsionMode::AdSpecialized ? "[[d,v],[d,w]]" : "beta(v,w)";
    r.j["witnesses"].push_back(witness("v", labels, t.witness->v));
    r.j["witnesses"].push_back(witness("w", labels, t.witness->w));
    r.j["witnesses"].push_back(witness(value_role, labels, t.witness->value));
    r.text.push_back(witness_line("v", labels, t.witness->v));
    r.text.push_back(witness_line("w", labels, t.witness->w));
    r.text.push_back(witness_line(value_role, labels, t.witness->value) + "  (not in k)");
  }
  return r;
}

json basis_json(const SubspaceQi& z, const std::vector<std::string>& labels) {
  json a = json::array();
  for (Index k = 0; k < z.dim(); ++k) {
    const VectorQi v = z.basis_vector(k);
    a.push_back({{"label", format_combination(labels, v)}, {"coordinates", exact(v)}});
  }
  return a;
}

void basis_text(const std::string& title, const SubspaceQi& z, const std::vector<std::string>& labels, Report& r) {
  r.text.push_back(title + " (dim " + std::to_string(z.dim()) + "):");
  for (Index k = 0; k < z.dim(); ++k) r.text.push_back("    " + format_combination(labels, VectorQi(z.basis_vector(k))));
}

Report cmd_integrability(const RunConfig& config) {
  const Selection s = select(config);
  const auto& labels = s.pair->alg()->labels();
  const IntegrabilityReport ir = check_integrable(*s.pair, s.op->op);
  Report r;
  named(r, s);
  r.code = ir.integrable() ? kHolds : kFails;
  json dims = pair_dims(*s.pair);
  dims["z_plus"] = ir.z_plus.dim();
  dims["z_plus_mod_k"] = ir.z_plus_mod_k.dim();
  json details{{"z_plus", basis_json(ir.z_plus, labels)},
               {"z_plus_mod_k", basis_json(ir.z_plus_mod_k, labels)},
               {"z_plus_closed", ir.z_plus_closed},
               {"z_minus_closed", ir.z_minus_closed},
               {"nijenhuis", ir.nijenhuis_verdict},
               {"verdicts_agree", ir.verdicts_agree}};
  r.text.push_back(std::string("integrable: ") + (ir.integrable() ? "yes" : "no"));
  basis_text("  Z+", ir.z_plus, labels, r);
  basis_text("  Z+ mod k^C", ir.z_plus_mod_k, labels, r);
  r.text.push_back(std::string("  torsion criterion: ") + (ir.nijenhuis_verdict ? "Nijenhuis" : "not Nijenhuis") +
                   (ir.verdicts_agree ? " (agrees with closure of Z+)" : " (DISAGREES with closure of Z+)"));
  if (ir.split) {
    dims["eig_plus"] = ir.split->eig_plus.dim();
    details["split"] = {{"sum_is_all", ir.split->sum_is_all},
                        {"intersection_is_kc", ir.split->intersection_is_kc},
                        {"eigenspace_decomposition_holds", ir.split->eigenspace_decomposition_holds}};
    r.text.push_back(std::string("  Z+ + Z- = g^C: ") + (ir.split->sum_is_all ? "yes" : "no") +
                     ", Z+ cap Z- = k^C: " + (ir.split->intersection_is_kc ? "yes" : "no") +
                     ", Z+ = k^C + Eig(+i): " + (ir.split->eigenspace_decomposition_holds ? "yes" : "no"));
  }
  if (ir.witness) {
    r.j["witnesses"].push_back(witness("v", labels, ir.witness->v));
    r.j["witnesses"].push_back(witness("w", labels, ir.witness->w));
    r.j["witnesses"].push_back(witness("[v,w]", labels, ir.witness->bracket));
    r.text.push_back(witness_line("v", labels, ir.witness->v));
    r.text.push_back(witness_line("w", labels, ir.witness->w));
    r.text.push_back(witness_line("[v,w]", labels, ir.witness->bracket) + "  (not in Z+)");
  }
  r.j["dims"] = dims;
  r.j["details"] = details;
  return r;
}

Report cmd_harness(const RunConfig& config) {
  if (config.step < kMinStep) throw harness::StepTooSmall(config.step);
  if (config.step > kMaxStep) throw InputError("StepOutOfRange", "step " + sci(config.step) + " above 1e-1");
  if (config.samples < 1 || config.samples > kMaxSamples)
    throw InputError("SamplesOutOfRange", "samples must lie in [1, 1000000]");
  const Selection s = select(config);
  const harness::MatrixModel model = harness::MatrixModel::for_pair(*s.pair);
  harness::HarnessConfig hc;
  hc.samples = config.samples;
  hc.step = config.step;
  hc.seed = config.seed;
  hc.theta = config.theta;
  const harness::HarnessReport h = harness::run_harness(model, *s.pair, s.op->op, hc);
  if (config.csv) {
    std::ofstream csv(*config.csv);
    if (!csv) throw InputError("OutputError", "cannot write '" + *config.csv + "'");
    harness::write_samples_csv(h, csv);
  }

  Report r;
  named(r, s);
  r.code = h.passed ? kHolds : kFails;
  r.j["seed"] = hc.seed;
  r.j["tolerances"] = {{"torsion", hc.torsion_tolerance},
                       {"relation", hc.relation_tolerance},
                       {"bracket", hc.bracket_tolerance},
                       {"step", hc.step}};
  json dims = pair_dims(*s.pair);
  dims["ambient"] = model.ambient_dim();
  dims["samples"] = h.samples.size();
  r.j["dims"] = dims;
  const harness::RelationReport& rel = h.relations;
  json details{{"model", harness::to_string(h.kind)},
               {"max_deviation", h.max_deviation},
               {"max_numerical_torsion", h.max_numerical},
               {"exactly_nijenhuis", h.exactly_nijenhuis},
               {"alpha_relatedness_residual", rel.alpha_relatedness_residual},
               {"representative_residual", rel.representative_residual},
               {"projected_bracket_residual", rel.projected_bracket_residual},
               {"theta", hc.theta}};
  r.text.push_back(std::string("tolerances met: ") + (h.passed ? "yes" : "no"));
  r.text.push_back("model: " + harness::to_string(h.kind) + ", " + std::to_string(h.samples.size()) +
                   " samples, h = " + sci(hc.step) + ", seed " + std::to_string(hc.seed));
  r.text.push_back("  max |numerical - algebraic torsion| = " + sci(h.max_deviation) + " (tol " +
                   sci(hc.torsion_tolerance) + ")");
  r.text.push_back("  max |numerical torsion|            = " + sci(h.max_numerical) +
                   (h.exactly_nijenhuis ? " (operator is exactly Nijenhuis)" : ""));
  r.text.push_back("  relatedness residual     = " + sci(rel.alpha_relatedness_residual));
  r.text.push_back("  representative residual  = " + sci(rel.representative_residual));
  r.text.push_back("  projected bracket residual = " + sci(rel.projected_bracket_residual));
  if (rel.nonrelated) {
    details["nonrelated"] = {{"pushed_field", floats(rel.nonrelated->pushed_field)},
                             {"field_at_image", floats(rel.nonrelated->field_at_image)}};
    r.text.push_back("  g X(p0) = " + bracketed(rel.nonrelated->pushed_field) +
                     ", X(g p0) = " + bracketed(rel.nonrelated->field_at_image));
  }
  if (rel.mismatch) {
    details["mismatch"] = {{"bundle_of_field", floats(rel.mismatch->bundle_of_field)},
                           {"field_of_image", floats(rel.mismatch->field_of_image)}};
    r.text.push_back("  (N X^v)(g p0) = " + bracketed(rel.mismatch->bundle_of_field) +
                     ", X^{Iv}(g p0) = " + bracketed(rel.mismatch->field_of_image));
  }
  r.j["details"] = details;
  if (!h.passed && !h.samples.empty()) {
    const auto worst = std::max_element(h.samples.begin(), h.samples.end(),
                                        [](const auto& a, const auto& b) { return a.deviation < b.deviation; });
    r.j["witnesses"].push_back({{"role", "worst sample"},
                                {"point", floats(worst->point)},
                                {"v", floats(worst->v)},
                                {"w", floats(worst->w)},
                                {"numerical", floats(worst->numerical)},
                                {"predicted", floats(worst->predicted)},
                                {"deviation", worst->deviation}});
    r.text.push_back("  worst sample at " + bracketed(worst->point) + ": deviation " + sci(worst->deviation));
  }
  return r;
}

Report cmd_parse(const RunConfig& config) {
  const spec::SpecDocument doc = spec::parse(read_file(config.input));
  Report r;
  const std::string canonical = spec::serialize(doc);
  r.j["dims"] = {{"algebras", doc.algebras.size() + doc.matrix_algebras.size()},
                 {"subalgebras", doc.subalgebras.size()},
                 {"complements", doc.complements.size()},
                 {"operators", doc.operators.size()},
                 {"pairs", doc.pairs.size()}};
  r.j["details"] = {{"canonical", canonical}};
  r.text.push_back(canonical);
  return r;
}

std::string verdict(int code) { return code == kHolds ? "holds" : code == kFails ? "fails" : "error"; }

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.j = json{{"command", config.command},
             {"input", config.input},
             {"pair", config.pair ? json(*config.pair) : json(nullptr)},
             {"operator", config.op ? json(*config.op) : json(nullptr)},
             {"verdict", ""},
             {"witnesses", json::array()},
             {"dims", json::object()},
             {"tolerances", json::object()},
             {"seed", nullptr},
             {"elapsed_ms", 0.0}};
  std::string error_text;
  try {
    Report body;
    if (config.command == "check") body = cmd_check(config);
    else if (config.command == "torsion") body = cmd_torsion(config);
    else if (config.command == "integrability") body = cmd_integrability(config);
    else if (config.command == "harness") body = cmd_harness(config);
    else if (config.command == "parse") body = cmd_parse(config);
    else throw InputError("UnknownCommand", "unknown command '" + config.command + "'");
    r.code = body.code;
    r.text = std::move(body.text);
    for (auto& [key, value] : body.j.items()) r.j[key] = value;
  } catch (const spec::ParseError& e) {
    r.code = kInputError;
    error_text = spec::format_diagnostic(e, config.input);
    r.j["error"] = {{"kind", e.kind()},   {"message", e.message}, {"line", e.span.line},
                    {"column", e.span.column}, {"token", e.token}, {"expected", e.expected}};
  } catch (const spec::CompileError& e) {
    r.code = kInputError;
    error_text = config.input + ":" + std::to_string(e.span.line) + ":" + std::to_string(e.span.column) + ": " +
                 e.kind() + ": " + e.what();
    r.j["error"] = {{"kind", e.kind()}, {"message", e.what()}, {"line", e.span.line}, {"column", e.span.column}};
  } catch (const NotAdmissible& e) {
    r.code = kInputError;
    error_text = "NotAdmissible: " + std::string(e.what());
    r.j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    if (e.report.witness) {
      r.j["error"]["clause"] = e.report.witness->clause;
      r.j["error"]["value"] = exact(e.report.witness->value);
    }
  } catch (const NotACAdmissible& e) {
    r.code = kInputError;
    error_text = "NotACAdmissible: " + std::string(e.what());
    r.j["error"] = {{"kind", e.kind()}, {"message", e.what()}, {"basis_index", e.basis_index},
                    {"value", exact(e.value)}};
  } catch (const Error& e) {
    r.code = kInputError;
    error_text = e.kind() + ": " + e.what();
    r.j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
  } catch (const std::exception& e) {
    r.code = kInputError;
    error_text = std::string("error: ") + e.what();
    r.j["error"] = {{"kind", "Error"}, {"message", e.what()}};
  }
  r.j["verdict"] = verdict(r.code);
  r.j["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!error_text.empty()) err << error_text << '\n';
  std::ofstream file;
  if (config.out) {
    file.open(*config.out);
    if (!file) {
      err << "cannot write '" << *config.out << "'\n";
      return kInputError;
    }
  }
  std::ostream& sink = config.out ? static_cast<std::ostream&>(file) : out;
  if (config.report == "json") {
    sink << r.j.dump(2) << '\n';
  } else if (r.code != kInputError) {
    if (config.command == "parse") {
      sink << r.text.front();
    } else {
      sink << config.command << ' ' << config.input << ": pair " << r.j.value("pair", "") << ", operator "
           << r.j.value("operator", "") << '\n';
      for (const std::string& line : r.text) sink << line << '\n';
    }
  }
  return r.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Admissible operators and Nijenhuis torsion on homogeneous spaces", "liehom"};
  app.require_subcommand(1);
  RunConfig config;
  const std::vector<std::string> modes{"all-pairs", "complement-pairs", "ad-specialized", "all", "complement", "ad"};

  auto common = [&](CLI::App* sub, bool names) {
    sub->add_option("file", config.input, "a .lie document")->required();
    if (names) {
      sub->add_option("--pair", config.pair, "pair to use (optional when the file has one)");
      sub->add_option("--operator", config.op, "operator to use (optional when one fits the pair)");
    }
    sub->add_option("--report", config.report, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", config.out, "write the report to this file");
  };
  common(app.add_subcommand("check", "admissibility of an operator for a pair"), true);
  CLI::App* torsion = app.add_subcommand("torsion", "Nijenhuis torsion of the induced bundle map");
  common(torsion, true);
  torsion->add_option("--mode", config.mode, "all-pairs | complement-pairs | ad-specialized")
      ->check(CLI::IsMember(modes));
  common(app.add_subcommand("integrability", "integrability of an almost complex structure"), true);
  CLI::App* harness = app.add_subcommand("harness", "numerical check on a matrix model");
  common(harness, true);
  harness->add_option("--samples", config.samples, "sample points (1 to 1e6)");
  harness->add_option("--step", config.step, "finite-difference step (1e-8 to 1e-1)");
  harness->add_option("--seed", config.seed, "sampler seed");
  harness->add_option("--theta", config.theta, "rotation angle of the mismatch demonstration");
  harness->add_option("--csv", config.csv, "write per-sample deviations to this CSV file");
  common(app.add_subcommand("parse", "syntax check and canonical dump"), false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kInputError;
  }
  for (CLI::App* sub : app.get_subcommands()) config.command = sub->get_name();
  return execute(config, out, err);
}

}  // namespace liehom::cli
