#include "charvar_cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "charvar/orbits.hpp"
#include "charvar/rep.hpp"
#include "charvar/surface.hpp"
#include "charvar/trigdioph.hpp"
#include "charvar/twists.hpp"

namespace charvar::cli {

using json = nlohmann::ordered_json;

namespace {

/// Invalid user input detected by the front end itself.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Mode parse_mode(const std::string& m) {
  if (m == "exact") return Mode::Exact;
  if (m == "float") return Mode::Float;
  throw UsageError("mode must be 'exact' or 'float', got '" + m + "'");
}

Axis parse_axis(const std::string& a) {
  if (a == "X" || a == "x") return Axis::X;
  if (a == "Y" || a == "y") return Axis::Y;
  if (a == "Z" || a == "z") return Axis::Z;
  throw UsageError("axis must be X, Y or Z, got '" + a + "'");
}

const std::string& require(const std::string& value, const char* name) {
  if (value.empty()) throw UsageError(std::string("--") + name + " is required for this command");
  return value;
}

json point_json(const TracePoint& p) { return json::array({to_string(p.x), to_string(p.y), to_string(p.z)}); }

json surd_json(const QuadraticSurd& s) { return s.to_string(); }

json pair_json(const PairInterval& p) { return {{"lo", surd_json(p.lo)}, {"hi", surd_json(p.hi)}}; }

json terms_json(const CJRelation& rel) {
  json terms = json::array();
  for (const auto& t : rel.terms) terms.push_back({{"coeff", t.coeff.get_str()}, {"angle", t.angle.to_string()}});
  return terms;
}

void emit_json(const json& j, std::ostream& os) { os << j.dump(2) << "\n"; }

// Writes to cfg.output when given, otherwise to `fallback`.
void with_output(const RunConfig& cfg, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (cfg.output.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + cfg.output + "'");
  write(file);
}

// ------------------------------------------------------------------ commands

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const BoundaryTraces b = parse_traces(require(cfg.traces, "traces"), parse_mode(cfg.mode));
  const Classification c = classify(b);
  json j;
  j["traces"] = json::array({to_string(b.a()), to_string(b.b()), to_string(b.c()), to_string(b.d())});
  j["mode"] = std::string(to_string(b.mode()));
  j["class"] = std::string(to_string(c.kind));
  j["S"] = c.range ? json{{"lo", surd_json(c.range->lo)}, {"hi", surd_json(c.range->hi)}} : json(nullptr);
  j["intervals"] = json::array({pair_json(c.first), pair_json(c.second)});
  j["sigma_x"] = to_string(b.sigma_x());
  j["sigma_y"] = to_string(b.sigma_y());
  j["sigma_z"] = to_string(b.sigma_z());
  j["s_const"] = to_string(b.s_const());
  with_output(cfg, out, [&](std::ostream& os) { emit_json(j, os); });
  return kOk;
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Mode mode = parse_mode(cfg.mode);
  const BoundaryTraces b = parse_traces(require(cfg.traces, "traces"), mode);
  const TracePoint p = parse_point(require(cfg.point, "point"), mode);
  const OrbitResult r = enumerate_orbit(b, p, cfg.budget);

  const auto write_csv = [&](std::ostream& os) {
    os << "x,y,z\n";
    for (const auto& q : r.points) os << to_string(q.x) << "," << to_string(q.y) << "," << to_string(q.z) << "\n";
  };
  json summary{{"status", std::string(to_string(r.status))},
               {"cardinality", r.cardinality()},
               {"budget", r.budget},
               {"mode", std::string(to_string(mode))}};
  if (cfg.output.empty()) {
    write_csv(out);
    emit_json(summary, err);
  } else {
    with_output(cfg, out, write_csv);
    emit_json(summary, out);
  }
  return kOk;
}

int cmd_twist(const RunConfig& cfg, std::ostream& out) {
  const Mode mode = parse_mode(cfg.mode);
  const BoundaryTraces b = parse_traces(require(cfg.traces, "traces"), mode);
  const TracePoint p = parse_point(require(cfg.point, "point"), mode);
  const TwistWord w = TwistWord::parse(cfg.word);
  const TracePoint q = apply_word(b, p, w);
  json j{{"start", point_json(p)},
         {"word", w.to_string()},
         {"result", point_json(q)},
         {"kappa_start", to_string(kappa(b, p))},
         {"kappa_result", to_string(kappa(b, q))}};
  with_output(cfg, out, [&](std::ostream& os) { emit_json(j, os); });
  return kOk;
}

int cmd_period(const RunConfig& cfg, std::ostream& out) {
  const Mode mode = parse_mode(cfg.mode);
  const BoundaryTraces b = parse_traces(require(cfg.traces, "traces"), mode);
  const TracePoint p = parse_point(require(cfg.point, "point"), mode);
  const Axis axis = parse_axis(cfg.axis);
  const auto q = twist_period(b, p, axis, cfg.max_q);
  json j{{"axis", std::string(to_string(axis))}, {"level", to_string(p[axis])}};
  j["period"] = q ? json(*q) : json(nullptr);
  with_output(cfg, out, [&](std::ostream& os) { emit_json(j, os); });
  return kOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const Mode mode = parse_mode(cfg.mode);
  const BoundaryTraces b = parse_traces(require(cfg.traces, "traces"), mode);
  const TracePoint p = parse_point(require(cfg.point, "point"), mode);
  DensityScanOptions opt;
  opt.eps = cfg.eps;
  opt.budget = cfg.budget;
  opt.seed = cfg.seed;
  const DensityReport r = density_scan(b, p, opt);
  json j;
  j["eps"] = format_double(cfg.eps);
  j["budget"] = cfg.budget;
  j["seed"] = cfg.seed;
  j["orbit_points"] = r.orbit_points;
  j["grid_points"] = r.grid_points;
  j["covered_points"] = r.covered_points;
  if (mode == Mode::Exact && r.grid_points > 0) {
    j["covered_fraction"] = to_string(Rational(static_cast<unsigned long>(r.covered_points),
                                               static_cast<unsigned long>(r.grid_points)));
  } else {
    j["covered_fraction"] = r.covered_fraction;
  }
  j["truncated"] = r.truncated;
  with_output(cfg, out, [&](std::ostream& os) { emit_json(j, os); });
  return kOk;
}

std::vector<Rational> parse_coeff_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(parse_rational(t));
  }
  if (out.empty()) throw UsageError("--coeffs must list at least one rational");
  return out;
}

int cmd_cj(const RunConfig& cfg, std::ostream& out) {
  json j;
  bool ok = true;
  if (cfg.verify_list) {
    json list = json::array();
    const auto record = [&](int index, const CJRelation& rel, const std::string& note) {
      const CycloElement r = eval_exact(rel);
      const bool zero = r.is_zero();
      ok = ok && zero;
      json e{{"family", index}, {"relation", rel.to_string()}, {"residual", zero ? "exact zero residual" : r.to_string()}};
      if (!note.empty()) e["note"] = note;
      list.push_back(e);
    };
    const auto& fixed = fixed_identities();
    record(fixed[0].index, fixed[0].relation, "");
    const AngleFraction t = AngleFraction::make(1, 12);
    record(2, t_family_relation(t), "t = " + t.to_string() + "*pi");
    for (std::size_t i = 1; i < fixed.size(); ++i) record(fixed[i].index, fixed[i].relation, "");
    j["identities"] = list;
    j["all_zero"] = ok;
  } else {
    SearchOptions opt;
    opt.max_q = cfg.max_q;
    opt.max_terms = cfg.max_terms;
    opt.coeffs = parse_coeff_list(cfg.coeffs);
    const auto found = bounded_search(opt);
    json list = json::array();
    for (const auto& f : found) {
      ok = ok && f.match.kind != FamilyKind::Unclassified;
      list.push_back({{"relation", f.relation.to_string()},
                      {"terms", terms_json(f.relation)},
                      {"rhs", f.relation.rhs.get_str()},
                      {"kind", std::string(to_string(f.match.kind))},
                      {"family", f.match.describe()}});
    }
    j["max_q"] = cfg.max_q;
    j["max_terms"] = cfg.max_terms;
    j["count"] = found.size();
    j["relations"] = list;
    j["all_classified"] = ok;
  }
  with_output(cfg, out, [&](std::ostream& os) { emit_json(j, os); });
  return ok ? kOk : kCheckFailed;
}

int cmd_filtration(const RunConfig& cfg, std::ostream& out) {
  const Mode mode = parse_mode(cfg.mode);
  const FiltrationLevel level = filtration(cfg.n);
  json list = json::array();
  for (const auto& a : level.elements) {
    json e{{"p", a.num()}, {"q", a.den()}};
    if (a.den() <= 3) {
      // Niven: the only rational values are 0 (q = 2) and ±1 (q = 3)
      e["value"] = a.den() == 2 ? "0" : (a.num() == 1 ? "1" : "-1");
    } else if (mode == Mode::Float) {
      e["value"] = a.trace_value();
    } else {
      e["value"] = "2cos(" + a.to_string() + "*pi)";
    }
    list.push_back(e);
  }
  json j{{"n", cfg.n}, {"count", level.elements.size()}, {"elements", list}};
  with_output(cfg, out, [&](std::ostream& os) { emit_json(j, os); });
  return kOk;
}

int cmd_example5(const RunConfig& cfg, std::ostream& out) {
  const RepFour rep = exceptional_example();
  const TraceCoordinates tc = trace_coordinates(rep);
  const Rational seven_quarters(7, 4);
  json checks = json::array();
  bool ok = true;
  const auto check = [&](const std::string& name, bool pass) {
    ok = ok && pass;
    checks.push_back({{"check", name}, {"pass", pass}});
  };

  const BoundaryTraces expected = BoundaryTraces::make(Rational(1), Rational(1), seven_quarters, Rational(-seven_quarters));
  check("boundary traces (1, 1, 7/4, -7/4)", tc.traces.a() == expected.a() && tc.traces.b() == expected.b() &&
                                                 tc.traces.c() == expected.c() && tc.traces.d() == expected.d());
  const TracePoint p0{Rational(-1), Rational(0), Rational(0)};
  check("trace point (-1, 0, 0)", tc.point == p0);
  check("tr D = -7/4", rep.D.trace() == -seven_quarters);
  check("A*B*C*D = I", (rep.A * rep.B * rep.C * rep.D).is_identity());
  check("kappa = 0", kappa(tc.traces, tc.point).is_zero());

  const OrbitResult orbit = enumerate_orbit(tc.traces, tc.point, 10000);
  const ExceptionalFamily fam = exceptional_family(Rational(1), seven_quarters);
  std::set<std::string> got, want;
  for (const auto& q : orbit.points) got.insert(to_string(q));
  for (const auto& q : fam.special_orbit) want.insert(to_string(q));
  check("orbit is finite", orbit.status == OrbitStatus::Finite);
  check("orbit = {(-1, 0, 0), (-17/16, 0, 0)}", got == want && orbit.cardinality() == 2);
  check("orbit closed under all generators", is_closed_under_generators(tc.traces, orbit.points));
  check("(1, 7/4) in F", is_in_F(Rational(1), seven_quarters));
  const DensityIngredients ing = density_ingredients(rep);
  check("image is non-abelian", ing.non_abelian);
  check("twist action on the point is nontrivial", ing.nontrivial_action);
  check("elliptic boundary element of infinite order", ing.irrational_elliptic);

  json orbit_json = json::array();
  for (const auto& q : orbit.points) orbit_json.push_back(point_json(q));
  json j;
  j["matrices"] = {{"A", rep.A.to_string()}, {"B", rep.B.to_string()}, {"C", rep.C.to_string()}, {"D", rep.D.to_string()}};
  j["traces"] = json::array({to_string(tc.traces.a()), to_string(tc.traces.b()), to_string(tc.traces.c()),
                             to_string(tc.traces.d())});
  j["point"] = point_json(tc.point);
  j["orbit"] = orbit_json;
  j["minimality_criterion"] = minimality_criterion(tc.traces);
  j["checks"] = checks;
  j["all_pass"] = ok;
  with_output(cfg, out, [&](std::ostream& os) { emit_json(j, os); });
  return ok ? kOk : kCheckFailed;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> values;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '-', '_');
    values[key] = value;
  }
  return values;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& values) {
  const auto to_bool = [](const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError("expected a boolean, got '" + v + "'");
  };
  for (const auto& [key, v] : values) {
    try {
      if (key == "command") cfg.command = v;
      else if (key == "traces") cfg.traces = v;
      else if (key == "point") cfg.point = v;
      else if (key == "word") cfg.word = v;
      else if (key == "axis") cfg.axis = v;
      else if (key == "eps") cfg.eps = std::stod(v);
      else if (key == "budget") cfg.budget = std::stoull(v);
      else if (key == "max_q") cfg.max_q = std::stoi(v);
      else if (key == "max_terms") cfg.max_terms = std::stoi(v);
      else if (key == "coeffs") cfg.coeffs = v;
      else if (key == "seed") cfg.seed = std::stoull(v, nullptr, 0);
      else if (key == "output") cfg.output = v;
      else if (key == "mode") cfg.mode = v;
      else if (key == "n") cfg.n = std::stoi(v);
      else if (key == "verify_list") cfg.verify_list = to_bool(v);
      else throw UsageError("unknown config key '" + key + "'");
    } catch (const std::logic_error&) {
      throw UsageError("config key '" + key + "': invalid value '" + v + "'");
    }
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.budget == 0) throw UsageError("--budget must be positive");
    if (!(cfg.eps > 0)) throw UsageError("--eps must be positive");
    parse_mode(cfg.mode);
    parse_axis(cfg.axis);
    const std::string& c = cfg.command;
    if (c == "classify") return cmd_classify(cfg, out);
    if (c == "orbit") return cmd_orbit(cfg, out, err);
    if (c == "twist") return cmd_twist(cfg, out);
    if (c == "period") return cmd_period(cfg, out);
    if (c == "scan") return cmd_scan(cfg, out);
    if (c == "cj") return cmd_cj(cfg, out);
    if (c == "filtration") return cmd_filtration(cfg, out);
    if (c == "example5") return cmd_example5(cfg, out);
    throw UsageError(c.empty() ? "no command given" : "unknown command '" + c + "'");
  } catch (const InternalCheckFailure& e) {
    err << "error: internal check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mapping class group dynamics on SL(2) character varieties of the four-holed sphere"};
  app.allow_extras(false);

  std::string command, config_path;
  RunConfig flags;
  app.add_option("command", command, "classify | orbit | twist | period | scan | cj | filtration | example5");
  app.add_option("--config", config_path, "Flat key = value file; flags override it");
  auto* o_traces = app.add_option("--traces", flags.traces, "Boundary traces a,b,c,d (p/q or decimals)");
  auto* o_point = app.add_option("--point", flags.point, "Trace point x,y,z");
  auto* o_word = app.add_option("--word", flags.word, "Twist word, e.g. XYx (lower case = inverse)");
  auto* o_axis = app.add_option("--axis", flags.axis, "X, Y or Z");
  auto* o_eps = app.add_option("--eps", flags.eps, "Density radius");
  auto* o_budget = app.add_option("--budget", flags.budget, "Point budget");
  auto* o_max_q = app.add_option("--max-q", flags.max_q, "Largest angle denominator for cj search");
  auto* o_max_terms = app.add_option("--max-terms", flags.max_terms, "Most cosine terms for cj search");
  auto* o_coeffs = app.add_option("--coeffs", flags.coeffs, "Coefficient set for cj search");
  auto* o_seed = app.add_option("--seed", flags.seed, "Random seed for scan");
  auto* o_output = app.add_option("--output", flags.output, "Data file (default: standard output)");
  auto* o_mode = app.add_option("--mode", flags.mode, "exact | float");
  auto* o_n = app.add_option("--n", flags.n, "Filtration level");
  auto* o_verify = app.add_flag("--verify-list", flags.verify_list, "Check the listed cosine identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalidInput;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot read config file '" + config_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      apply_config(cfg, parse_config_text(buf.str()));
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  if (!command.empty()) cfg.command = command;
  if (o_traces->count()) cfg.traces = flags.traces;
  if (o_point->count()) cfg.point = flags.point;
  if (o_word->count()) cfg.word = flags.word;
  if (o_axis->count()) cfg.axis = flags.axis;
  if (o_eps->count()) cfg.eps = flags.eps;
  if (o_budget->count()) cfg.budget = flags.budget;
  if (o_max_q->count()) cfg.max_q = flags.max_q;
  if (o_max_terms->count()) cfg.max_terms = flags.max_terms;
  if (o_coeffs->count()) cfg.coeffs = flags.coeffs;
  if (o_seed->count()) cfg.seed = flags.seed;
  if (o_output->count()) cfg.output = flags.output;
  if (o_mode->count()) cfg.mode = flags.mode;
  if (o_n->count()) cfg.n = flags.n;
  if (o_verify->count()) cfg.verify_list = flags.verify_list;
  return run(cfg, out, err);
}

}  // namespace charvar::cli
