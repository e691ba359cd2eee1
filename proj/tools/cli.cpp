#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "einhom/errors.hpp"
#include "einhom/lie_oracle.hpp"

namespace einhom::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << v;
  return os.str();
}

std::string fmt_fixed(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << std::fixed << v;
  return os.str();
}

// Writes to --output when given, otherwise to out.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output_path) {
    std::ofstream f(*cfg.output_path);
    if (!f) throw DomainError("cannot write " + *cfg.output_path);
    f << text;
  } else {
    out << text;
  }
}

std::string family_name(GroupFamily f) { return f == GroupFamily::Orthogonal ? "SO" : "Sp"; }

std::string space_name(const SpaceSpec& spec) {
  const std::string g = family_name(spec.family());
  std::string name = g + "(" + std::to_string(spec.n()) + ")";
  if (spec.t() == 0) return name;
  name += "/";
  for (int i = spec.s() + 1; i <= spec.block_count(); ++i)
    name += (i > spec.s() + 1 ? "x" : "") + g + "(" + std::to_string(spec.block(i)) + ")";
  return name;
}

std::string solution_line(const EinsteinSolution& sol) {
  std::ostringstream os;
  os << family_label(sol.family) << ":";
  const auto mods = sol.spec.modules();
  if (!sol.closed_form.empty() && sol.closed_form.size() == mods.size()) {
    for (std::size_t i = 0; i < mods.size(); ++i) os << ' ' << mods[i].to_string() << '=' << sol.closed_form[i].to_string();
    os << "\n   ";
  }
  const auto vals = sol.metric.values();
  for (std::size_t i = 0; i < mods.size(); ++i) os << ' ' << mods[i].to_string() << '=' << fmt_fixed(vals[i].get_d());
  os << "\n    lambda=" << fmt_double(sol.certificate.lambda) << " residual=" << fmt_double(sol.certificate.residual_inf)
     << (sol.certificate.exact_zero ? " (exact)" : "") << " S=" << fmt_double(sol.certificate.scalar_curvature);
  if (sol.full_system_residual) os << " system_residual=" << fmt_double(*sol.full_system_residual);
  if (sol.y_exceeds_x) os << " y>x=" << (*sol.y_exceeds_x ? "yes" : "no");
  if (sol.flagged) os << " FLAGGED";
  if (!sol.note.empty()) os << "\n    note: " << sol.note;
  os << '\n';
  return os.str();
}

}  // namespace

// ------------------------------------------------------------------ parsing

IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    IntRange r{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    if (r.lo > r.hi) throw DomainError("empty range '" + text + "'");
    return r;
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError("bad range '" + text + "'");
  }
}

std::vector<int> parse_blocks(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stoi(cell));
    } catch (const std::logic_error&) {
      throw DomainError("bad block list '" + text + "'");
    }
  }
  if (out.empty()) throw DomainError("empty block list");
  return out;
}

SolverOptions RunConfig::solver_options() const {
  SolverOptions o;
  o.tolerance = tolerance;
  o.root_eps = root_eps;
  return o;
}

double tolerance_from_environment() {
  if (const char* env = std::getenv("EINSTEIN_HOMOG_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0) return v;
    } catch (const std::logic_error&) {
    }
  }
  return default_residual_tolerance();
}

// --------------------------------------------------------------------- JSON

ordered_json spec_to_json(const SpaceSpec& spec) {
  return {{"family", std::string(family_tag(spec.family()))}, {"blocks", spec.blocks()}, {"s", spec.s()}, {"t", spec.t()}};
}

SpaceSpec spec_from_json(const json& j) {
  return SpaceSpec(parse_family(j.at("family").get<std::string>()), j.at("blocks").get<std::vector<int>>(),
                   j.at("s").get<int>(), j.at("t").get<int>());
}

ordered_json solution_to_json(const EinsteinSolution& sol) {
  ordered_json j;
  j["family_label"] = std::string(family_label(sol.family));
  ordered_json params = ordered_json::object();
  const auto mods = sol.spec.modules();
  const auto vals = sol.metric.values();
  for (std::size_t i = 0; i < mods.size(); ++i) params[mods[i].to_string()] = to_decimal_string(vals[i]);
  j["params"] = params;
  j["lambda"] = sol.certificate.lambda;
  j["residual"] = sol.certificate.residual_inf;
  j["scalar_curvature"] = sol.certificate.scalar_curvature;
  j["volume"] = sol.certificate.volume;
  j["exact"] = sol.certificate.exact_zero;
  j["exactness"] = sol.exactness == Exactness::ClosedForm ? "ClosedForm" : "IsolatedRoot";
  if (!sol.closed_form.empty()) {
    ordered_json cf = ordered_json::object();
    for (std::size_t i = 0; i < mods.size(); ++i) cf[mods[i].to_string()] = sol.closed_form[i].to_string();
    j["closed_form"] = cf;
  }
  if (sol.root)
    j["root_interval"] = {{"lo", to_fraction_string(sol.root->lo)},
                          {"hi", to_fraction_string(sol.root->hi)},
                          {"multiplicity", sol.root->multiplicity_hint}};
  if (sol.full_system_residual) j["full_system_residual"] = *sol.full_system_residual;
  if (sol.y_exceeds_x) j["y_exceeds_x"] = *sol.y_exceeds_x;
  j["flagged"] = sol.flagged;
  if (!sol.note.empty()) j["note"] = sol.note;
  return j;
}

MetricParams metric_from_json(const SpaceSpec& spec, const json& params) {
  std::map<ModuleId, Rational> values;
  for (const auto& [key, v] : params.items()) {
    const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    values[ModuleId::parse(key)] = parse_rational(text);
  }
  return MetricParams(spec, values);
}

ordered_json solutions_to_json(const SpaceSpec& spec, const std::vector<EinsteinSolution>& sols,
                               const std::vector<std::string>& notes) {
  ordered_json j;
  j["spec"] = spec_to_json(spec);
  j["solutions"] = ordered_json::array();
  for (const auto& s : sols) j["solutions"].push_back(solution_to_json(s));
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

// ----------------------------------------------------------------- commands

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const SolverOptions opts = cfg.solver_options();
  std::vector<EinsteinSolution> sols;
  std::vector<std::string> notes;
  std::optional<SpaceSpec> spec;
  switch (cfg.mode) {
    case SolveMode::Jensen:
      sols = jensen_solve(cfg.family, cfg.k1, cfg.k2, opts);
      spec = SpaceSpec(cfg.family, {cfg.k1, cfg.k2}, 1, 1);
      break;
    case SolveMode::Quartic: {
      sols = quartic_solve(cfg.family, cfg.k, cfg.l, opts);
      spec = SpaceSpec(cfg.family, {cfg.k, cfg.k, cfg.l}, 2, 1);
      const auto jensen = jensen_solve(cfg.family, 2 * cfg.k, cfg.l, opts);
      notes.push_back(std::to_string(jensen.size()) + " Jensen solutions (x1 = x2 = x(1,2)) also exist on " +
                      space_name(*spec));
      break;
    }
    case SolveMode::General:
      sols = general_solve(cfg.family, cfg.s, cfg.k, cfg.l, opts);
      spec = SpaceSpec::three_block(cfg.family, cfg.s, cfg.k, cfg.l);
      break;
  }
  sort_solutions(sols);
  bool flagged = false;
  for (const auto& s : sols) flagged = flagged || s.flagged;

  if (cfg.format == OutputFormat::Json) {
    emit(cfg, out, solutions_to_json(*spec, sols, notes).dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << space_name(*spec) << "  family=" << family_tag(cfg.family) << " blocks=";
    for (std::size_t i = 0; i < spec->blocks().size(); ++i) os << (i ? "," : "") << spec->blocks()[i];
    os << " s=" << spec->s() << " t=" << spec->t() << '\n';
    os << sols.size() << " solution(s)\n";
    for (std::size_t i = 0; i < sols.size(); ++i) os << "[" << i + 1 << "] " << solution_line(sols[i]);
    for (const auto& n : notes) os << "note: " << n << '\n';
    emit(cfg, out, os.str());
  }
  return flagged ? kCertification : kOk;
}

int cmd_tables(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto ks = int_range(cfg.k_range.lo, cfg.k_range.hi);
  const auto ls = int_range(cfg.l_range.lo, cfg.l_range.hi);
  if (cfg.family == GroupFamily::Orthogonal && cfg.k_range.lo < 3) throw DomainError("tables: orthogonal family needs k >= 3");
  if (cfg.k_range.lo < 1 || cfg.l_range.lo < 1) throw DomainError("tables: k and l must be positive");
  const CountGrid grid = table_sweep(cfg.family, ks, ls);
  const auto mismatches = compare_with_reference(cfg.family, grid);

  if (cfg.format == OutputFormat::Csv) {
    emit(cfg, out, grid_to_csv(grid));
  } else {
    if (cfg.output_path) emit(cfg, out, grid_to_csv(grid));
    out << "Number of positive roots of the " << (cfg.family == GroupFamily::Orthogonal ? "orthogonal" : "symplectic")
        << " quartic\n"
        << grid_to_text(grid);
  }
  for (const auto& m : mismatches) err << "mismatch: " << m << '\n';
  if (!mismatches.empty()) return kTableMismatch;
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  if (!cfg.input_path) throw DomainError("verify: --input is required");
  std::ifstream f(*cfg.input_path);
  if (!f) throw DomainError("verify: cannot read " + *cfg.input_path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw DomainError(std::string("verify: malformed JSON: ") + e.what());
  }

  std::vector<MetricParams> metrics;
  SpaceSpec spec = [&] {
    try {
      return spec_from_json(doc.at("spec"));
    } catch (const json::exception& e) {
      throw DomainError(std::string("verify: bad spec: ") + e.what());
    }
  }();
  try {
    if (doc.contains("solutions")) {
      for (const auto& s : doc.at("solutions")) metrics.push_back(metric_from_json(spec, s.at("params")));
    } else {
      metrics.push_back(metric_from_json(spec, doc.at("params")));
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("verify: bad params: ") + e.what());
  }

  bool all_ok = !metrics.empty();
  ordered_json report;
  report["spec"] = spec_to_json(spec);
  report["tolerance"] = cfg.tolerance;
  report["certificates"] = ordered_json::array();
  std::ostringstream text;
  text << space_name(spec) << ", tolerance " << fmt_double(cfg.tolerance) << '\n';
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const auto c = verify_einstein(spec, metrics[i]);
    const bool ok = c.accepted(cfg.tolerance);
    all_ok = all_ok && ok;
    report["certificates"].push_back({{"lambda", c.lambda},
                                      {"residual", c.residual_inf},
                                      {"exact", c.exact_zero},
                                      {"scalar_curvature", c.scalar_curvature},
                                      {"volume", c.volume},
                                      {"einstein", ok}});
    text << "[" << i + 1 << "] " << (ok ? "PASS" : "FAIL") << " residual=" << fmt_double(c.residual_inf)
         << (c.exact_zero ? " (exact)" : "") << " lambda=" << fmt_double(c.lambda)
         << " S=" << fmt_double(c.scalar_curvature) << '\n';
  }
  emit(cfg, out, cfg.format == OutputFormat::Json ? report.dump(2) + "\n" : text.str());
  return all_ok ? kOk : kCertification;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  if (cfg.blocks.empty()) throw DomainError("oracle: --blocks is required");
  const int len = static_cast<int>(cfg.blocks.size());
  const int s = cfg.oracle_s.value_or(len > 1 ? len - 1 : 1);
  const SpaceSpec spec(cfg.family, cfg.blocks, s, len - s);
  const OracleReport rep = oracle_report(spec);
  const bool ok = rep.passed(1e-9);

  if (cfg.format == OutputFormat::Json) {
    ordered_json j;
    j["spec"] = spec_to_json(spec);
    j["symbols"] = ordered_json::array();
    for (const auto& r : rep.symbols)
      j["symbols"].push_back({{"triple", {r.key[0].to_string(), r.key[1].to_string(), r.key[2].to_string()}},
                              {"closed", r.closed},
                              {"brute", r.brute}});
    j["ratios"] = ordered_json::array();
    for (const auto& r : rep.ratios)
      j["ratios"].push_back({{"blocks", r.blocks}, {"size", r.size}, {"closed", r.closed}, {"measured", r.measured},
                             {"ratio_sum_deviation", r.ratio_sum_deviation}});
    j["max_symbol_deviation"] = rep.max_symbol_deviation;
    j["max_ratio_deviation"] = rep.max_ratio_deviation;
    j["ad_invariance"] = rep.checks.ad_invariance;
    j["bracket_consistency"] = rep.checks.bracket_consistency;
    j["min_gram_eigenvalue"] = rep.checks.min_gram_eigenvalue;
    j["error_bound"] = rep.error_bound;
    j["passed"] = ok;
    emit(cfg, out, j.dump(2) + "\n");
    return ok ? kOk : kCertification;
  }

  std::ostringstream os;
  os << "oracle for " << family_tag(cfg.family) << '(' << spec.n() << ") blocks=";
  for (int i = 0; i < len; ++i) os << (i ? "," : "") << cfg.blocks[static_cast<std::size_t>(i)];
  os << " s=" << s << '\n';
  os << std::left << std::setw(30) << "triple" << std::setw(22) << "closed form" << std::setw(22) << "brute force"
     << "deviation\n";
  for (const auto& r : rep.symbols) {
    const std::string key = "[" + r.key[0].to_string() + " " + r.key[1].to_string() + " " + r.key[2].to_string() + "]";
    os << std::setw(30) << key << std::setw(22) << fmt_fixed(r.closed) << std::setw(22) << fmt_fixed(r.brute)
       << fmt_double(std::abs(r.closed - r.brute)) << '\n';
  }
  os << "\nKilling ratios of block subalgebras\n";
  for (const auto& r : rep.ratios) {
    std::string b;
    for (std::size_t i = 0; i < r.blocks.size(); ++i) b += (i ? "+" : "") + std::to_string(r.blocks[i]);
    os << "  blocks " << std::setw(8) << b << " k=" << std::setw(3) << r.size << " closed=" << fmt_fixed(r.closed)
       << " measured=" << fmt_fixed(r.measured) << " per-index dev=" << fmt_double(r.ratio_sum_deviation) << '\n';
  }
  os << "\nmax symbol deviation " << fmt_double(rep.max_symbol_deviation) << ", max ratio deviation "
     << fmt_double(rep.max_ratio_deviation) << ", ad-invariance " << fmt_double(rep.checks.ad_invariance)
     << ", bracket consistency " << fmt_double(rep.checks.bracket_consistency) << '\n';
  os << (ok ? "PASS" : "FAIL") << '\n';
  emit(cfg, out, os.str());
  return ok ? kOk : kCertification;
}

int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const ManyMetricsPlan plan = plan_many_metrics(cfg.family, cfg.p, cfg.solver_options());
  const bool ok = plan.all_certified && plan.metrics.size() >= static_cast<std::size_t>(2 * cfg.p) && plan.min_distance > 1e-6;
  if (cfg.format == OutputFormat::Json) {
    ordered_json j;
    j["family"] = std::string(family_tag(plan.family));
    j["p"] = plan.p;
    j["n"] = plan.n;
    j["l"] = plan.l;
    j["primes"] = plan.primes;
    j["instances"] = ordered_json::array();
    for (const auto& inst : plan.instances) {
      auto sols = inst.solutions;
      sort_solutions(sols);
      ordered_json ij = solutions_to_json(inst.spec, sols);
      ij["k"] = inst.k;
      ij["s"] = inst.s;
      j["instances"].push_back(ij);
    }
    j["non_jensen_metrics"] = plan.metrics.size();
    j["min_profile_distance"] = plan.min_distance;
    j["certified"] = ok;
    emit(cfg, out, j.dump(2) + "\n");
    return ok ? kOk : kCertification;
  }
  std::ostringstream os;
  const std::string g = family_name(plan.family);
  os << g << '(' << plan.n << ")/" << g << '(' << plan.l << "), n - l = " << plan.n - plan.l << " with prime factors";
  for (int a : plan.primes) os << ' ' << a;
  os << '\n';
  for (const auto& inst : plan.instances) {
    auto sols = inst.solutions;
    sort_solutions(sols);
    os << "k=" << inst.k << " s=" << inst.s << ": " << sols.size() << " solution(s)\n";
    for (const auto& sol : sols) os << "  " << solution_line(sol);
  }
  os << plan.metrics.size() << " non-Jensen metrics, min pairwise profile distance " << fmt_double(plan.min_distance)
     << '\n'
     << (ok ? "PASS" : "FAIL") << '\n';
  emit(cfg, out, os.str());
  return ok ? kOk : kCertification;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Solve: return cmd_solve(cfg, out, err);
      case Command::Tables: return cmd_tables(cfg, out, err);
      case Command::Verify: return cmd_verify(cfg, out, err);
      case Command::Oracle: return cmd_oracle(cfg, out, err);
      case Command::Plan: return cmd_plan(cfg, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

// -------------------------------------------------------------------- argv

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant Einstein metrics on SO(n)/SO(l) and Sp(n)/Sp(l)", "einhom"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.tolerance = tolerance_from_environment();
  std::string family = "so", format, range_k, range_l, blocks, eps;
  std::optional<double> tol;

  const std::map<std::string, GroupFamily> families{{"so", GroupFamily::Orthogonal}, {"sp", GroupFamily::Symplectic}};
  auto common = [&](CLI::App* sub, const std::string& formats) {
    sub->add_option("--family", family, "so or sp")->check(CLI::IsMember({"so", "sp"}));
    sub->add_option("--format", format, formats);
    sub->add_option("--output,-o", cfg.output_path, "write the main output to a file");
    sub->add_option("--tol", tol, "residual tolerance (overrides EINSTEIN_HOMOG_TOL)")->check(CLI::PositiveNumber);
  };

  auto* solve = app.add_subcommand("solve", "Einstein metrics of one family");
  common(solve, "json or text");
  bool jensen = false, quartic = false, general = false;
  auto* oj = solve->add_flag("--jensen", jensen, "two-block Jensen metrics, needs --k1 --k2");
  auto* oq = solve->add_flag("--quartic", quartic, "blocks (k,k,l), needs --k --l");
  auto* og = solve->add_flag("--general", general, "s blocks of k and one of l, needs --s --k --l");
  oj->excludes(oq)->excludes(og);
  oq->excludes(og);
  solve->add_option("--k1", cfg.k1);
  solve->add_option("--k2", cfg.k2);
  solve->add_option("--k", cfg.k);
  solve->add_option("--l", cfg.l);
  solve->add_option("--s", cfg.s);
  solve->add_option("--eps", eps, "root refinement target as a rational, default 1e-12");

  auto* tables = app.add_subcommand("tables", "root-count grid of the quartic");
  common(tables, "csv or text");
  tables->add_option("--k", range_k, "k range, e.g. 3..20");
  tables->add_option("--l", range_l, "l range, e.g. 1..20");

  auto* verify = app.add_subcommand("verify", "certify metrics from a JSON file");
  common(verify, "json or text");
  verify->add_option("--input,-i", cfg.input_path, "solution or metric JSON")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force structure constants against the closed forms");
  common(oracle, "json or text");
  oracle->add_option("--blocks", blocks, "block sizes, e.g. 2,3")->required();
  oracle->add_option("--s", cfg.oracle_s, "number of non-isotropy blocks (default: all but the last)");

  auto* plan = app.add_subcommand("plan", "many Einstein metrics on one space");
  common(plan, "json or text");
  plan->add_option("--p", cfg.p, "number of distinct prime factors")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    cfg.family = families.at(family);
    if (tol) cfg.tolerance = *tol;
    if (!eps.empty()) {
      cfg.root_eps = parse_rational(eps);
      if (cfg.root_eps <= 0) throw DomainError("--eps must be positive");
    }
    auto set_format = [&](OutputFormat fallback, std::initializer_list<std::string> allowed) {
      if (format.empty()) {
        cfg.format = fallback;
        return;
      }
      if (std::find(allowed.begin(), allowed.end(), format) == allowed.end())
        throw DomainError("unsupported --format '" + format + "'");
      cfg.format = format == "json" ? OutputFormat::Json : format == "csv" ? OutputFormat::Csv : OutputFormat::Text;
    };

    if (solve->parsed()) {
      cfg.command = Command::Solve;
      set_format(OutputFormat::Text, {"json", "text"});
      if (jensen) {
        cfg.mode = SolveMode::Jensen;
        if (solve->count("--k1") == 0 || solve->count("--k2") == 0) throw DomainError("--jensen needs --k1 and --k2");
      } else if (quartic) {
        cfg.mode = SolveMode::Quartic;
        if (solve->count("--k") == 0 || solve->count("--l") == 0) throw DomainError("--quartic needs --k and --l");
      } else if (general) {
        cfg.mode = SolveMode::General;
        if (solve->count("--s") == 0 || solve->count("--k") == 0 || solve->count("--l") == 0)
          throw DomainError("--general needs --s, --k and --l");
      } else {
        throw DomainError("solve needs one of --jensen, --quartic, --general");
      }
    } else if (tables->parsed()) {
      cfg.command = Command::Tables;
      set_format(OutputFormat::Text, {"csv", "text"});
      if (!range_k.empty()) cfg.k_range = parse_range(range_k);
      if (!range_l.empty()) cfg.l_range = parse_range(range_l);
    } else if (verify->parsed()) {
      cfg.command = Command::Verify;
      set_format(OutputFormat::Text, {"json", "text"});
    } else if (oracle->parsed()) {
      cfg.command = Command::Oracle;
      set_format(OutputFormat::Text, {"json", "text"});
      cfg.blocks = parse_blocks(blocks);
    } else if (plan->parsed()) {
      cfg.command = Command::Plan;
      set_format(OutputFormat::Text, {"json", "text"});
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return run(cfg, out, err);
}

}  // namespace einhom::cli
