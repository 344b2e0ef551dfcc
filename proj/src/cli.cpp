#include "qdeg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdeg/degree_lab.hpp"
#include "qdeg/errors.hpp"
#include "qdeg/parallel.hpp"
#include "qdeg/polyx.hpp"
#include "qdeg/qsym.hpp"

namespace qdeg {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json cost_json(const PathCost& c) { return {{"grover", c.grover}, {"verify", c.verify}, {"total", c.total}}; }

struct TargetOptions {
  std::string family;
  std::string spectrum_file;
};

struct Target {
  std::string name;
  SymmetricFunction f;
};

Target load_target(const TargetOptions& opt, std::optional<int> n) {
  if (!opt.spectrum_file.empty()) {
    std::ifstream in(opt.spectrum_file);
    if (!in) throw ParameterError("cannot open spectrum file " + opt.spectrum_file);
    std::stringstream text;
    text << in.rdbuf();
    SymmetricFunction f = SymmetricFunction::parse_text(text.str());
    if (n && *n != f.arity()) throw ParameterError("--n disagrees with the spectrum file");
    return {"custom", std::move(f)};
  }
  if (opt.family.empty()) throw ParameterError("one of --family or --spectrum-file is required");
  if (!n) throw ParameterError("--n is required with --family");
  const FamilySpec spec = FamilySpec::parse(opt.family);
  return {spec.name(), make_named(spec, *n)};
}

int jump_or_zero(const SymmetricFunction& f) { return f.is_constant() ? 0 : jump_parameter(f); }

json spectrum_json(const SymmetricFunction& f) {
  return std::vector<int>(f.spectrum().begin(), f.spectrum().end());
}

void add_target_options(CLI::App* cmd, TargetOptions& opt) {
  cmd->add_option("--family", opt.family, "or, and, parity, majority, threshold<k> or threshold:<k>");
  cmd->add_option("--spectrum-file", opt.spectrum_file, "function in the 'n= <n>' spectrum text format")
      ->check(CLI::ExistingFile);
}

// ---- simulate --------------------------------------------------------------

struct SimulateOptions {
  TargetOptions target;
  std::optional<int> n;
  double eps = 1.0 / 3.0;
  std::uint64_t seed = 1;
  std::string mode = "enumerate";
  int budget = 0;
  std::size_t nodes = ExecutionConfig{}.node_budget;
  std::string input;
  unsigned workers = 0;
};

std::vector<BitString> inputs_for(int n, const std::string& input, int budget) {
  if (!input.empty()) {
    BitString x = BitString::parse(input);
    if (x.size() != n) throw ParameterError("--input length does not match n");
    return {x};
  }
  if (n > budget) {
    throw ResourceError("exhaustive run over 2^" + std::to_string(n) + " inputs exceeds the enumeration budget n <= " +
                            std::to_string(budget) + " (raise --budget or QDEG_BUDGET, or pass --input)",
                        0.0);
  }
  std::vector<BitString> xs;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) xs.emplace_back(n, b);
  return xs;
}

bool cmd_simulate(const SimulateOptions& opt, bool as_json, std::ostream& out) {
  const Target target = load_target(opt.target, opt.n);
  const SymmetricFunction& f = target.f;
  const int n = f.arity();
  const int t = jump_or_zero(f);
  const int budget = t == 0 ? 0 : query_budget(n, t, opt.eps);
  const Algorithm<int> alg = evaluate_symmetric(f, opt.eps);
  const auto xs = inputs_for(n, opt.input, opt.budget);

  json doc = {{"command", "simulate"}, {"function", target.name}, {"spectrum", spectrum_json(f)},
              {"n", n},                {"t", t},                  {"eps", opt.eps},
              {"mode", opt.mode},      {"query_budget", budget}};
  bool passed = true;

  if (opt.mode == "enumerate") {
    ExecutionConfig config;
    config.node_budget = opt.nodes;
    struct Row {
      InputReport report;
      double p_one = 0.0;
    };
    const auto rows = parallel_map(
        xs.size(),
        [&](std::size_t i) {
          const auto tree = run_enumerated(alg, PhaseOracle(xs[i]), config);
          Row r;
          r.report.input = xs[i];
          r.report.expected = f(xs[i]);
          r.report.error_mass = tree.mass_where([&](int v) { return v != r.report.expected; });
          r.report.max_queries = tree.max_queries();
          r.report.leaves = tree.leaves.size();
          r.report.pruned_mass = tree.pruned_mass;
          r.p_one = tree.mass_of(1);
          return r;
        },
        opt.workers);
    double worst = 0.0;
    PathCost max_q;
    json inputs = json::array();
    if (!as_json) out << "input,weight,expected,p_one,error_mass,max_grover,max_verify,max_total,leaves,pruned_mass\n";
    for (const auto& r : rows) {
      const auto& in = r.report;
      worst = std::max(worst, in.error_mass);
      max_q.absorb(in.max_queries);
      if (as_json) {
        inputs.push_back({{"input", in.input.to_string()},
                          {"weight", in.input.weight()},
                          {"expected", in.expected},
                          {"p_one", r.p_one},
                          {"error_mass", in.error_mass},
                          {"max_queries", cost_json(in.max_queries)},
                          {"leaves", in.leaves},
                          {"pruned_mass", in.pruned_mass}});
      } else {
        out << in.input.to_string() << ',' << in.input.weight() << ',' << in.expected << ',' << num(r.p_one) << ','
            << num(in.error_mass) << ',' << in.max_queries.grover << ',' << in.max_queries.verify << ','
            << in.max_queries.total << ',' << in.leaves << ',' << num(in.pruned_mass) << '\n';
      }
    }
    const bool error_ok = worst <= opt.eps + kFeasibilityTolerance;
    const bool query_ok = static_cast<int>(max_q.total) <= budget;
    passed = error_ok && query_ok;
    if (as_json) {
      doc["inputs"] = inputs;
      doc["worst_error"] = worst;
      doc["max_queries"] = cost_json(max_q);
      doc["error_ok"] = error_ok;
      doc["query_ok"] = query_ok;
    } else {
      out << "# worst_error=" << num(worst) << " max_total=" << max_q.total << " query_budget=" << budget
          << " error_ok=" << error_ok << " query_ok=" << query_ok << '\n';
    }
  } else if (opt.mode == "sample") {
    json runs = json::array();
    if (!as_json) out << "input,weight,expected,output,correct,grover,verify,total\n";
    int wrong = 0;
    std::uint32_t max_total = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto run = run_sampled(alg, PhaseOracle(xs[i]), opt.seed + i);
      const int expected = f(xs[i]);
      const std::uint32_t total = run.queries.grover + run.queries.verify;
      wrong += run.result != expected;
      max_total = std::max(max_total, total);
      if (as_json) {
        json entry = {{"input", xs[i].to_string()}, {"weight", xs[i].weight()}, {"expected", expected},
                      {"output", run.result},       {"grover", run.queries.grover}, {"verify", run.queries.verify},
                      {"total", total}};
        if (xs.size() == 1) entry["transcript"] = run.transcript;
        runs.push_back(entry);
      } else {
        out << xs[i].to_string() << ',' << xs[i].weight() << ',' << expected << ',' << run.result << ','
            << (run.result == expected) << ',' << run.queries.grover << ',' << run.queries.verify << ',' << total
            << '\n';
        if (xs.size() == 1) {
          for (const auto& line : run.transcript) out << "# " << line << '\n';
        }
      }
    }
    passed = static_cast<int>(max_total) <= budget;
    if (as_json) {
      doc["seed"] = opt.seed;
      doc["runs"] = runs;
      doc["wrong"] = wrong;
      doc["max_total"] = max_total;
    } else {
      out << "# seed=" << opt.seed << " wrong=" << wrong << " max_total=" << max_total << " query_budget=" << budget
          << '\n';
    }
  } else {
    throw ParameterError("--mode must be sample or enumerate");
  }
  if (as_json) {
    doc["passed"] = passed;
    out << doc.dump(2) << '\n';
  } else {
    out << "# passed=" << passed << '\n';
  }
  return passed;
}

// ---- extract ---------------------------------------------------------------

struct ExtractOptions {
  TargetOptions target;
  std::optional<int> n;
  double eps = 1.0 / 3.0;
  int budget = 0;
  double tol = kCoefficientTolerance;
};

bool cmd_extract(const ExtractOptions& opt, bool as_json, std::ostream& out) {
  const Target target = load_target(opt.target, opt.n);
  const SymmetricFunction& f = target.f;
  const int n = f.arity();
  const AcceptanceSurface s = acceptance_surface(evaluate_symmetric(f, opt.eps), n, {}, opt.budget);
  const MultilinearPoly p = mobius_transform(s.values);
  const UnivariatePoly q = symmetrize(s.values, n);
  const int degree = poly_degree(p, opt.tol);
  const int two_t = 2 * static_cast<int>(s.max_queries.total);
  double surface_error = 0.0, sym_error = 0.0;
  for (std::uint64_t x = 0; x < s.values.size(); ++x) {
    surface_error = std::max(surface_error, std::abs(s.values[x] - f(BitString(n, x))));
  }
  for (int k = 0; k <= n; ++k) sym_error = std::max(sym_error, std::abs(q(k) - f.at_weight(k)));
  const bool degree_ok = degree <= two_t;
  const bool approx_ok = surface_error <= opt.eps + kFeasibilityTolerance && sym_error <= opt.eps + kFeasibilityTolerance;
  const bool passed = degree_ok && approx_ok;

  if (as_json) {
    json doc = {{"command", "extract"},
                {"function", target.name},
                {"spectrum", spectrum_json(f)},
                {"n", n},
                {"eps", opt.eps},
                {"max_queries", cost_json(s.max_queries)},
                {"two_T", two_t},
                {"degree", degree},
                {"degree_bound_ok", degree_ok},
                {"surface_error", surface_error},
                {"symmetrized_error", sym_error},
                {"approximation_ok", approx_ok},
                {"multilinear", p.to_json(opt.tol)},
                {"univariate", q.to_json(opt.tol)},
                {"passed", passed}};
    out << doc.dump(2) << '\n';
  } else {
    out << "section,key,value\n";
    const auto coeffs = p.coefficients();
    for (std::size_t sub = 0; sub < coeffs.size(); ++sub) {
      if (std::abs(coeffs[sub]) <= opt.tol) continue;
      std::string name;
      for (int i = 0; i < n; ++i) {
        if ((sub >> i) & 1U) name += (name.empty() ? "" : " ") + std::to_string(i + 1);
      }
      out << "multilinear," << (name.empty() ? "{}" : name) << ',' << num(coeffs[sub]) << '\n';
    }
    for (std::size_t j = 0; j < q.coefficients().size(); ++j) {
      out << "chebyshev," << j << ',' << num(q.coefficients()[j]) << '\n';
    }
    out << "summary,degree," << degree << '\n'
        << "summary,two_T," << two_t << '\n'
        << "summary,surface_error," << num(surface_error) << '\n'
        << "summary,symmetrized_error," << num(sym_error) << '\n'
        << "summary,degree_bound_ok," << degree_ok << '\n'
        << "summary,approximation_ok," << approx_ok << '\n'
        << "summary,passed," << passed << '\n';
  }
  return passed;
}

// ---- degree ----------------------------------------------------------------

struct DegreeOptions {
  TargetOptions target;
  std::vector<int> ns;
  std::vector<double> epss{1.0 / 3.0};
  bool band = false;
  bool threshold_band = false;
  std::vector<int> taus{1, 2, 4};
  double width = 4.0;
  std::vector<std::string> checks;
  unsigned workers = 0;
};

bool cmd_degree(const DegreeOptions& opt, bool as_json, std::ostream& out) {
  if (opt.threshold_band) {
    if (opt.ns.empty()) throw ParameterError("--threshold-band needs --n");
    const ThresholdReport r = threshold_band(opt.taus, opt.ns, opt.workers);
    if (as_json) {
      out << to_json(r).dump(2) << '\n';
    } else {
      out << "tau,n,t,deg_13,ratio\n";
      for (const auto& row : r.rows) {
        out << row.tau << ',' << row.n << ',' << row.t << ',' << row.deg_13 << ',' << num(row.ratio) << '\n';
      }
      out << "# min_ratio=" << num(r.min_ratio) << " max_ratio=" << num(r.max_ratio) << '\n';
    }
    return true;
  }
  if (opt.band) {
    if (opt.target.family.empty()) throw ParameterError("--band needs --family");
    if (opt.ns.empty()) throw ParameterError("--band needs --n");
    const BandReport r = degree_band(FamilySpec::parse(opt.target.family), opt.ns, opt.epss, opt.width, opt.workers);
    if (as_json) {
      out << to_json(r).dump(2) << '\n';
    } else {
      out << csv_header() << ",in_band\n";
      for (const auto& row : r.rows) out << to_csv(row) << ',' << row.in_band << '\n';
      out << "# min_ratio=" << num(r.min_ratio) << " max_ratio=" << num(r.max_ratio)
          << " width_bound=" << num(r.width_bound) << " within_width=" << r.within_width
          << " monotone_n=" << r.monotone_n << " monotone_eps=" << r.monotone_eps << " passed=" << r.passed() << '\n';
    }
    return r.passed();
  }

  bool want_lower = false, want_upper = false;
  for (const auto& c : opt.checks) {
    if (c == "lower") {
      want_lower = true;
    } else if (c == "upper") {
      want_upper = true;
    } else {
      throw ParameterError("--check accepts lower and upper");
    }
  }
  std::vector<std::optional<int>> ns;
  if (opt.ns.empty()) {
    ns.emplace_back();
  } else {
    ns.assign(opt.ns.begin(), opt.ns.end());
  }
  struct Row {
    BandRow band;
    std::optional<LowerBoundReport> lower;
    std::optional<UpperBoundReport> upper;
  };
  const std::size_t cols = opt.epss.size();
  const auto rows = parallel_map(
      ns.size() * cols,
      [&](std::size_t idx) {
        const Target target = load_target(opt.target, ns[idx / cols]);
        const SymmetricFunction& f = target.f;
        const double eps = opt.epss[idx % cols];
        Row row;
        row.band.family = target.name;
        row.band.n = f.arity();
        row.band.t = jump_or_zero(f);
        row.band.eps = eps;
        row.band.deg_eps = approx_degree(f, eps);
        row.band.deg_13 = approx_degree(f, 1.0 / 3.0);
        row.band.ratio = row.band.deg_eps / (row.band.deg_13 + std::sqrt(f.arity() * std::log(1.0 / eps)));
        row.band.e_star = minimax_error(f, row.band.deg_eps).error;
        if (want_lower && row.band.t > 0) row.lower = lower_bound_check(f, eps);
        if (want_upper) row.upper = upper_bound_check(f, eps);
        return row;
      },
      opt.workers);

  bool passed = true;
  json doc = json::array();
  if (!as_json) {
    out << csv_header();
    if (want_lower) out << ",lower_m,lower_passed";
    if (want_upper) out << ",two_T,poly_ok,upper_passed";
    out << '\n';
  }
  for (const auto& row : rows) {
    if (row.lower) passed = passed && row.lower->passed;
    if (row.upper) passed = passed && row.upper->passed;
    if (as_json) {
      json entry = {{"family", row.band.family}, {"n", row.band.n},           {"t", row.band.t},
                    {"eps", row.band.eps},       {"deg_eps", row.band.deg_eps}, {"deg_13", row.band.deg_13},
                    {"ratio", row.band.ratio},   {"e_star", row.band.e_star}};
      if (row.lower) {
        entry["lower"] = {{"embedded", row.lower->embedded},
                          {"m", row.lower->embedded ? row.lower->embedding.m : 0},
                          {"polarity", to_string(row.lower->embedding.polarity)},
                          {"deg_or", row.lower->deg_or},
                          {"passed", row.lower->passed}};
      }
      if (row.upper) {
        entry["upper"] = {{"deg_lp", *row.upper->deg_lp},
                          {"two_T", row.upper->two_t},
                          {"surface_degree", row.upper->surface_degree},
                          {"surface_error", row.upper->surface_error},
                          {"symmetrized_error", row.upper->symmetrized_error},
                          {"poly_ok", row.upper->poly_ok},
                          {"passed", row.upper->passed}};
      }
      doc.push_back(entry);
    } else {
      out << to_csv(row.band);
      if (want_lower) {
        if (row.lower) {
          out << ',' << (row.lower->embedded ? row.lower->embedding.m : 0) << ',' << row.lower->passed;
        } else {
          out << ",,";
        }
      }
      if (want_upper) out << ',' << row.upper->two_t << ',' << row.upper->poly_ok << ',' << row.upper->passed;
      out << '\n';
    }
  }
  if (as_json) {
    out << json{{"command", "degree"}, {"rows", doc}, {"passed", passed}}.dump(2) << '\n';
  } else if (want_lower || want_upper) {
    out << "# passed=" << passed << '\n';
  }
  return passed;
}

}  // namespace

int default_enumeration_budget() {
  if (const char* env = std::getenv("QDEG_BUDGET")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "qdeg: ignoring invalid QDEG_BUDGET=" << env << '\n';
  }
  return kDefaultEnumerationBudget;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum query algorithms and approximate degree of symmetric Boolean functions", "qdeg"};
  app.require_subcommand(1);
  std::string out_path;
  bool as_json = false;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write output to this file instead of stdout");
    cmd->add_flag("--json", as_json, "JSON instead of CSV");
  };

  SimulateOptions sim;
  sim.budget = default_enumeration_budget();
  auto* simulate = app.add_subcommand("simulate", "run the symmetric-function algorithm on inputs");
  add_target_options(simulate, sim.target);
  simulate->add_option("--n", sim.n, "number of input bits");
  simulate->add_option("--eps", sim.eps, "target error")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "base seed for sample mode")->capture_default_str();
  simulate->add_option("--mode", sim.mode, "sample or enumerate")
      ->check(CLI::IsMember({"sample", "enumerate"}))
      ->capture_default_str();
  simulate->add_option("--budget", sim.budget, "largest n enumerated exhaustively")->capture_default_str();
  simulate->add_option("--nodes", sim.nodes, "branch budget per enumerated run")->capture_default_str();
  simulate->add_option("--input", sim.input, "run a single input, e.g. 0110");
  simulate->add_option("--workers", sim.workers, "worker threads (0 = all cores)");
  common(simulate);

  ExtractOptions ext;
  ext.budget = default_enumeration_budget();
  auto* extract = app.add_subcommand("extract", "acceptance polynomial of the algorithm");
  add_target_options(extract, ext.target);
  extract->add_option("--n", ext.n, "number of input bits");
  extract->add_option("--eps", ext.eps, "target error")->capture_default_str();
  extract->add_option("--budget", ext.budget, "largest n enumerated exhaustively")->capture_default_str();
  extract->add_option("--tol", ext.tol, "coefficient zero threshold")->capture_default_str();
  common(extract);

  DegreeOptions deg;
  auto* degree = app.add_subcommand("degree", "approximate degree by linear programming");
  add_target_options(degree, deg.target);
  degree->add_option("--n", deg.ns, "input sizes, comma separated")->delimiter(',');
  degree->add_option("--eps", deg.epss, "error levels, comma separated")->delimiter(',');
  degree->add_flag("--band", deg.band, "degree ratio band over the n x eps grid");
  degree->add_option("--width", deg.width, "band width bound max/min for --band")->capture_default_str();
  degree->add_flag("--threshold-band", deg.threshold_band, "deg_1/3 / sqrt(t n) for THRESHOLD(tau) over --tau x --n");
  degree->add_option("--tau", deg.taus, "thresholds for --threshold-band, comma separated")->delimiter(',');
  degree->add_option("--check", deg.checks, "lower,upper")->delimiter(',');
  degree->add_option("--workers", deg.workers, "worker threads (0 = all cores)");
  common(degree);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "qdeg: " << e.what() << '\n' << app.help();
    return 2;
  }

  std::ostringstream buffer;
  bool passed = false;
  try {
    if (simulate->parsed()) {
      passed = cmd_simulate(sim, as_json, buffer);
    } else if (extract->parsed()) {
      passed = cmd_extract(ext, as_json, buffer);
    } else {
      passed = cmd_degree(deg, as_json, buffer);
    }
  } catch (const ResourceError& e) {
    err << "qdeg: resource limit: " << e.what() << " (explored mass " << num(e.explored_mass()) << ")\n";
    return 2;
  } catch (const std::exception& e) {
    err << "qdeg: " << e.what() << '\n';
    return 2;
  }

  if (out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "qdeg: cannot write " << out_path << '\n';
      return 2;
    }
    file << buffer.str();
  }
  return passed ? 0 : 1;
}

}  // namespace qdeg
