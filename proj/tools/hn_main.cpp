#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hn/engine.hpp"
#include "hn/render.hpp"
#include "hn/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitOracle = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hn::input_error("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << data;
}

// HN_BUDGET caps the enumeration ceilings of both hosts.
void apply_budget_env(hn::ComputeOptions& opt) {
  if (const char* env = std::getenv("HN_BUDGET")) {
    try {
      const long v = std::stol(env);
      if (v > 0) {
        opt.fp_cfg.enum_ceiling = hn::Int(v);
        opt.fp_cfg.closure_cap = size_t(v);
        opt.lattice_cfg.pool_cap = size_t(v);
        opt.lattice_cfg.candidates_cap = size_t(v);
      }
    } catch (...) {
      throw hn::input_error("HN_BUDGET must be a positive integer");
    }
  }
}

struct RandomSpec {
  std::string kind;
  std::map<std::string, long> params;
};

RandomSpec parse_random_spec(const std::string& s) {
  RandomSpec spec;
  const auto colon = s.find(':');
  spec.kind = s.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream ss(s.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw hn::input_error("bad --random parameter: " + item);
      spec.params[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
    }
  }
  return spec;
}

long param_or(const RandomSpec& s, const std::string& key, long dflt) {
  const auto it = s.params.find(key);
  return it == s.params.end() ? dflt : it->second;
}

int cmd_compute(const std::string& path, int digits, bool timing) {
  hn::ComputeOptions opt;
  opt.digits = digits;
  opt.include_timing = timing;
  apply_budget_env(opt);
  const auto doc = hn::parse_input(read_file(path));
  const auto out = hn::compute_document(doc, opt);
  std::cout << out.result.dump(2) << "\n";
  return out.oracle_failed ? kExitOracle : kExitOk;
}

int cmd_polygon(const std::string& path, const std::string& format, const std::string& out_path,
                int digits) {
  hn::ComputeOptions opt;
  opt.digits = digits;
  apply_budget_env(opt);
  const auto doc = hn::parse_input(read_file(path));
  const auto out = hn::compute_document(doc, opt);
  std::string rendered;
  if (format == "csv")
    rendered = hn::polygon_csv(out.polygon, digits);
  else if (format == "svg")
    rendered = hn::polygon_svg(out.polygon, digits);
  else
    throw hn::input_error("unknown polygon format: " + format);
  if (out_path.empty() || out_path == "-")
    std::cout << rendered;
  else
    write_file(out_path, rendered);
  return kExitOk;
}

int cmd_check(const std::string& suite, uint64_t seed, int trials) {
  hn::SuiteConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  {
    hn::ComputeOptions opt;
    apply_budget_env(opt);
    cfg.fp_cfg = opt.fp_cfg;
    cfg.lattice_cfg = opt.lattice_cfg;
  }
  std::vector<hn::SuiteReport> reports;
  if (suite == "axioms")
    reports.push_back(hn::run_axioms_suite(cfg));
  else if (suite == "slopes")
    reports.push_back(hn::run_slopes_suite(cfg));
  else if (suite == "functoriality")
    reports.push_back(hn::run_functoriality_suite(cfg));
  else if (suite == "all")
    reports = hn::run_all_suites(cfg);
  else
    throw hn::input_error("unknown suite: " + suite);
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << "suite " << r.name << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.trials
              << " trials, " << r.failures << " failures)\n";
    for (const auto& c : r.counterexamples) std::cerr << "counterexample:\n" << c << "\n";
    ok = ok && r.passed();
  }
  return ok ? kExitOk : kExitOracle;
}

int cmd_oracle(const std::string& path, const std::string& random_spec, long budget) {
  hn::SuiteConfig cfg;
  {
    hn::ComputeOptions opt;
    apply_budget_env(opt);
    cfg.fp_cfg = opt.fp_cfg;
    cfg.lattice_cfg = opt.lattice_cfg;
  }
  if (budget > 0) {
    cfg.fp_cfg.enum_ceiling = hn::Int(budget);
    cfg.fp_cfg.closure_cap = size_t(budget);
    cfg.lattice_cfg.candidates_cap = size_t(budget);
  }
  if (!path.empty()) {
    // Cross-check one concrete input: closure vs brute force (where it
    // applies) and the sequence/filtration identity.
    const auto doc = hn::parse_input(read_file(path));
    if (doc.multifilt) {
      const auto& x = *doc.multifilt;
      try {
        const auto a = hn::destabilizer_bruteforce(x, cfg.fp_cfg);
        const auto b = hn::destabilizer_closure(x, cfg.fp_cfg);
        if (!(a == b)) {
          std::cout << "oracle: destabilizer mismatch\n";
          return kExitOracle;
        }
      } catch (const hn::budget_error& e) {
        std::cout << "oracle: budget exceeded: " << e.what() << "\n";
        return kExitOracle;
      }
      hn::MultiFiltHost host;
      host.cfg = cfg.fp_cfg;
      const auto d = hn::hn_sequence(host, x);
      const auto jumps = hn::minimal_jumping_set(x.ops(), hn::hn_filtration(d));
      if (jumps.size() != d.slopes.size()) {
        std::cout << "oracle: filtration/sequence mismatch\n";
        return kExitOracle;
      }
      std::cout << "oracle: pass\n";
      return kExitOk;
    }
    if (doc.lattice) {
      const auto res = hn::destabilizer_enum(*doc.lattice, cfg.lattice_cfg);
      std::cout << "oracle: destabilizer rank " << res.sub.rank() << " ("
                << (res.cert == hn::Certification::proved ? "proved" : "heuristic") << ")\n";
      return kExitOk;
    }
    return kExitValidation;
  }
  if (!random_spec.empty()) {
    const RandomSpec spec = parse_random_spec(random_spec);
    cfg.seed = uint64_t(param_or(spec, "seed", 1));
    cfg.trials = int(param_or(spec, "trials", 100));
    if (spec.kind == "multifilt" || spec.kind == "lattice" || spec.kind == "all") {
      const auto r = hn::run_oracle_suite(cfg);
      std::cout << "suite " << r.name << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.trials
                << " trials, " << r.failures << " failures)\n";
      for (const auto& c : r.counterexamples) std::cerr << "counterexample:\n" << c << "\n";
      return r.passed() ? kExitOk : kExitOracle;
    }
    throw hn::input_error("unknown --random kind: " + spec.kind);
  }
  throw hn::input_error("oracle needs an input file or --random");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harder-Narasimhan engine: sequences, filtrations, polygons, measures"};
  app.require_subcommand(1);

  std::string input_path, out_path, format = "csv", suite = "all", random_spec;
  int digits = 12;
  bool timing = false;
  uint64_t seed = 1;
  int trials = 500;
  long budget = 0;

  auto* compute = app.add_subcommand("compute", "compute the canonical decomposition of an object");
  compute->add_option("input", input_path, "input JSON path")->required();
  compute->add_option("--digits", digits, "decimal digits in renderings")->capture_default_str();
  compute->add_flag("--timing", timing, "include timing in the result document");

  auto* polygon = app.add_subcommand("polygon", "emit the normalized polygon as CSV or SVG");
  polygon->add_option("input", input_path, "input JSON path")->required();
  polygon->add_option("--format", format, "csv|svg")->capture_default_str();
  polygon->add_option("-o,--output", out_path, "output path (default stdout)");
  polygon->add_option("--digits", digits, "decimal digits in renderings")->capture_default_str();

  auto* check = app.add_subcommand("check", "run the property suites");
  check->add_option("--suite", suite, "axioms|slopes|functoriality|all")->capture_default_str();
  check->add_option("--seed", seed, "random seed")->capture_default_str();
  check->add_option("--trials", trials, "trials per suite")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "cross-check destabilizer oracles");
  oracle->add_option("input", input_path, "input JSON path");
  oracle->add_option("--random", random_spec, "random spec, e.g. multifilt:trials=500,seed=7");
  oracle->add_option("--budget", budget, "enumeration budget override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return cmd_compute(input_path, digits, timing);
    if (polygon->parsed()) return cmd_polygon(input_path, format, out_path, digits);
    if (check->parsed()) return cmd_check(suite, seed, trials);
    if (oracle->parsed()) return cmd_oracle(input_path, random_spec, budget);
  } catch (const hn::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const hn::oracle_error& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return kExitOracle;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
