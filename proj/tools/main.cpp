#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "tulczyjew/check_suite.hpp"
#include "tulczyjew/dynamics.hpp"

using namespace tulczyjew;

namespace {

enum Exit { kOk = 0, kPropertyFailure = 1, kBadConfig = 2, kNumericAbort = 3 };

const char* const kColumns[] = {"t",   "n_x", "n_y", "n_z",    "v_x",           "v_y",
                                "v_z", "r",   "energy", "constraint_norm", "constraint_orth"};

std::vector<double> row(const SphereBody& body, const TrajectorySample& x) {
  const auto& s = x.s;
  return {x.t,   s.n.x(), s.n.y(), s.n.z(),          s.v.x(),         s.v.y(),
          s.v.z(), s.r,  body.energy(s), s.n.norm() - 1.0, s.n.dot(s.v)};
}

std::string to_csv(const SphereBody& body, const Trajectory& tr) {
  std::string out;
  for (size_t i = 0; i < std::size(kColumns); ++i) out += (i ? "," : "") + std::string(kColumns[i]);
  out += "\n";
  char buf[32];
  for (const auto& x : tr) {
    const auto r = row(body, x);
    for (size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", r[i]);
      if (i) out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const SphereBody& body, const Trajectory& tr) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& x : tr) {
    const auto r = row(body, x);
    nlohmann::ordered_json rec;
    for (size_t i = 0; i < r.size(); ++i) rec[kColumns[i]] = r[i];
    arr.push_back(std::move(rec));
  }
  return arr.dump(1) + "\n";
}

BodyState initial_state(const cli::SimConfig& c) { return {c.n0, c.v0, c.r0}; }

int simulate(const std::string& config_path, const std::string& format_flag, const std::string& out_flag) {
  cli::SimConfig c;
  try {
    c = cli::load_config(config_path);
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  }
  for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
  const std::string format = format_flag.empty() ? c.format : format_flag;
  const std::string out = out_flag.empty() ? c.out.value_or("") : out_flag;
  if (out.empty()) {
    std::cerr << "error: no output path (use --out or the 'out' key)\n";
    return kBadConfig;
  }
  const SphereBody body(c.I_perp, c.I_ax);
  Trajectory tr;
  try {
    tr = body.integrate(initial_state(c), c.dt, c.steps);
  } catch (const NumericAbort& e) {
    std::cerr << "numeric abort at step " << e.step << ": " << e.what() << "\n";
    return kNumericAbort;
  }
  const std::string text = format == "json" ? to_json(body, tr) : to_csv(body, tr);
  if (out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << out << "'\n";
      return kBadConfig;
    }
    f << text;
  }
  return kOk;
}

int run_check(std::uint64_t seed, long samples, const std::string& fault) {
  check::SuiteOptions o;
  o.seed = seed;
  o.samples = samples;
  o.corrupt_bracket = fault == "corrupt-bracket";
  const CheckReport rep = check::run_suite(o);
  std::printf("seed %" PRIu64 ", %ld samples per property%s\n", rep.seed, samples,
              o.corrupt_bracket ? ", fault injected: corrupt-bracket" : "");
  for (const auto& r : rep.results)
    std::printf("%-4s %-36s max %.3e  tol %.0e  n %ld\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.max_residual,
                r.tolerance, r.samples);
  const long failed = std::count_if(rep.results.begin(), rep.results.end(), [](const auto& r) { return !r.passed; });
  std::printf("%ld of %zu properties failed\n", failed, rep.results.size());
  return rep.all_passed() ? kOk : kPropertyFailure;
}

int compare_reduction(const std::string& config_path, double perturb) {
  cli::SimConfig c;
  try {
    c = cli::load_config(config_path);
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  }
  for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
  const SphereBody body(c.I_perp, c.I_ax);
  const Lagrangian<FrameBundle> L = perturb == 0.0 ? body.lagrangian() : body.perturbed_lagrangian(perturb);
  Trajectory tr;
  try {
    tr = body.integrate(initial_state(c), c.dt, c.steps);
  } catch (const NumericAbort& e) {
    std::cerr << "numeric abort at step " << e.step << ": " << e.what() << "\n";
    return kNumericAbort;
  }
  check::ReductionComparison cmp;
  try {
    cmp = check::compare_along(L, tr, c.seed);
  } catch (const ContractError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kBadConfig;
  }
  if (cmp.max_invariance_defect > 1e-10) {
    std::cerr << "rejected: Lagrangian is flagged invariant but changes by " << cmp.max_invariance_defect
              << " under the tangent action\n";
    return kBadConfig;
  }
  const double worst = cmp.max_deviation;
  const bool pass = worst <= 1e-8;
  std::printf("%s max deviation %.3e over %zu states (tolerance 1e-8)\n", pass ? "PASS" : "FAIL", worst, tr.size());
  return pass ? kOk : kPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trivialised Tulczyjew triple engine: simulation, property checks, reduction comparison"};
  app.require_subcommand(1);

  std::string config, format, out;
  auto* sim = app.add_subcommand("simulate", "Integrate the sphere body and write its trajectory");
  sim->add_option("--config", config, "flat JSON config")->required();
  sim->add_option("--format", format, "csv or json (overrides the config)")->check(CLI::IsMember({"csv", "json"}));
  sim->add_option("--out", out, "output path, '-' for stdout (overrides the config)");

  std::uint64_t seed = 1;
  long samples = 100;
  std::string fault;
  auto* chk = app.add_subcommand("check", "Run the property suite");
  chk->add_option("--seed", seed, "generator seed");
  chk->add_option("--samples", samples, "samples per property")->check(CLI::PositiveNumber);
  chk->add_option("--inject-fault", fault, "deliberate fault")->check(CLI::IsMember({"corrupt-bracket"}));

  double perturb = 0.0;
  auto* cmp = app.add_subcommand("compare-reduction", "Compare reduced and unreduced dynamics along a trajectory");
  cmp->add_option("--config", config, "flat JSON config")->required();
  cmp->add_option("--perturb", perturb, "add a frame-dependent term of this size to the Lagrangian");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadConfig;
  }

  if (*sim) return simulate(config, format, out);
  if (*chk) return run_check(seed, samples, fault);
  return compare_reduction(config, perturb);
}
