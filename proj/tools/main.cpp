#include "cli.hpp"

#include "revolv/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using revolv::cli::RunConfig;

namespace {

struct Flags {
  std::string config;
  int d = 0;
  std::string body;
  double lambda = 0.0;
  double s_min = 0.0;
  double s_max = 0.0;
  int n = 0;
  double cluster_threshold = 0.0;
  std::string out;
  std::string report;
  std::uint64_t seed = 0;
  double tol_functional = 0.0;
  double eps0 = 0.0;
  std::string mode;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON file with defaults; flags override it");
  cmd->add_option("--d", f.d, "Ambient dimension");
  cmd->add_option("--body", f.body, "ball | klee | bonnesen-plus | bonnesen-minus | body JSON path");
  cmd->add_option("--lambda", f.lambda, "Scale factor of the body");
  cmd->add_option("--s-min", f.s_min, "Smallest slope");
  cmd->add_option("--s-max", f.s_max, "Largest slope");
  cmd->add_option("--n", f.n, "Number of slopes");
  cmd->add_option("--cluster-threshold", f.cluster_threshold,
                  "Half-width of the extra points near sqrt(7)/3 (0 disables)");
  cmd->add_option("--out", f.out, "Output file (default: standard output)");
  cmd->add_option("--report", f.report, "Verification report JSON path");
  cmd->add_option("--seed", f.seed, "Seed for randomized checks");
  cmd->add_option("--tol-functional", f.tol_functional, "Relative tolerance for A, M, P");
  cmd->add_option("--eps0", f.eps0, "Initial perturbation size");
  cmd->add_option("--mode", f.mode, "klee | bonnesen")->check(CLI::IsMember({"klee", "bonnesen"}));
}

// Config file first, then every flag that was given on the command line.
RunConfig resolve(const CLI::App* cmd, const Flags& f) {
  RunConfig c;
  if (cmd->count("--config")) {
    std::ifstream in(f.config);
    if (!in) throw revolv::DomainError("cannot open config '" + f.config + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    revolv::cli::apply_json(c, ss.str());
  }
  if (cmd->count("--d")) c.d = f.d;
  if (cmd->count("--body")) c.body = f.body;
  if (cmd->count("--lambda")) c.lambda = f.lambda;
  if (cmd->count("--s-min")) c.s_min = f.s_min;
  if (cmd->count("--s-max")) c.s_max = f.s_max;
  if (cmd->count("--n")) c.n = f.n;
  if (cmd->count("--cluster-threshold")) c.cluster_threshold = f.cluster_threshold;
  if (cmd->count("--out")) c.out = f.out;
  if (cmd->count("--report")) c.report = f.report;
  if (cmd->count("--seed")) c.seed = f.seed;
  if (cmd->count("--tol-functional")) c.tol_functional = f.tol_functional;
  if (cmd->count("--eps0")) c.eps0 = f.eps0;
  if (cmd->count("--mode")) c.mode = f.mode;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sections, maximal sections and projections of bodies of revolution"};
  app.require_subcommand(1);

  Flags flags;
  auto* sections = app.add_subcommand("sections", "Tabulate A, M, P over a slope grid as CSV");
  auto* klee = app.add_subcommand("klee", "Write the d = 4 body with constant maximal sections");
  auto* bonnesen = app.add_subcommand("bonnesen", "Write the section-equivalent pair for even d");
  auto* verify = app.add_subcommand("verify", "Build a counterexample and check every claim");
  for (auto* cmd : {sections, klee, bonnesen, verify}) add_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : revolv::cli::kExitConfig;
  }

  RunConfig config;
  CLI::App* chosen = app.get_subcommands().front();
  try {
    config = resolve(chosen, flags);
  } catch (const revolv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return revolv::cli::kExitConfig;
  }

  if (chosen == sections) return revolv::cli::run_sections(config, std::cout, std::cerr);
  if (chosen == klee) return revolv::cli::run_klee(config, std::cout, std::cerr);
  if (chosen == bonnesen) return revolv::cli::run_bonnesen(config, std::cout, std::cerr);
  return revolv::cli::run_verify(config, std::cout, std::cerr);
}
