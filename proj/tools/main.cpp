#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace fe = filter_ergodics;
namespace cli = filter_ergodics::cli;

namespace {

int emit(const cli::CommandResult& res, const std::string& out) {
  std::cout << res.report;
  if (!out.empty() && !res.files.empty()) {
    fe::RunManifest manifest(res.config.value("command", std::string("unknown")), res.config, res.model_hash);
    for (const auto& f : res.files) manifest.write_file(out, f.name, f.contents);
    manifest.save(out);
    std::cout << "wrote " << res.files.size() << " files and manifest.json to " << out << "\n";
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact filtering and lifted-kernel diagnostics for finite bivariate Markov chains"};
  app.require_subcommand(1);
  app.fallthrough();
  cli::GlobalConfig g;
  app.add_option("--model", g.model, "model JSON file or zoo model name");
  app.add_option("--param", g.params, "zoo model parameter key=value (repeatable)");
  app.add_option("--seed", g.seed, "master seed (FILTER_ERGODICS_SEED overrides)");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--threads", g.threads, "worker threads for replicate loops")->check(CLI::PositiveNumber);
  app.add_flag("--strict", g.strict, "exit with code 3 when the main assumptions are refuted");
  app.add_flag("--allow-unverified", g.allow_unverified, "run experiments on models failing the assumption gate");

  cli::CheckConfig check_cfg;
  auto* check = app.add_subcommand("check", "assumption checklist for a model");
  check->add_option("--mixing-horizon", check_cfg.mixing_horizon)->check(CLI::PositiveNumber);
  check->add_option("--nstep", check_cfg.nstep_max)->check(CLI::PositiveNumber);

  cli::StabilityConfig stab_cfg;
  auto* stability = app.add_subcommand("stability", "filter stability experiment");
  stability->add_option("--horizon", stab_cfg.horizon)->check(CLI::PositiveNumber);
  stability->add_option("--replicates", stab_cfg.replicates)->check(CLI::PositiveNumber);
  stability->add_option("--init", stab_cfg.init, "stationary | uniform | point:<z> | point:<z>,<w>");

  cli::MergingConfig merge_cfg;
  auto* merging = app.add_subcommand("merging", "finite-window conditional merging of smoothed laws");
  merging->add_option("--paths", merge_cfg.paths)->check(CLI::PositiveNumber);
  merging->add_option("--window", merge_cfg.window, "window length N")->check(CLI::PositiveNumber);
  merging->add_option("--pair", merge_cfg.pair, "initial hidden states <z>,<z'>");
  merging->add_option("--observations", merge_cfg.observations, "JSON file of observation label paths");

  cli::InvariantConfig inv_cfg;
  auto* invariant = app.add_subcommand("invariant", "empirical invariant measures of the lifted kernels");
  invariant->add_option("--inits", inv_cfg.inits, "comma-separated: stationary | uniform | point:<z>");
  invariant->add_option("--samples", inv_cfg.samples)->check(CLI::PositiveNumber);
  invariant->add_option("--burn-in", inv_cfg.burn_in);
  invariant->add_option("--lift", inv_cfg.lift)->check(CLI::IsMember({"pair", "triple"}));
  invariant->add_option("--threshold", inv_cfg.threshold, "discrepancy threshold in standard errors")
      ->check(CLI::PositiveNumber);
  invariant->add_flag("!--no-measures", inv_cfg.write_measures, "skip writing the atom lists");

  auto* zoo = app.add_subcommand("zoo", "model catalog and the Kalman demo");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "list catalog models");
  std::string emit_name;
  std::vector<std::string> emit_params;
  auto* zoo_emit = zoo->add_subcommand("emit", "write a catalog model as JSON");
  zoo_emit->add_option("name", emit_name)->required();
  zoo_emit->add_option("params", emit_params, "key=value overrides");
  cli::KalmanConfig kalman_cfg;
  auto* zoo_kalman = zoo->add_subcommand("kalman", "two-branch scalar Kalman demo");
  zoo_kalman->add_option("--horizon", kalman_cfg.horizon)->check(CLI::PositiveNumber);
  zoo_kalman->add_option("--replicates", kalman_cfg.replicates)->check(CLI::PositiveNumber);
  zoo_kalman->add_option("--s0", kalman_cfg.s0, "initial posterior variance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (const char* env = std::getenv("FILTER_ERGODICS_SEED")) {
    try {
      g.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: FILTER_ERGODICS_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  try {
    if (check->parsed()) return emit(cli::cmd_check(g, check_cfg), g.out);
    if (stability->parsed()) return emit(cli::cmd_stability(g, stab_cfg), g.out.empty() ? "fe_out" : g.out);
    if (merging->parsed()) return emit(cli::cmd_merging(g, merge_cfg), g.out.empty() ? "fe_out" : g.out);
    if (invariant->parsed()) return emit(cli::cmd_invariant(g, inv_cfg), g.out.empty() ? "fe_out" : g.out);
    if (zoo_list->parsed()) return emit(cli::cmd_zoo_list(), "");
    if (zoo_emit->parsed()) {
      const std::string text = cli::zoo_emit(emit_name, emit_params);
      if (g.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(g.out, std::ios::binary);
        if (!out) throw fe::Error("cannot write '" + g.out + "'");
        out << text;
      }
      return 0;
    }
    if (zoo_kalman->parsed()) return emit(cli::cmd_kalman(g, kalman_cfg), g.out.empty() ? "fe_out" : g.out);
  } catch (const fe::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const fe::AssumptionNotVerified& e) {
    std::cerr << "assumption check failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
