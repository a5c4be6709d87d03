#include "randbasis/experiments.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tol = 0.0;
  bool tol_set = false;
  bool include_corners = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Experiment config file (key = value lines)");
  cmd->add_option("--out-dir", opts.out_dir, "Output directory (overrides the config)");
  cmd->add_option("--seed", opts.seed, "Single base seed replacing the config seed list")
      ->each([&](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--tol", opts.tol, "Mode selection tolerance")
      ->each([&](const std::string&) { opts.tol_set = true; });
  cmd->add_flag("--include-corners", opts.include_corners,
                "Enumerate corner hats in the reference stage");
}

randbasis::ExperimentConfig load_config(const CommonOptions& opts) {
  randbasis::ExperimentConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = randbasis::parse_config(opts.config_path);
  }
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (opts.seed_set) cfg.seeds = {opts.seed};
  if (opts.tol_set) cfg.tol = opts.tol;
  if (opts.include_corners) cfg.include_corners = true;
  return cfg;
}

void print_bounds_summary(const randbasis::BoundsSummary& s) {
  auto line = [](const char* name, const randbasis::CheckerTally& t) {
    std::cout << name << ": " << t.holds << "/" << t.applicable << " applicable trials hold ("
              << t.trials << " total)\n";
  };
  line("prop_41", s.prop_41);
  line("lemma_42", s.lemma_42);
  line("thm_43", s.thm_43);
  line("thm_45", s.thm_45);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized local approximation bases for rough-coefficient elliptic patches"};
  app.require_subcommand(1);

  CommonOptions opts;
  CLI::App* reference = app.add_subcommand("reference", "Reference eigenpairs and mode dumps");
  CLI::App* strategies =
      app.add_subcommand("strategies", "All sampling strategies: eigenvalues, energies, distances");
  CLI::App* bounds = app.add_subcommand("bounds", "Monte-Carlo verification of the quality bounds");
  CLI::App* plots = app.add_subcommand("plots", "Render SVG charts from the CSV artifacts");
  CLI::App* all = app.add_subcommand("all", "Full pipeline: reference, strategies, bounds, plots");
  for (CLI::App* cmd : {reference, strategies, bounds, plots, all}) add_common(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    const randbasis::ExperimentConfig cfg = load_config(opts);
    if (reference->parsed()) {
      randbasis::PatchContext context(cfg);
      randbasis::run_reference(cfg, context);
      std::cout << "reference artifacts written to " << cfg.output_dir << "\n";
    } else if (strategies->parsed()) {
      randbasis::PatchContext context(cfg);
      const auto basis = randbasis::run_reference(cfg, context);
      randbasis::run_strategies(cfg, context, basis);
      std::cout << "strategy artifacts written to " << cfg.output_dir << "\n";
    } else if (bounds->parsed()) {
      const auto summary =
          randbasis::run_bounds(cfg.output_dir, cfg.seeds.front(), 100);
      print_bounds_summary(summary);
    } else if (plots->parsed()) {
      randbasis::emit_plots(cfg.output_dir);
      std::cout << "charts written to " << cfg.output_dir << "\n";
    } else if (all->parsed()) {
      randbasis::run_all(cfg);
      std::cout << "all artifacts written to " << cfg.output_dir << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
