#include "randbasis/experiments.hpp"

#include "randbasis/csv.hpp"
#include "randbasis/rng.hpp"
#include "randbasis/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace randbasis {

namespace fs = std::filesystem;

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median: empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

PatchContext::PatchContext(const ExperimentConfig& config)
    : mesh_(build_mesh(config.patch)), field_(config.make_field()) {
  field_.calibrate_bounds(mesh_);
  system_ = std::make_unique<StiffnessSystem>(assemble(mesh_, field_));
}

const HarmonicProjector& PatchContext::projector() {
  if (!projector_) {
    projector_ = std::make_unique<HarmonicProjector>(*system_, mesh_);
  }
  return *projector_;
}

namespace {

std::string csv_path(const ExperimentConfig& config, const char* name) {
  return (fs::path(config.output_dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  }
}

// Per-mode omega energies of an E(omega*)-orthonormal family.
Eigen::VectorXd omega_energies(const StiffnessSystem& system, const Eigen::MatrixXd& psi) {
  const Eigen::MatrixXd products = system.omega * psi;
  Eigen::VectorXd diag(psi.cols());
  for (int i = 0; i < psi.cols(); ++i) diag[i] = psi.col(i).dot(products.col(i));
  return diag;
}

Eigen::VectorXd cumulative_energy(const Eigen::VectorXd& diag) {
  Eigen::VectorXd out(diag.size());
  double acc = 0.0;
  for (int i = 0; i < diag.size(); ++i) {
    acc += diag[i];
    out[i] = acc / (i + 1);
  }
  return out;
}

void dump_restricted_mode(const StructuredMesh& mesh, const Eigen::VectorXd& mode,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  const int lo = mesh.margin_cells;
  const int hi = mesh.nodes_per_side - 1 - mesh.margin_cells;
  const int side = hi - lo + 1;
  out << side << ' ' << side << '\n';
  for (int iy = lo; iy <= hi; ++iy) {
    for (int ix = lo; ix <= hi; ++ix) {
      if (ix > lo) out << ' ';
      out << fmt_double(mode[mesh.node_index(ix, iy)]);
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed on '" + path + "'");
  }
}

}  // namespace

SpectralBasis run_reference(const ExperimentConfig& config, PatchContext& context) {
  ensure_dir(config.output_dir);
  const SpectralBasis basis =
      reference_basis(context.system(), context.mesh(), config.tol, config.include_corners);

  CsvWriter eigenvalues(csv_path(config, "eigenvalues.csv"),
                        {"source", "seed", "index", "lambda"});
  for (int i = 0; i < basis.n_modes(); ++i) {
    eigenvalues.row({"reference", "0", std::to_string(i + 1), fmt_double(basis.lambdas[i])});
  }

  const int n_dump = std::min(4, basis.n_modes());
  for (int i = 0; i < n_dump; ++i) {
    std::ostringstream name;
    name << "mode_" << (i + 1) << ".grid";
    dump_restricted_mode(context.mesh(), basis.psi.col(i),
                         (fs::path(config.output_dir) / name.str()).string());
  }
  return basis;
}

std::vector<StrategyRun> run_strategies(const ExperimentConfig& config, PatchContext& context,
                                        const SpectralBasis& reference) {
  ensure_dir(config.output_dir);
  const StiffnessSystem& system = context.system();

  if (reference.n_modes() < config.distance_target_n) {
    throw std::runtime_error("run_strategies: reference basis has fewer modes than the target");
  }
  const Eigen::MatrixXd target = reference.psi.leftCols(config.distance_target_n);
  const Eigen::MatrixXd target_products = system.omega * target;
  Eigen::MatrixXd target_gram = target.transpose() * target_products;
  target_gram = 0.5 * (target_gram + target_gram.transpose()).eval();

  std::ofstream eigenvalues(csv_path(config, "eigenvalues.csv"), std::ios::app);
  if (!eigenvalues) {
    throw std::runtime_error("run_strategies: cannot append to eigenvalues.csv (run reference first)");
  }
  CsvWriter energies(csv_path(config, "energies.csv"), {"strategy", "seed", "n", "energy"});
  CsvWriter distances(csv_path(config, "distances.csv"), {"strategy", "seed", "m", "distance"});

  // Reference energies for comparison plots.
  {
    const Eigen::VectorXd cumulative =
        cumulative_energy(omega_energies(system, reference.psi));
    const int n_max = std::min<int>(config.n_samples, reference.n_modes());
    for (int n = 1; n <= n_max; ++n) {
      energies.row({"reference", "0", std::to_string(n), fmt_double(cumulative[n - 1])});
    }
  }

  std::vector<StrategyRun> runs;
  for (Strategy strategy : config.strategies) {
    for (std::uint64_t seed : config.seeds) {
      StrategyRun run;
      run.strategy = strategy;
      run.seed = seed;
      try {
        const Eigen::MatrixXd samples = generate_samples(
            config.sampling_spec(strategy, seed), system, context.mesh(), context.projector());
        const SpectralBasis basis =
            randomized_basis(system, samples, config.tol, strategy_name(strategy));
        run.lambdas = basis.lambdas;
        run.energies = cumulative_energy(omega_energies(system, basis.psi));

        const Eigen::MatrixXd proposal_products = system.omega * basis.psi;
        Eigen::MatrixXd proposal_gram = basis.psi.transpose() * proposal_products;
        proposal_gram = 0.5 * (proposal_gram + proposal_gram.transpose()).eval();
        const Eigen::MatrixXd cross_gram = basis.psi.transpose() * target_products;

        const int m_max = std::min<int>(config.distance_m_max, basis.n_modes());
        for (int m = config.distance_m_min; m <= m_max; ++m) {
          try {
            const double d = kolmogorov_from_grams(target_gram, proposal_gram.topLeftCorner(m, m),
                                                   cross_gram.topRows(m));
            run.distances.emplace_back(m, d);
          } catch (const std::exception& e) {
            std::cerr << "[strategies] " << strategy_name(strategy) << " seed " << seed << " m "
                      << m << ": " << e.what() << "\n";
          }
        }
      } catch (const std::exception& e) {
        run.failed = true;
        run.failure = e.what();
        std::cerr << "[strategies] " << strategy_name(strategy) << " seed " << seed
                  << " skipped: " << e.what() << "\n";
        runs.push_back(std::move(run));
        continue;
      }

      const std::string name = strategy_name(strategy);
      const std::string seed_str = std::to_string(seed);
      for (int i = 0; i < run.lambdas.size(); ++i) {
        eigenvalues << name << ',' << seed_str << ',' << (i + 1) << ','
                    << fmt_double(run.lambdas[i]) << '\n';
      }
      for (int n = 1; n <= run.energies.size(); ++n) {
        energies.row({name, seed_str, std::to_string(n), fmt_double(run.energies[n - 1])});
      }
      for (const auto& [m, d] : run.distances) {
        distances.row({name, seed_str, std::to_string(m), fmt_double(d)});
      }
      runs.push_back(std::move(run));
    }
  }
  if (!eigenvalues) {
    throw std::runtime_error("run_strategies: write failed on eigenvalues.csv");
  }
  return runs;
}

namespace {

void tally(CheckerTally& t, bool applicable, bool holds) {
  ++t.trials;
  if (applicable) {
    ++t.applicable;
    if (holds) ++t.holds;
  }
}

}  // namespace

BoundsSummary run_bounds(const std::string& out_dir, std::uint64_t base_seed, int trials) {
  ensure_dir(out_dir);
  CsvWriter csv((fs::path(out_dir) / "bounds.csv").string(),
                {"checker", "instance_seed", "lhs", "rhs", "holds"});
  BoundsSummary summary;

  // One-mode angle bound: trial vectors leaning toward the leading mode.
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_seed(base_seed, 101, t);
    const double gap = 2.0 + (t % 9);
    const PencilInstance inst = synthetic_pencil(8, 1, gap, seed);
    std::mt19937_64 eng = make_engine(derive_seed(seed, 102, t));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd noise(inst.dim());
    for (int i = 0; i < inst.dim(); ++i) noise[i] = normal(eng);
    noise /= std::sqrt(noise.dot(inst.b_mat * noise));

    Prop41Report report;
    double weight = 0.6;
    for (int attempt = 0; attempt < 60; ++attempt) {
      report = check_prop_41(inst, inst.eigvecs.col(0) + weight * noise);
      if (report.applicable) break;
      weight *= 0.5;
    }
    tally(summary.prop_41, report.applicable, report.holds);
    csv.row({"prop_41", std::to_string(t), fmt_double(report.lhs), fmt_double(report.rhs),
             report.applicable ? (report.holds ? "true" : "false") : "n/a"});
  }

  // Trace bound: arbitrary random frames.
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_seed(base_seed, 201, t);
    const int k = 1 + t % 4;
    const PencilInstance inst = synthetic_pencil(10, k, 1.5 + (t % 5), seed);
    const Eigen::MatrixXd frame = random_b_frame(inst, k, derive_seed(seed, 202, t));
    const Lemma42Report report = check_lemma_42(inst, frame);
    tally(summary.lemma_42, true, report.holds);
    csv.row({"lemma_42", std::to_string(t), fmt_double(report.trace_cl), fmt_double(report.bound),
             report.holds ? "true" : "false"});
  }

  // Energy-to-distance estimates: perturbations of the leading block.
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_seed(base_seed, 301, t);
    const int k = 1 + t % 4;
    const PencilInstance inst = synthetic_pencil(10, k, 4.0 + (t % 6), seed);
    std::mt19937_64 eng = make_engine(derive_seed(seed, 302, t));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd noise(inst.dim(), k);
    for (int i = 0; i < inst.dim(); ++i) {
      for (int j = 0; j < k; ++j) noise(i, j) = normal(eng);
    }
    Thm43Report report;
    double eps = 0.3;
    for (int attempt = 0; attempt < 60; ++attempt) {
      const Eigen::MatrixXd frame =
          b_orthonormalize(inst, inst.eigvecs.leftCols(k) + eps * noise);
      report = check_thm_43(inst, frame);
      if (report.applicable) break;
      eps *= 0.5;
    }
    tally(summary.thm_43, report.applicable, report.holds);
    csv.row({"thm_43", std::to_string(t), fmt_double(report.distance),
             fmt_double(std::min(report.bound_est, report.bound_est2)),
             report.applicable ? (report.holds ? "true" : "false") : "n/a"});
  }

  // Approximation bound on a small patch pipeline.
  {
    ExperimentConfig toy;
    toy.patch = PatchPair{0.5, 0.75, 0.125};
    toy.seeds = {base_seed};
    PatchContext context(toy);
    const SpectralBasis reference =
        reference_basis(context.system(), context.mesh(), toy.tol, false);

    // Boundary sampling keeps the 20 samples comfortably independent; the
    // interior strategies can be too collinear on a small patch to span a
    // 20-member frame.
    SamplingSpec spec = toy.sampling_spec(Strategy::BoundaryIid, base_seed);
    spec.n_samples = 20;
    const Eigen::MatrixXd samples =
        generate_samples(spec, context.system(), context.mesh(), context.projector());
    const SubspaceFrame gamma = orthonormalize(context.system(), samples, "boundary_iid");

    const int n = 5;
    for (int t = 0; t < trials; ++t) {
      std::mt19937_64 eng = make_engine(derive_seed(base_seed, 401, t));
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::VectorXd coeff(reference.n_modes());
      for (int i = 0; i < coeff.size(); ++i) coeff[i] = normal(eng);
      GridFunction u = reference.psi * coeff;
      const double norm =
          std::sqrt(energy_inner(context.system(), u, u, Region::OmegaStar));
      u /= norm;
      const Thm45Report report = check_thm_45(context.system(), reference, gamma, u, n);
      tally(summary.thm_45, true, report.holds);
      csv.row({"thm_45", std::to_string(t), fmt_double(report.lhs), fmt_double(report.rhs),
               report.holds ? "true" : "false"});
    }
  }

  return summary;
}

namespace {

struct SeriesKey {
  std::string source;
  int order;  // first-appearance order
};

// Median over seeds of the value at each x, one series per source.
std::vector<ChartSeries> median_series(const CsvTable& table, const std::string& source_col,
                                       const std::string& x_col, const std::string& y_col,
                                       const std::string& context) {
  const int si = table.column(source_col);
  const int xi = table.column(x_col);
  const int yi = table.column(y_col);
  if (si < 0 || xi < 0 || yi < 0) {
    throw std::runtime_error(context + ": missing expected columns");
  }
  std::vector<std::string> order;
  std::map<std::string, std::map<double, std::vector<double>>> grouped;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::ostringstream ctx;
    ctx << context << ": row " << (r + 2);
    const double x = parse_double(row[xi], ctx.str());
    const double y = parse_double(row[yi], ctx.str());
    if (grouped.find(row[si]) == grouped.end()) order.push_back(row[si]);
    grouped[row[si]][x].push_back(y);
  }
  std::vector<ChartSeries> series;
  for (const auto& source : order) {
    ChartSeries s;
    s.label = source;
    for (auto& [x, ys] : grouped[source]) {
      s.points.emplace_back(x, median(ys));
    }
    series.push_back(std::move(s));
  }
  return series;
}

}  // namespace

void emit_plots(const std::string& dir) {
  const auto eig_path = (fs::path(dir) / "eigenvalues.csv").string();
  write_log_chart((fs::path(dir) / "eigenvalues.svg").string(), "Eigenvalue decay", "index",
                  "lambda",
                  median_series(read_csv(eig_path), "source", "index", "lambda", eig_path));

  const auto energy_path = (fs::path(dir) / "energies.csv").string();
  write_log_chart((fs::path(dir) / "energies.svg").string(), "Subspace energy", "n", "energy",
                  median_series(read_csv(energy_path), "strategy", "n", "energy", energy_path));

  const auto dist_path = (fs::path(dir) / "distances.csv").string();
  write_log_chart((fs::path(dir) / "distances.svg").string(), "Distance to the target space", "m",
                  "distance",
                  median_series(read_csv(dist_path), "strategy", "m", "distance", dist_path));
}

void run_all(const ExperimentConfig& config) {
  PatchContext context(config);
  const SpectralBasis reference = run_reference(config, context);
  run_strategies(config, context, reference);
  run_bounds(config.output_dir, config.seeds.front(), 100);
  emit_plots(config.output_dir);
}

}  // namespace randbasis
