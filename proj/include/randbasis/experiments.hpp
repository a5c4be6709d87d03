#pragma once

#include "randbasis/config.hpp"
#include "randbasis/harmonic_projection.hpp"
#include "randbasis/metrics.hpp"
#include "randbasis/spectral.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace randbasis {

/// Mesh, medium and assembled system for one experiment; the a-harmonic
/// projector is built on first use and then shared.
class PatchContext {
 public:
  explicit PatchContext(const ExperimentConfig& config);

  const StructuredMesh& mesh() const { return mesh_; }
  const CoefficientField& field() const { return field_; }
  const StiffnessSystem& system() const { return *system_; }
  const HarmonicProjector& projector();

 private:
  StructuredMesh mesh_;
  CoefficientField field_;
  std::unique_ptr<StiffnessSystem> system_;
  std::unique_ptr<HarmonicProjector> projector_;
};

/// Outcome of one (strategy, seed) sampling run.
struct StrategyRun {
  Strategy strategy;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string failure;
  Eigen::VectorXd lambdas;   // all post-deflation eigenvalues, descending
  Eigen::VectorXd energies;  // E over the leading n modes, n = 1..n_modes
  std::vector<std::pair<int, double>> distances;  // (m, d(proposal_m, target))
};

/// Reference pipeline: eigenvalues.csv plus grid dumps of the first modes
/// restricted to omega. Returns the basis for reuse.
SpectralBasis run_reference(const ExperimentConfig& config, PatchContext& context);

/// All (strategy, seed) sampling runs: appends eigenvalue rows and writes
/// energies.csv / distances.csv. Degenerate runs are reported on stderr and
/// skipped.
std::vector<StrategyRun> run_strategies(const ExperimentConfig& config, PatchContext& context,
                                        const SpectralBasis& reference);

/// Tallies of a bound-checker batch.
struct CheckerTally {
  int trials = 0;
  int applicable = 0;
  int holds = 0;
};

struct BoundsSummary {
  CheckerTally prop_41;
  CheckerTally lemma_42;
  CheckerTally thm_43;
  CheckerTally thm_45;
};

/// Monte-Carlo verification of the subspace-quality bounds on synthetic
/// pencils (and a small patch pipeline for the approximation bound); writes
/// bounds.csv under out_dir.
BoundsSummary run_bounds(const std::string& out_dir, std::uint64_t base_seed, int trials);

/// Renders eigenvalues.svg / energies.svg / distances.svg from the CSVs.
void emit_plots(const std::string& dir);

/// reference + strategies + bounds + plots with one config.
void run_all(const ExperimentConfig& config);

double median(std::vector<double> values);

}  // namespace randbasis
