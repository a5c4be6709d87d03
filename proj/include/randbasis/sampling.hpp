#pragma once

#include "randbasis/fem.hpp"
#include "randbasis/harmonic_projection.hpp"

#include <cstdint>
#include <string>

namespace randbasis {

enum class Strategy {
  InteriorDelta,
  InteriorIid,
  FullDomainIid,
  RandomGaussian,
  BoundaryIid,
  BoundaryExpCovariance,
  BoundarySmoothed,
};

constexpr int kNumStrategies = 7;

/// 1-based position in the canonical strategy list; also the RNG lane.
int strategy_ordinal(Strategy s);
std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

/// How to draw the N_r random samples. Width parameters set to zero are
/// resolved against the mesh: cov_sigma -> ring width, smooth_sigma -> a
/// sixteenth of the boundary perimeter, kl_modes -> enough modes for 95% of
/// the covariance trace.
struct SamplingSpec {
  Strategy strategy = Strategy::RandomGaussian;
  int n_samples = 20;
  std::uint64_t base_seed = 1;
  double gaussian_width = 1.0;
  double cov_sigma = 0.0;
  double smooth_sigma = 0.0;
  int kl_modes = 0;
};

/// SamplingSpec with every parameter made concrete for a given mesh.
SamplingSpec resolve_spec(const SamplingSpec& spec, const StructuredMesh& mesh);

/// Raw sample before it is made a-harmonic: a nodal field for the interior
/// strategies, boundary data (walk order, corners included) for the rest.
struct RawSample {
  bool is_boundary_data = false;
  Eigen::VectorXd values;
};

/// Truncated Karhunen-Loeve factorization of the boundary covariance
/// exp(-|y_i - y_j| / sigma), Euclidean distances along the plane.
struct BoundaryKlBasis {
  Eigen::MatrixXd modes;       // one column per kept mode
  Eigen::VectorXd amplitudes;  // sqrt of the covariance eigenvalues
};

BoundaryKlBasis boundary_kl_basis(const StructuredMesh& mesh, double cov_sigma, int kl_modes);

/// Draws sample k of the spec. The RNG stream depends only on
/// (base_seed, strategy, k), never on evaluation order.
RawSample draw_raw(const SamplingSpec& spec, int k, const StructuredMesh& mesh);

/// Runs the full sampling stage: raw draws routed through the a-harmonic
/// projection (interior strategies) or the Dirichlet solve (boundary
/// strategies), then shifted to zero mean over the omega* nodes. Columns are
/// the N_r samples. Throws on a-harmonic residual failures and on samples
/// with vanishing omega* energy.
Eigen::MatrixXd generate_samples(const SamplingSpec& spec, const StiffnessSystem& system,
                                 const StructuredMesh& mesh, const HarmonicProjector& projector);

}  // namespace randbasis
