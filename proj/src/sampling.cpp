#include "randbasis/sampling.hpp"

#include "randbasis/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace randbasis {

int strategy_ordinal(Strategy s) { return static_cast<int>(s) + 1; }

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::InteriorDelta: return "interior_delta";
    case Strategy::InteriorIid: return "interior_iid";
    case Strategy::FullDomainIid: return "full_domain_iid";
    case Strategy::RandomGaussian: return "random_gaussian";
    case Strategy::BoundaryIid: return "boundary_iid";
    case Strategy::BoundaryExpCovariance: return "boundary_exp_covariance";
    case Strategy::BoundarySmoothed: return "boundary_smoothed";
  }
  throw std::invalid_argument("strategy_name: unknown strategy");
}

Strategy strategy_from_name(const std::string& name) {
  for (int i = 0; i < kNumStrategies; ++i) {
    const Strategy s = static_cast<Strategy>(i);
    if (strategy_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown sampling strategy '" + name + "'");
}

SamplingSpec resolve_spec(const SamplingSpec& spec, const StructuredMesh& mesh) {
  SamplingSpec r = spec;
  if (r.cov_sigma <= 0.0) {
    r.cov_sigma = mesh.patch.omega_star_half_width - mesh.patch.omega_half_width;
  }
  if (r.smooth_sigma <= 0.0) {
    // One sixteenth of the walk perimeter: the kernel must damp boundary
    // oscillations of the modes past the leading block, whose wavelengths
    // scale with the geometry rather than with the mesh spacing.
    r.smooth_sigma = 8.0 * mesh.patch.omega_star_half_width / 16.0;
  }
  // kl_modes == 0 keeps the 95%-of-trace rule inside boundary_kl_basis.
  const int n_boundary = 4 * (mesh.nodes_per_side - 1);
  if (r.n_samples < 1) throw std::invalid_argument("SamplingSpec: n_samples must be >= 1");
  if (!(r.gaussian_width > 0.0)) {
    throw std::invalid_argument("SamplingSpec: gaussian_width must be positive");
  }
  if (r.strategy == Strategy::BoundaryExpCovariance && r.kl_modes > n_boundary) {
    throw std::invalid_argument("SamplingSpec: kl_modes exceeds the boundary DOF count");
  }
  return r;
}

namespace {

std::vector<int> nodes_strictly_inside(const StructuredMesh& mesh) {
  std::vector<int> out;
  for (int iy = 0; iy < mesh.nodes_per_side; ++iy) {
    for (int ix = 0; ix < mesh.nodes_per_side; ++ix) {
      if (mesh.strictly_inside_omega(ix, iy)) out.push_back(mesh.node_index(ix, iy));
    }
  }
  return out;
}

std::vector<int> nodes_in_omega(const StructuredMesh& mesh) {
  std::vector<int> out;
  for (int idx = 0; idx < mesh.num_nodes(); ++idx) {
    if (mesh.in_omega[idx]) out.push_back(idx);
  }
  return out;
}

Eigen::VectorXd normal_vector(std::mt19937_64& eng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(eng);
  return v;
}

Eigen::VectorXd smooth_circular(const Eigen::VectorXd& raw, double sigma, double h) {
  const int n = static_cast<int>(raw.size());
  int half = static_cast<int>(std::floor(4.0 * sigma / h));
  half = std::min(std::max(half, 1), n / 2);
  Eigen::VectorXd kernel(2 * half + 1);
  for (int j = -half; j <= half; ++j) {
    const double arc = j * h;
    kernel[j + half] = std::exp(-arc * arc / (2.0 * sigma * sigma));
  }
  kernel /= kernel.sum();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -half; j <= half; ++j) {
      acc += kernel[j + half] * raw[(i + j + n) % n];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

BoundaryKlBasis boundary_kl_basis(const StructuredMesh& mesh, double cov_sigma, int kl_modes) {
  if (!(cov_sigma > 0.0)) {
    throw std::invalid_argument("boundary_kl_basis: cov_sigma must be positive");
  }
  const std::vector<int> walk = boundary_dofs(mesh, true);
  const int n = static_cast<int>(walk.size());
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double d = (mesh.nodes[walk[i]] - mesh.nodes[walk[j]]).norm();
      cov(i, j) = cov(j, i) = std::exp(-d / cov_sigma);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("boundary_kl_basis: covariance eigendecomposition failed");
  }
  // Eigen returns ascending order; keep the leading modes.
  const Eigen::VectorXd values = eig.eigenvalues().reverse();
  const double trace = values.sum();
  int keep = kl_modes;
  if (keep <= 0) {
    double acc = 0.0;
    keep = n;
    for (int i = 0; i < n; ++i) {
      acc += std::max(values[i], 0.0);
      if (acc >= 0.95 * trace) {
        keep = i + 1;
        break;
      }
    }
  }
  keep = std::min(keep, n);
  BoundaryKlBasis basis;
  basis.modes.resize(n, keep);
  basis.amplitudes.resize(keep);
  for (int i = 0; i < keep; ++i) {
    basis.modes.col(i) = eig.eigenvectors().col(n - 1 - i);
    basis.amplitudes[i] = std::sqrt(std::max(values[i], 0.0));
  }
  return basis;
}

namespace {

RawSample draw_raw_impl(const SamplingSpec& spec, int k, const StructuredMesh& mesh,
                        const BoundaryKlBasis* kl) {
  if (k < 0 || k >= spec.n_samples) {
    throw std::invalid_argument("draw_raw: sample index out of range");
  }
  std::mt19937_64 eng =
      make_engine(derive_seed(spec.base_seed, strategy_ordinal(spec.strategy), k));
  const int n_nodes = mesh.num_nodes();
  const int n_boundary = 4 * (mesh.nodes_per_side - 1);

  RawSample raw;
  switch (spec.strategy) {
    case Strategy::InteriorDelta: {
      const std::vector<int> candidates = nodes_strictly_inside(mesh);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(candidates.size()) - 1);
      raw.values = Eigen::VectorXd::Zero(n_nodes);
      raw.values[candidates[pick(eng)]] = 1.0;
      break;
    }
    case Strategy::InteriorIid: {
      raw.values = Eigen::VectorXd::Zero(n_nodes);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int idx : nodes_in_omega(mesh)) raw.values[idx] = normal(eng);
      break;
    }
    case Strategy::FullDomainIid: {
      raw.values = normal_vector(eng, n_nodes);
      break;
    }
    case Strategy::RandomGaussian: {
      const std::vector<int> candidates = nodes_in_omega(mesh);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(candidates.size()) - 1);
      const Eigen::Vector2d center = mesh.nodes[candidates[pick(eng)]];
      raw.values.resize(n_nodes);
      const double denom = 2.0 * spec.gaussian_width * spec.gaussian_width;
      for (int idx = 0; idx < n_nodes; ++idx) {
        raw.values[idx] = std::exp(-(mesh.nodes[idx] - center).squaredNorm() / denom);
      }
      break;
    }
    case Strategy::BoundaryIid: {
      raw.is_boundary_data = true;
      raw.values = normal_vector(eng, n_boundary);
      break;
    }
    case Strategy::BoundaryExpCovariance: {
      raw.is_boundary_data = true;
      BoundaryKlBasis local;
      if (kl == nullptr) {
        local = boundary_kl_basis(mesh, spec.cov_sigma, spec.kl_modes);
        kl = &local;
      }
      const Eigen::VectorXd z = normal_vector(eng, static_cast<int>(kl->amplitudes.size()));
      raw.values = kl->modes * kl->amplitudes.cwiseProduct(z);
      break;
    }
    case Strategy::BoundarySmoothed: {
      raw.is_boundary_data = true;
      raw.values =
          smooth_circular(normal_vector(eng, n_boundary), spec.smooth_sigma, mesh.patch.h);
      break;
    }
  }
  return raw;
}

}  // namespace

RawSample draw_raw(const SamplingSpec& spec, int k, const StructuredMesh& mesh) {
  return draw_raw_impl(resolve_spec(spec, mesh), k, mesh, nullptr);
}

Eigen::MatrixXd generate_samples(const SamplingSpec& spec, const StiffnessSystem& system,
                                 const StructuredMesh& mesh, const HarmonicProjector& projector) {
  const SamplingSpec r = resolve_spec(spec, mesh);

  BoundaryKlBasis kl;
  const BoundaryKlBasis* kl_ptr = nullptr;
  if (r.strategy == Strategy::BoundaryExpCovariance) {
    kl = boundary_kl_basis(mesh, r.cov_sigma, r.kl_modes);
    kl_ptr = &kl;
  }

  Eigen::MatrixXd samples(system.n_nodes, r.n_samples);
  for (int k = 0; k < r.n_samples; ++k) {
    const RawSample raw = draw_raw_impl(r, k, mesh, kl_ptr);
    GridFunction gamma = raw.is_boundary_data ? dirichlet_solve(system, raw.values)
                                              : projector.project(raw.values);
    const double residual = harmonic_residual(system, gamma);
    if (residual > system.residual_scale()) {
      std::ostringstream msg;
      msg << "generate_samples: sample " << k << " failed the a-harmonic residual check ("
          << residual << ")";
      throw std::runtime_error(msg.str());
    }
    gamma.array() -= gamma.mean();
    const double norm =
        std::sqrt(std::max(energy_inner(system, gamma, gamma, Region::OmegaStar), 0.0));
    if (norm < 1e-12) {
      std::ostringstream msg;
      msg << "generate_samples: degenerate sample " << k << " (omega* energy norm " << norm << ")";
      throw std::runtime_error(msg.str());
    }
    samples.col(k) = gamma;
  }
  return samples;
}

}  // namespace randbasis
