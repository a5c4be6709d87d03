#include "randbasis/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace randbasis {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value '" + v + "' for key '" + key + "'");
  }
}

long to_long(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const long n = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value '" + v + "' for key '" + key + "'");
  }
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: bad boolean value '" + v + "' for key '" + key + "'");
}

}  // namespace

SamplingSpec ExperimentConfig::sampling_spec(Strategy strategy, std::uint64_t seed) const {
  SamplingSpec spec;
  spec.strategy = strategy;
  spec.n_samples = n_samples;
  spec.base_seed = seed;
  spec.gaussian_width = gaussian_width;
  spec.cov_sigma = cov_sigma;
  spec.smooth_sigma = smooth_sigma;
  spec.kl_modes = kl_modes;
  return spec;
}

CoefficientField ExperimentConfig::make_field() const {
  const double hw = patch.omega_star_half_width;
  if (medium_kind == "paper") return CoefficientField::paper(hw);
  if (medium_kind == "constant") return CoefficientField::constant(medium_value, hw);
  if (medium_kind == "tabulated") return CoefficientField::tabulated(medium_path, hw);
  throw std::invalid_argument("config: unknown medium kind '" + medium_kind + "'");
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": expected key = value";
      throw std::invalid_argument(msg.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "patch.omega_half_width") {
      cfg.patch.omega_half_width = to_double(value, key);
    } else if (key == "patch.omega_star_half_width") {
      cfg.patch.omega_star_half_width = to_double(value, key);
    } else if (key == "patch.h") {
      cfg.patch.h = to_double(value, key);
    } else if (key == "medium") {
      if (value == "paper") {
        cfg.medium_kind = "paper";
      } else if (value.rfind("constant:", 0) == 0) {
        cfg.medium_kind = "constant";
        cfg.medium_value = to_double(trim(value.substr(9)), key);
      } else if (value.rfind("tabulated:", 0) == 0) {
        cfg.medium_kind = "tabulated";
        cfg.medium_path = trim(value.substr(10));
      } else {
        throw std::invalid_argument(
            "config: medium must be 'paper', 'constant:<v>' or 'tabulated:<path>'");
      }
    } else if (key == "strategies") {
      cfg.strategies.clear();
      if (value == "all") {
        for (int i = 0; i < kNumStrategies; ++i) {
          cfg.strategies.push_back(static_cast<Strategy>(i));
        }
      } else {
        for (const auto& name : split_list(value)) {
          cfg.strategies.push_back(strategy_from_name(name));
        }
      }
      if (cfg.strategies.empty()) {
        throw std::invalid_argument("config: strategies list is empty");
      }
    } else if (key == "sampling.n_samples") {
      cfg.n_samples = static_cast<int>(to_long(value, key));
    } else if (key == "sampling.gaussian_width") {
      cfg.gaussian_width = to_double(value, key);
    } else if (key == "sampling.cov_sigma") {
      cfg.cov_sigma = to_double(value, key);
    } else if (key == "sampling.smooth_sigma") {
      cfg.smooth_sigma = to_double(value, key);
    } else if (key == "sampling.kl_modes") {
      cfg.kl_modes = static_cast<int>(to_long(value, key));
    } else if (key == "distance_target_n") {
      cfg.distance_target_n = static_cast<int>(to_long(value, key));
    } else if (key == "distance_m_range") {
      const std::size_t dots = value.find("..");
      if (dots == std::string::npos) {
        throw std::invalid_argument("config: distance_m_range must look like 5..20");
      }
      cfg.distance_m_min = static_cast<int>(to_long(trim(value.substr(0, dots)), key));
      cfg.distance_m_max = static_cast<int>(to_long(trim(value.substr(dots + 2)), key));
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const auto& s : split_list(value)) {
        cfg.seeds.push_back(static_cast<std::uint64_t>(to_long(s, key)));
      }
    } else if (key == "tol") {
      cfg.tol = to_double(value, key);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "include_corners") {
      cfg.include_corners = to_bool(value, key);
    } else {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": unknown config key '" << key << "'";
      throw std::invalid_argument(msg.str());
    }
  }

  if (cfg.seeds.empty()) {
    throw std::invalid_argument("config: at least one seed is required");
  }
  if (cfg.distance_m_min > cfg.distance_m_max) {
    throw std::invalid_argument("config: distance_m_range is empty");
  }
  if (cfg.distance_target_n > cfg.distance_m_min) {
    throw std::invalid_argument("config: distance_target_n must be <= min of distance_m_range");
  }
  if (cfg.n_samples < 1) {
    throw std::invalid_argument("config: sampling.n_samples must be >= 1");
  }
  return cfg;
}

}  // namespace randbasis
