#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dqr {

// Run configuration, loadable from a sectioned key = value file. Unknown keys
// or sections are errors: a silently ignored alpha/xi/epsilon would corrupt a
// study. Negative xi / c0 mean "derive the default" (0.001/K and dim + 2).
struct RunConfig {
  // [run]
  std::vector<double> taus{0.25};
  std::uint64_t seed = 1;
  int lags = 0;
  int threads = 1;
  // [sampler]
  int chains = 20;
  double epsilon = 0.05;
  int m_min = 2;
  int m_max = 50;
  double kappa = 1e6;
  int fixed_lag = -1;  // < 0 disables fixed-lag sweeps
  int collect = 10;    // retained terminal sweeps pooled into the path summaries
  // [dma]
  double alpha = 0.99;
  double xi = -1.0;
  int model_cap = 16;
  // [prior]
  double a0 = 2.5;
  double b0 = 1.0;
  double c0 = -1.0;
  double c0_scale = 0.01;

  void validate() const;
  double resolve_xi(int K) const { return xi >= 0.0 ? xi : 0.001 / K; }

  // Stable serialization of every field; basis of the emitted hash.
  std::string canonical() const;
  std::string hash_hex() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace dqr
