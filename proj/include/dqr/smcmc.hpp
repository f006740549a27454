#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dqr/gibbs.hpp"
#include "dqr/log.hpp"
#include "dqr/model_space.hpp"

namespace dqr {

// Stopping rule for the per-step sweep count m_t: sweep until the cross-chain
// lag correlation drops to 1 - epsilon, bounded by [m_min, m_max]. The
// correlation is re-estimated at geometrically spaced lags 1, 2, 4, ...
struct ConvergenceConfig {
  double epsilon = 0.05;
  int m_min = 2;
  int m_max = 50;
};

// L parallel inhomogeneous chains for one regressor subset, all at the same
// time index, each owning its RNG stream. series collects the projected
// observations the population has absorbed so far.
struct ChainPopulation {
  ModelSpec model;
  SeriesData series;
  std::vector<ChainState> chains;
  std::vector<RngStream> rngs;
  int t = 0;
  std::vector<int> m_history;

  int size() const { return static_cast<int>(chains.size()); }
};

// L >= 2 prior-initialized chains at t = 0; stream l is parent.child(l).
ChainPopulation init_population(int L, const ModelSpec& model, const PriorHyper& hyper,
                                const QuantileConfig& qc, const RngStream& parent);

// Monitored coordinates of one chain: sigma, vech(Omega), b_t, w_t.
Eigen::VectorXd monitor_coordinates(const ChainState& chain);

// Max over coordinates of the cross-chain correlation between two population
// cross-sections (iteration 1 vs iteration s+1). Coordinates with vanishing
// variance on either side are skipped; with none left the rate is 0.
double estimate_rate(const std::vector<Eigen::VectorXd>& snapshot_first,
                     const std::vector<Eigen::VectorXd>& snapshot_s,
                     KernelDiag* diag = nullptr);

// Dimension-extending move: every chain absorbs the new observation (already
// projected onto the population's model).
void jump_all(ChainPopulation& pop, double y_new, const Eigen::VectorXd& x_new,
              const QuantileConfig& qc, int threads, KernelDiag* diag = nullptr);

// Repeated transition sweeps until the rate criterion or m_max; returns and
// records m_t. fixed_lag as in transition_sweep.
int sweep_to_convergence(ChainPopulation& pop, const QuantileConfig& qc,
                         const PriorHyper& hyper, const ConvergenceConfig& conv,
                         int threads, Logger* log = nullptr,
                         KernelDiag* diag = nullptr, int fixed_lag = -1);

// One full time step: jump then sweeps.
void step_time(ChainPopulation& pop, double y_new, const Eigen::VectorXd& x_new,
               const QuantileConfig& qc, const PriorHyper& hyper,
               const ConvergenceConfig& conv, int threads = 1, Logger* log = nullptr,
               int fixed_lag = -1);

double sample_median(std::vector<double> values);

// Shortest interval containing ceil(level * n) of the sorted values.
std::pair<double, double> hpd_interval(std::vector<double> values, double level);

struct SummaryRow {
  double median;
  double hpd_low;
  double hpd_high;
};

// Cross-chain median and 95% HPD of coefficient `coef` at every time index.
std::vector<SummaryRow> posterior_summary(const ChainPopulation& pop, int coef,
                                          double level = 0.95);

}  // namespace dqr
