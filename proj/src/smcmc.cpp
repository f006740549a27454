#include "dqr/smcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "dqr/parallel.hpp"

namespace dqr {

ChainPopulation init_population(int L, const ModelSpec& model, const PriorHyper& hyper,
                                const QuantileConfig& qc, const RngStream& parent) {
  if (L < 2) {
    throw std::invalid_argument(
        "init_population: need at least two chains for the rate estimator");
  }
  ChainPopulation pop;
  pop.model = model;
  pop.chains.reserve(L);
  pop.rngs.reserve(L);
  for (int l = 0; l < L; ++l) {
    pop.rngs.push_back(parent.child(static_cast<std::uint64_t>(l) + 1));
    pop.chains.push_back(init_chain(model.dim(), hyper, qc, pop.rngs.back()));
  }
  return pop;
}

Eigen::VectorXd monitor_coordinates(const ChainState& chain) {
  const int m = chain.dim();
  const int t = chain.time();
  const int n_vech = m * (m + 1) / 2;
  Eigen::VectorXd v(1 + n_vech + (t > 0 ? m + 1 : 0));
  int k = 0;
  v[k++] = chain.sigma;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) v[k++] = chain.Omega(i, j);
  }
  if (t > 0) {
    v.segment(k, m) = chain.betas.back();
    k += m;
    v[k++] = chain.omegas.back();
  }
  return v;
}

double estimate_rate(const std::vector<Eigen::VectorXd>& snapshot_first,
                     const std::vector<Eigen::VectorXd>& snapshot_s,
                     KernelDiag* diag) {
  const int L = static_cast<int>(snapshot_first.size());
  if (L < 2 || snapshot_s.size() != snapshot_first.size()) {
    throw std::invalid_argument("estimate_rate: need matching snapshots of >= 2 chains");
  }
  const int p = static_cast<int>(snapshot_first.front().size());
  double rate = 0.0;
  bool any = false;
  for (int j = 0; j < p; ++j) {
    double mean1 = 0.0, means = 0.0;
    for (int l = 0; l < L; ++l) {
      mean1 += snapshot_first[l][j];
      means += snapshot_s[l][j];
    }
    mean1 /= L;
    means /= L;
    double c11 = 0.0, css = 0.0, c1s = 0.0;
    for (int l = 0; l < L; ++l) {
      const double d1 = snapshot_first[l][j] - mean1;
      const double ds = snapshot_s[l][j] - means;
      c11 += d1 * d1;
      css += ds * ds;
      c1s += d1 * ds;
    }
    const double scale = std::max({std::abs(mean1), std::abs(means), 1.0});
    if (c11 <= 1e-24 * scale * scale || css <= 1e-24 * scale * scale) {
      if (diag) ++diag->rate_skipped;
      continue;
    }
    const double r = c1s / std::sqrt(c11 * css);
    rate = any ? std::max(rate, r) : r;
    any = true;
  }
  return any ? rate : 0.0;
}

void jump_all(ChainPopulation& pop, double y_new, const Eigen::VectorXd& x_new,
              const QuantileConfig& qc, int threads, KernelDiag* diag) {
  pop.series.append_row(y_new, x_new);
  const int L = pop.size();
  std::vector<KernelDiag> local(L);
  parallel_for(L, threads, [&](int l) {
    pop.chains[l] = jump_extend(pop.chains[l], y_new, x_new, qc, pop.rngs[l], &local[l]);
  });
  if (diag) {
    for (const auto& d : local) diag->add(d);
  }
  ++pop.t;
}

namespace {
bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }
}  // namespace

int sweep_to_convergence(ChainPopulation& pop, const QuantileConfig& qc,
                         const PriorHyper& hyper, const ConvergenceConfig& conv,
                         int threads, Logger* log, KernelDiag* diag, int fixed_lag) {
  if (conv.m_min < 1 || conv.m_max < conv.m_min ||
      !(conv.epsilon > 0.0 && conv.epsilon < 1.0)) {
    throw std::invalid_argument("sweep_to_convergence: bad convergence config");
  }
  const int L = pop.size();
  std::vector<Eigen::VectorXd> first_snapshot, current(L);
  std::vector<KernelDiag> local(L);
  KernelDiag monitor_diag;

  int sweeps = 0;
  double rate = std::numeric_limits<double>::quiet_NaN();
  while (sweeps < conv.m_max) {
    parallel_for(L, threads, [&](int l) {
      pop.chains[l] = transition_sweep(pop.chains[l], pop.series, qc, hyper,
                                       pop.rngs[l], &local[l], fixed_lag);
    });
    ++sweeps;
    if (sweeps == 1) {
      first_snapshot.resize(L);
      for (int l = 0; l < L; ++l) first_snapshot[l] = monitor_coordinates(pop.chains[l]);
      continue;
    }
    // Lag s = sweeps - 1 relative to the first iteration's cross-section.
    if (sweeps < conv.m_min || !is_power_of_two(sweeps - 1)) continue;
    for (int l = 0; l < L; ++l) current[l] = monitor_coordinates(pop.chains[l]);
    rate = estimate_rate(first_snapshot, current, &monitor_diag);
    if (log) {
      log->event("rate", {{"t", Logger::num(static_cast<long>(pop.t))},
                          {"s", Logger::num(static_cast<long>(sweeps - 1))},
                          {"rhat", Logger::num(rate)}});
    }
    if (rate <= 1.0 - conv.epsilon) break;
  }
  pop.m_history.push_back(sweeps);
  KernelDiag total = monitor_diag;
  for (const auto& d : local) total.add(d);
  if (diag) diag->add(total);
  if (log) {
    log->event("step", {{"t", Logger::num(static_cast<long>(pop.t))},
                        {"m_t", Logger::num(static_cast<long>(sweeps))},
                        {"rhat", Logger::num(rate)},
                        {"omega_floors", Logger::num(total.omega_floor)},
                        {"jitters", Logger::num(total.smoother_jitter)}});
  }
  return sweeps;
}

void step_time(ChainPopulation& pop, double y_new, const Eigen::VectorXd& x_new,
               const QuantileConfig& qc, const PriorHyper& hyper,
               const ConvergenceConfig& conv, int threads, Logger* log, int fixed_lag) {
  jump_all(pop, y_new, x_new, qc, threads);
  sweep_to_convergence(pop, qc, hyper, conv, threads, log, nullptr, fixed_lag);
}

double sample_median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("sample_median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::pair<double, double> hpd_interval(std::vector<double> values, double level) {
  if (values.empty()) throw std::invalid_argument("hpd_interval: empty input");
  if (!(level > 0.0 && level <= 1.0)) throw std::invalid_argument("hpd_interval: bad level");
  std::sort(values.begin(), values.end());
  const int n = static_cast<int>(values.size());
  // (n+1)-based window: the mass between order statistics X(i), X(i+w-1)
  // averages (w-1)/(n+1), so w = ceil(level (n+1)) keeps small-sample
  // intervals from systematically undercovering.
  const int w = std::min(n, std::max(1, static_cast<int>(std::ceil(level * (n + 1)))));
  int best = 0;
  double best_width = values[w - 1] - values[0];
  for (int i = 1; i + w <= n; ++i) {
    const double width = values[i + w - 1] - values[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {values[best], values[best + w - 1]};
}

std::vector<SummaryRow> posterior_summary(const ChainPopulation& pop, int coef,
                                          double level) {
  if (pop.size() < 2) throw std::invalid_argument("posterior_summary: need >= 2 chains");
  if (coef < 0 || coef >= pop.model.dim()) {
    throw std::invalid_argument("posterior_summary: coefficient out of range");
  }
  std::vector<SummaryRow> rows(pop.t);
  std::vector<double> vals(pop.size());
  for (int s = 0; s < pop.t; ++s) {
    for (int l = 0; l < pop.size(); ++l) vals[l] = pop.chains[l].betas[s][coef];
    const auto [lo, hi] = hpd_interval(vals, level);
    rows[s] = SummaryRow{sample_median(vals), lo, hi};
  }
  return rows;
}

}  // namespace dqr
