#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqr/config.hpp"
#include "dqr/dma.hpp"
#include "dqr/io.hpp"

namespace dqr {

// --- single-model fit ------------------------------------------------------

struct FitSeriesResult {
  double tau = 0.0;
  // coef[j][s]: cross-chain summary of coefficient j at time s+1, conditional
  // on the full sample.
  std::vector<std::vector<SummaryRow>> coef;
  // One-step-ahead Rao-Blackwellized quantile forecast issued before each
  // observation was absorbed (entry 0 predates any data).
  std::vector<double> forecasts;
  std::vector<int> m_history;
};

struct FitResult {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> column_names;
  std::vector<FitSeriesResult> per_tau;
};

FitResult run_fit(const SeriesData& data, const RunConfig& cfg, Logger* log = nullptr);

// --- dynamic model averaging over all regressor subsets ---------------------

struct DmaStepRow {
  int t = 0;                        // forecast target (1-based)
  Eigen::VectorXd pred_marginal;    // pi_{t|t-1}, length K
  Eigen::VectorXd model_forecasts;  // per-model quantile forecasts
  double dma_forecast = 0.0;
  double expected_size = 0.0;
  Eigen::VectorXd weight_var;       // across-chain variance of the predicted weights
};

struct DmaSeriesResult {
  double tau = 0.0;
  std::vector<DmaStepRow> rows;
  Eigen::VectorXd terminal_pred_marginal;  // pi_{T+1|T}
  Eigen::VectorXd inclusion_probability;   // per candidate regressor, terminal
  double terminal_expected_size = 0.0;
  std::vector<std::vector<int>> m_history;  // [model][time]
};

struct DmaResult {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> column_names;
  std::vector<ModelSpec> models;
  std::vector<DmaSeriesResult> per_tau;
};

DmaResult run_dma(const SeriesData& data, const RunConfig& cfg, Logger* log = nullptr);

// --- forecast scoring --------------------------------------------------------

struct ScoreResult {
  int n = 0;
  double mean_pinball = 0.0;
  double coverage = 0.0;
  bool has_coverage = false;
};

// Mean pinball loss of (realized - forecast) and, when bands are supplied,
// the fraction of points with realized value inside [lo, hi].
ScoreResult score_forecasts(const std::vector<double>& forecasts,
                            const std::vector<double>& realized, double tau,
                            const std::vector<double>* lo = nullptr,
                            const std::vector<double>* hi = nullptr);

// --- artifact emission -------------------------------------------------------

void write_fit_csv(const std::string& path, const FitResult& fit);
void write_fit_forecast_csv(const std::string& path, const FitResult& fit);
void write_dma_csv(const std::string& path, const DmaResult& dma);
void write_dma_summary(const std::string& path, const DmaResult& dma);

}  // namespace dqr
