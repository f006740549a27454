#include "dqr/runner.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dqr/parallel.hpp"

namespace dqr {

namespace {

PriorHyper hyper_for(const RunConfig& cfg, int dim) {
  PriorHyper h;
  h.a0 = cfg.a0;
  h.b0 = cfg.b0;
  h.c0 = cfg.c0 > 0.0 ? cfg.c0 : dim + 2.0;
  h.C0 = cfg.c0_scale * Eigen::MatrixXd::Identity(dim, dim);
  h.kappa = cfg.kappa;
  return h;
}

ConvergenceConfig conv_for(const RunConfig& cfg) {
  return ConvergenceConfig{cfg.epsilon, cfg.m_min, cfg.m_max};
}

// Density of the observation a freshly jumped chain just absorbed, read off
// its newest Kalman step; equals predictive_density evaluated before the jump
// at the jump-drawn augmentation.
double jumped_predictive_density(const ChainState& chain) {
  const KalmanStepResult& step = chain.filter_cache.back();
  return normal_pdf(step.innovation, 0.0, step.predictive_variance);
}

}  // namespace

FitResult run_fit(const SeriesData& data, const RunConfig& cfg, Logger* log) {
  cfg.validate();
  const int T = data.length();
  const int M = data.regressors();
  if (T < 2) throw std::invalid_argument("run_fit: need T >= 2");

  FitResult res;
  res.config_hash = cfg.hash_hex();
  res.seed = cfg.seed;
  res.column_names = data.column_names;

  const ModelSpec full{M > 1 ? ((1u << (M - 1)) - 1u) : 0u, M - 1};
  const RngStream master(cfg.seed);
  const ConvergenceConfig conv = conv_for(cfg);

  for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
    const QuantileConfig qc = make_quantile_config(cfg.taus[i]);
    const PriorHyper hyper = hyper_for(cfg, full.dim());
    ChainPopulation pop =
        init_population(cfg.chains, full, hyper, qc, master.child(i, 0));

    FitSeriesResult r;
    r.tau = cfg.taus[i];
    r.forecasts.reserve(T);
    for (int t = 0; t < T; ++t) {
      const Eigen::VectorXd x_full = data.X.row(t).transpose();
      const Eigen::VectorXd bhat = rao_blackwell_state_forecast(pop);
      r.forecasts.push_back(project_row(full, x_full).dot(bhat));
      step_time(pop, data.y[t], project_row(full, x_full), qc, hyper, conv,
                cfg.threads, log, cfg.fixed_lag);
    }
    // Path summaries pool the coefficient draws of `collect` retained sweeps
    // of the terminal population; L paths alone are a coarse estimate of the
    // 95% band.
    const int m = full.dim();
    std::vector<std::vector<std::vector<double>>> samples(
        m, std::vector<std::vector<double>>(T));
    for (int rep = 0; rep < cfg.collect; ++rep) {
      parallel_for(pop.size(), cfg.threads, [&](int l) {
        pop.chains[l] = transition_sweep(pop.chains[l], pop.series, qc, hyper,
                                         pop.rngs[l], nullptr, cfg.fixed_lag);
      });
      for (int l = 0; l < pop.size(); ++l) {
        for (int t = 0; t < T; ++t) {
          for (int j = 0; j < m; ++j) samples[j][t].push_back(pop.chains[l].betas[t][j]);
        }
      }
    }
    for (int j = 0; j < m; ++j) {
      std::vector<SummaryRow> rows(T);
      for (int t = 0; t < T; ++t) {
        const auto [lo, hi] = hpd_interval(samples[j][t], 0.95);
        rows[t] = SummaryRow{sample_median(samples[j][t]), lo, hi};
      }
      r.coef.push_back(std::move(rows));
    }
    r.m_history = pop.m_history;
    res.per_tau.push_back(std::move(r));
  }
  return res;
}

DmaResult run_dma(const SeriesData& data, const RunConfig& cfg, Logger* log) {
  cfg.validate();
  const int T = data.length();
  const int M = data.regressors();
  if (T < 2) throw std::invalid_argument("run_dma: need T >= 2");

  DmaResult res;
  res.config_hash = cfg.hash_hex();
  res.seed = cfg.seed;
  res.column_names = data.column_names;
  res.models = enumerate_models(M, cfg.model_cap);
  const int K = static_cast<int>(res.models.size());
  const int L = cfg.chains;
  const double xi = cfg.resolve_xi(K);
  const RngStream master(cfg.seed);
  const ConvergenceConfig conv = conv_for(cfg);

  Eigen::VectorXi sizes(K);
  for (int k = 0; k < K; ++k) sizes[k] = res.models[k].m();

  for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
    const QuantileConfig qc = make_quantile_config(cfg.taus[i]);
    std::vector<PriorHyper> hyper;
    std::vector<ChainPopulation> pops;
    hyper.reserve(K);
    pops.reserve(K);
    for (int k = 0; k < K; ++k) {
      hyper.push_back(hyper_for(cfg, res.models[k].dim()));
      pops.push_back(init_population(L, res.models[k], hyper[k], qc,
                                     master.child(i, k)));
    }

    DmaSeriesResult r;
    r.tau = cfg.taus[i];
    Eigen::MatrixXd upd = Eigen::MatrixXd::Constant(K, L, 1.0 / K);
    KernelDiag diag;

    for (int t = 0; t < T; ++t) {
      const Eigen::VectorXd x_full = data.X.row(t).transpose();

      // Forecast stage: everything here conditions on data through t only.
      Eigen::MatrixXd pred(K, L);
      for (int l = 0; l < L; ++l) pred.col(l) = predict_weights(upd.col(l), cfg.alpha, xi);
      Eigen::VectorXd forecasts(K);
      for (int k = 0; k < K; ++k) {
        forecasts[k] =
            project_row(res.models[k], x_full).dot(rao_blackwell_state_forecast(pops[k]));
      }
      DmaStepRow row;
      row.t = t + 1;
      row.pred_marginal = pred.rowwise().mean();
      row.model_forecasts = forecasts;
      row.dma_forecast = combine_quantile_forecast(row.pred_marginal, forecasts);
      row.expected_size = expected_model_size(row.pred_marginal, sizes);
      row.weight_var = weight_variance(pred);
      r.rows.push_back(std::move(row));

      // Update stage: absorb y_{t+1} into every model, then into the weights.
      Eigen::MatrixXd dens(K, L);
      for (int k = 0; k < K; ++k) {
        jump_all(pops[k], data.y[t], project_row(res.models[k], x_full), qc,
                 cfg.threads, &diag);
        for (int l = 0; l < L; ++l) dens(k, l) = jumped_predictive_density(pops[k].chains[l]);
      }
      upd = update_weights(pred, dens, &diag).upd;
      if (log) {
        log->event("dma_update",
                   {{"tau", Logger::num(r.tau)},
                    {"t", Logger::num(static_cast<long>(t + 1))},
                    {"zero_density", Logger::num(diag.zero_density)}});
      }
      for (int k = 0; k < K; ++k) {
        sweep_to_convergence(pops[k], qc, hyper[k], conv, cfg.threads, log, &diag,
                             cfg.fixed_lag);
      }
    }

    // Terminal prediction pi_{T+1|T} summarizes where the weights ended up.
    Eigen::MatrixXd pred(K, L);
    for (int l = 0; l < L; ++l) pred.col(l) = predict_weights(upd.col(l), cfg.alpha, xi);
    r.terminal_pred_marginal = pred.rowwise().mean();
    r.terminal_expected_size = expected_model_size(r.terminal_pred_marginal, sizes);
    r.inclusion_probability = Eigen::VectorXd::Zero(M - 1);
    for (int c = 0; c < M - 1; ++c) {
      for (int k = 0; k < K; ++k) {
        if (res.models[k].includes(c)) r.inclusion_probability[c] += r.terminal_pred_marginal[k];
      }
    }
    for (int k = 0; k < K; ++k) r.m_history.push_back(pops[k].m_history);
    res.per_tau.push_back(std::move(r));
  }
  return res;
}

ScoreResult score_forecasts(const std::vector<double>& forecasts,
                            const std::vector<double>& realized, double tau,
                            const std::vector<double>* lo,
                            const std::vector<double>* hi) {
  if (forecasts.size() != realized.size()) {
    throw std::invalid_argument("score_forecasts: length mismatch");
  }
  if (forecasts.empty()) throw std::invalid_argument("score_forecasts: empty input");
  if ((lo == nullptr) != (hi == nullptr)) {
    throw std::invalid_argument("score_forecasts: need both band edges or neither");
  }
  if (lo && (lo->size() != forecasts.size() || hi->size() != forecasts.size())) {
    throw std::invalid_argument("score_forecasts: band length mismatch");
  }
  ScoreResult out;
  out.n = static_cast<int>(forecasts.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    loss += pinball_loss(realized[i] - forecasts[i], tau);
  }
  out.mean_pinball = loss / out.n;
  if (lo) {
    int inside = 0;
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
      if (realized[i] >= (*lo)[i] && realized[i] <= (*hi)[i]) ++inside;
    }
    out.coverage = static_cast<double>(inside) / out.n;
    out.has_coverage = true;
  }
  return out;
}

void write_fit_csv(const std::string& path, const FitResult& fit) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : fit.per_tau) {
    for (std::size_t j = 0; j < r.coef.size(); ++j) {
      for (std::size_t s = 0; s < r.coef[j].size(); ++s) {
        rows.push_back({r.tau, static_cast<double>(s + 1), static_cast<double>(j),
                        r.coef[j][s].median, r.coef[j][s].hpd_low,
                        r.coef[j][s].hpd_high});
      }
    }
  }
  write_csv(path, "config_hash=" + fit.config_hash + " seed=" + std::to_string(fit.seed),
            {"tau", "t", "coef", "median", "lo", "hi"}, rows);
}

void write_fit_forecast_csv(const std::string& path, const FitResult& fit) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : fit.per_tau) {
    for (std::size_t t = 0; t < r.forecasts.size(); ++t) {
      rows.push_back({r.tau, static_cast<double>(t + 1), r.forecasts[t]});
    }
  }
  write_csv(path, "config_hash=" + fit.config_hash + " seed=" + std::to_string(fit.seed),
            {"tau", "t", "forecast"}, rows);
}

void write_dma_csv(const std::string& path, const DmaResult& dma) {
  const int K = static_cast<int>(dma.models.size());
  std::vector<std::string> header{"tau", "t", "forecast_dma", "expected_size"};
  for (int k = 0; k < K; ++k) header.push_back("pi_" + std::to_string(k + 1));
  for (int k = 0; k < K; ++k) header.push_back("forecast_" + std::to_string(k + 1));
  for (int k = 0; k < K; ++k) header.push_back("var_" + std::to_string(k + 1));
  std::vector<std::vector<double>> rows;
  for (const auto& r : dma.per_tau) {
    for (const auto& row : r.rows) {
      std::vector<double> out{r.tau, static_cast<double>(row.t), row.dma_forecast,
                              row.expected_size};
      for (int k = 0; k < K; ++k) out.push_back(row.pred_marginal[k]);
      for (int k = 0; k < K; ++k) out.push_back(row.model_forecasts[k]);
      for (int k = 0; k < K; ++k) out.push_back(row.weight_var[k]);
      rows.push_back(std::move(out));
    }
  }
  write_csv(path, "config_hash=" + dma.config_hash + " seed=" + std::to_string(dma.seed),
            header, rows);
}

void write_dma_summary(const std::string& path, const DmaResult& dma) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# config_hash=" << dma.config_hash << " seed=" << dma.seed << "\n";
  out << "models:\n";
  for (std::size_t k = 0; k < dma.models.size(); ++k) {
    out << "  " << (k + 1) << ":";
    for (int c : dma.models[k].column_indices()) {
      out << " " << dma.column_names[c];
    }
    out << "\n";
  }
  for (const auto& r : dma.per_tau) {
    out << "tau " << format_double(r.tau) << ":\n";
    out << "  terminal_pred_weights:";
    for (int k = 0; k < r.terminal_pred_marginal.size(); ++k) {
      out << " " << format_double(r.terminal_pred_marginal[k]);
    }
    out << "\n  terminal_expected_size: " << format_double(r.terminal_expected_size);
    out << "\n  inclusion_probability:";
    for (int c = 0; c < r.inclusion_probability.size(); ++c) {
      out << " " << dma.column_names[c + 1] << "="
          << format_double(r.inclusion_probability[c]);
    }
    out << "\n";
  }
}

}  // namespace dqr
