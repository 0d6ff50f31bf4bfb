#pragma once

#include "mmwmc/channel.hpp"
#include "mmwmc/config.hpp"
#include "mmwmc/controller.hpp"
#include "mmwmc/deployment.hpp"
#include "mmwmc/measurement.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mmwmc {

struct TrialResult
{
  std::optional<double> serving_distance_m;  // empty on Detach
  int n_available = 0;                       // SCells with >= 1 detected CRT entry
  std::optional<AttachmentDecision> decision;
  int handovers = 0;                         // serving-cell changes between sweeps

  bool operator==(const TrialResult&) const = default;
};

/// Everything one trial produced, for `single-trial` traces.
struct TrialTrace
{
  std::uint64_t trial_index = 0;
  double lambda_bs = 0.0;
  double t_sig_s = 0.0;
  Deployment deployment;
  std::vector<DirectionalLink> links;
  std::vector<ReportTable> tables;
  CompleteReportTable crt;
  std::vector<HandoverOutcome> timeline;  // one outcome per sweep
  std::vector<ControlMessage> messages;   // final RT reports, then attach commands
  SweepStats sweep_stats;
  TrialResult result;
};

/// deployment -> links -> sweeps_per_trial sweeps (handover re-evaluated on the
/// CRT after each) -> final CRT -> select_best. Randomness comes only from
/// make_trial_rng(cfg.seed, trial_index) and is consumed identically for every
/// t_sig, so trials with equal indices are paired across durations.
TrialTrace run_trial_traced(const SimConfig& cfg, double lambda_bs, double t_sig_s, std::uint64_t trial_index);

TrialResult run_trial(const SimConfig& cfg, double lambda_bs, double t_sig_s, std::uint64_t trial_index);

/// Uses the first density of cfg.lambda_bs and cfg.t_sig_s.
TrialResult run_trial(const SimConfig& cfg, std::uint64_t trial_index);

struct MetricSummary
{
  std::optional<double> mean;  // empty when no trial contributes
  double std_error = 0.0;
  std::size_t n = 0;           // contributing trials
};

/// Sample mean and standard error (n-1 normalization; 0 when n < 2). Values are
/// sorted before summation so the result depends only on the multiset.
MetricSummary summarize(std::vector<double> values);

struct ServingDistanceSummary
{
  MetricSummary distance;        // over attached trials only
  double detach_fraction = 0.0;  // over all trials
};

/// Throws std::invalid_argument for an empty trial set.
ServingDistanceSummary mean_serving_distance(std::span<const TrialResult> results);
MetricSummary avg_available_cells(std::span<const TrialResult> results);
MetricSummary detach_fraction(std::span<const TrialResult> results);

struct CurvePoint
{
  double lambda_bs = 0.0;
  std::optional<double> mean;
  double std_error = 0.0;
  std::size_t n_trials = 0;
};

struct Curve
{
  std::string metric;
  std::vector<CurvePoint> points;
};

struct CampaignResult
{
  std::vector<Curve> curves;

  const Curve* find(const std::string& metric) const;
};

/// Metric name of the available-cells curve at one signal duration, e.g.
/// "available_cells_tsig_10us".
std::string available_cells_metric(double t_sig_s);

/// Runs every density in cfg.lambda_bs. Curves: serving_distance_m and
/// detach_fraction at cfg.t_sig_s, plus one available-cells curve per
/// cfg.t_sig_sweep_s entry. Trial index for density d and trial t is
/// d * n_trials + t. `threads` < 0 uses cfg.threads (0 = hardware).
CampaignResult run_campaign(const SimConfig& cfg, int threads = -1);

/// Header `lambda_bs,metric,mean,stderr,n_trials`; absent means are empty fields.
std::string campaign_csv(const CampaignResult& result);
nlohmann::json campaign_json(const CampaignResult& result);

/// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace mmwmc
