#include "mmwmc/experiments.hpp"

#include "mmwmc/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace mmwmc {

namespace {

std::string fmt_g(double v, int precision)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

ChannelParams effective_channel(const SimConfig& cfg)
{
  ChannelParams ch = cfg.channel;
  ch.pathloss.carrier_hz = cfg.f_c_hz;
  return ch;
}

} // namespace

TrialTrace run_trial_traced(const SimConfig& cfg, double lambda_bs, double t_sig_s, std::uint64_t trial_index)
{
  TrialTrace tr;
  tr.trial_index = trial_index;
  tr.lambda_bs = lambda_bs;
  tr.t_sig_s = t_sig_s;

  Rng rng = make_trial_rng(cfg.seed, trial_index);
  const ChannelParams channel = effective_channel(cfg);
  const MeasurementConfig mcfg = measurement_config(cfg, t_sig_s);

  tr.deployment = sample_deployment(rng, lambda_bs, cfg.area);
  tr.links.reserve(tr.deployment.scell_count());
  for (std::size_t j = 0; j < tr.deployment.scell_count(); ++j) {
    tr.links.push_back(sample_link(tr.deployment.scell_ids[j], tr.deployment.ue_position,
                                   tr.deployment.scell_positions[j], channel, rng));
  }

  std::optional<AttachmentDecision> serving;
  for (int sweep = 0; sweep < cfg.sweeps_per_trial; ++sweep) {
    if (sweep > 0 && cfg.refresh_fading) {
      for (DirectionalLink& link : tr.links) {
        refresh_fading(link, rng);
      }
    }
    tr.sweep_stats = full_sweep(tr.links, mcfg, tr.tables);

    const HandoverOutcome outcome = handover_decision(assemble_crt(tr.tables), serving, cfg.policy);
    if (const auto* h = std::get_if<Handover>(&outcome)) {
      if (serving && serving->n_id != h->target.n_id) {
        ++tr.result.handovers;
      }
      serving = h->target;
    } else if (std::holds_alternative<Detach>(outcome)) {
      serving.reset();
    }
    tr.timeline.push_back(outcome);
  }

  tr.crt = assemble_crt(tr.tables);
  for (const ReportTable& t : tr.crt.columns) {
    if (t.any_detected()) {
      ++tr.result.n_available;
    }
    tr.messages.emplace_back(RtReport{t.scell_id, t});
  }

  HandoverOutcome attach = Detach{};
  try {
    const AttachmentDecision d = select_best(tr.crt, cfg.policy);
    tr.result.decision = d;
    const auto it = std::find(tr.deployment.scell_ids.begin(), tr.deployment.scell_ids.end(), d.n_id);
    tr.result.serving_distance_m = tr.links[static_cast<std::size_t>(it - tr.deployment.scell_ids.begin())].distance_m;
    attach = Handover{d};
  } catch (const NoCellAvailable&) {
  }
  for (ControlMessage& m : emit_commands(attach)) {
    tr.messages.push_back(std::move(m));
  }
  return tr;
}

TrialResult run_trial(const SimConfig& cfg, double lambda_bs, double t_sig_s, std::uint64_t trial_index)
{
  return run_trial_traced(cfg, lambda_bs, t_sig_s, trial_index).result;
}

TrialResult run_trial(const SimConfig& cfg, std::uint64_t trial_index)
{
  if (cfg.lambda_bs.empty()) {
    throw std::invalid_argument("config has no density");
  }
  return run_trial(cfg, cfg.lambda_bs.front(), cfg.t_sig_s, trial_index);
}

MetricSummary summarize(std::vector<double> values)
{
  MetricSummary s;
  s.n = values.size();
  if (values.empty()) {
    return s;
  }
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(values.size());
  s.mean = mean;
  if (values.size() >= 2) {
    double acc = 0.0;
    for (double v : values) {
      acc += (v - mean) * (v - mean);
    }
    const double var = acc / static_cast<double>(values.size() - 1);
    s.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return s;
}

ServingDistanceSummary mean_serving_distance(std::span<const TrialResult> results)
{
  if (results.empty()) {
    throw std::invalid_argument("no trials to aggregate");
  }
  std::vector<double> distances;
  for (const TrialResult& r : results) {
    if (r.serving_distance_m) {
      distances.push_back(*r.serving_distance_m);
    }
  }
  ServingDistanceSummary s;
  s.detach_fraction =
    static_cast<double>(results.size() - distances.size()) / static_cast<double>(results.size());
  s.distance = summarize(std::move(distances));
  return s;
}

MetricSummary avg_available_cells(std::span<const TrialResult> results)
{
  if (results.empty()) {
    throw std::invalid_argument("no trials to aggregate");
  }
  std::vector<double> counts;
  counts.reserve(results.size());
  for (const TrialResult& r : results) {
    counts.push_back(static_cast<double>(r.n_available));
  }
  return summarize(std::move(counts));
}

MetricSummary detach_fraction(std::span<const TrialResult> results)
{
  if (results.empty()) {
    throw std::invalid_argument("no trials to aggregate");
  }
  std::vector<double> flags;
  flags.reserve(results.size());
  for (const TrialResult& r : results) {
    flags.push_back(r.decision ? 0.0 : 1.0);
  }
  return summarize(std::move(flags));
}

const Curve* CampaignResult::find(const std::string& metric) const
{
  for (const Curve& c : curves) {
    if (c.metric == metric) {
      return &c;
    }
  }
  return nullptr;
}

std::string available_cells_metric(double t_sig_s)
{
  return "available_cells_tsig_" + fmt_g(t_sig_s * 1e6, 6) + "us";
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn)
{
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
          next.store(n);
        }
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

CampaignResult run_campaign(const SimConfig& cfg, int threads)
{
  validate(cfg);
  const int n_threads = threads >= 0 ? threads : cfg.threads;
  const std::size_t n_density = cfg.lambda_bs.size();
  const std::size_t n_trials = cfg.n_trials;

  // Durations to simulate: the primary one first, then the extra sweep values.
  std::vector<double> durations{cfg.t_sig_s};
  for (double t : cfg.t_sig_sweep_s) {
    if (std::find(durations.begin(), durations.end(), t) == durations.end()) {
      durations.push_back(t);
    }
  }

  // results[(duration * n_density + density) * n_trials + trial]
  std::vector<TrialResult> results(durations.size() * n_density * n_trials);
  parallel_for(results.size(), n_threads, [&](std::size_t n) {
    const std::size_t trial = n % n_trials;
    const std::size_t density = (n / n_trials) % n_density;
    const std::size_t duration = n / (n_trials * n_density);
    results[n] = run_trial(cfg, cfg.lambda_bs[density], durations[duration], density * n_trials + trial);
  });

  auto slice = [&](std::size_t duration, std::size_t density) {
    return std::span<const TrialResult>(results).subspan((duration * n_density + density) * n_trials, n_trials);
  };

  CampaignResult out;
  Curve distance{"serving_distance_m", {}};
  Curve detach{"detach_fraction", {}};
  for (std::size_t d = 0; d < n_density; ++d) {
    const auto trials = slice(0, d);
    const ServingDistanceSummary sd = mean_serving_distance(trials);
    distance.points.push_back({cfg.lambda_bs[d], sd.distance.mean, sd.distance.std_error, sd.distance.n});
    const MetricSummary df = detach_fraction(trials);
    detach.points.push_back({cfg.lambda_bs[d], df.mean, df.std_error, df.n});
  }
  out.curves.push_back(std::move(distance));
  out.curves.push_back(std::move(detach));

  for (double t_sig : cfg.t_sig_sweep_s) {
    const auto duration = static_cast<std::size_t>(std::find(durations.begin(), durations.end(), t_sig) -
                                                   durations.begin());
    Curve available{available_cells_metric(t_sig), {}};
    for (std::size_t d = 0; d < n_density; ++d) {
      const MetricSummary s = avg_available_cells(slice(duration, d));
      available.points.push_back({cfg.lambda_bs[d], s.mean, s.std_error, s.n});
    }
    out.curves.push_back(std::move(available));
  }
  return out;
}

std::string campaign_csv(const CampaignResult& result)
{
  std::string out = "lambda_bs,metric,mean,stderr,n_trials\n";
  std::vector<double> lambdas;
  for (const Curve& c : result.curves) {
    for (const CurvePoint& p : c.points) {
      if (std::find(lambdas.begin(), lambdas.end(), p.lambda_bs) == lambdas.end()) {
        lambdas.push_back(p.lambda_bs);
      }
    }
  }
  for (double lambda : lambdas) {
    for (const Curve& c : result.curves) {
      for (const CurvePoint& p : c.points) {
        if (p.lambda_bs != lambda) {
          continue;
        }
        out += fmt_g(p.lambda_bs, 10) + "," + c.metric + ",";
        if (p.mean) {
          out += fmt_g(*p.mean, 10) + "," + fmt_g(p.std_error, 10);
        } else {
          out += ",";
        }
        out += "," + std::to_string(p.n_trials) + "\n";
      }
    }
  }
  return out;
}

nlohmann::json campaign_json(const CampaignResult& result)
{
  nlohmann::json curves = nlohmann::json::array();
  for (const Curve& c : result.curves) {
    nlohmann::json points = nlohmann::json::array();
    for (const CurvePoint& p : c.points) {
      points.push_back({{"lambda_bs", p.lambda_bs},
                        {"mean", p.mean ? nlohmann::json(*p.mean) : nlohmann::json(nullptr)},
                        {"stderr", p.mean ? nlohmann::json(p.std_error) : nlohmann::json(nullptr)},
                        {"n_trials", p.n_trials}});
    }
    curves.push_back({{"metric", c.metric}, {"points", std::move(points)}});
  }
  return {{"curves", std::move(curves)}};
}

} // namespace mmwmc
