#include "mmwmc/experiments.hpp"

#include "mmwmc/json_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace mmwmc;

namespace {

SimConfig small_config()
{
  SimConfig cfg;
  cfg.lambda_bs = {20.0, 60.0};
  cfg.n_trials = 40;
  cfg.sweeps_per_trial = 3;
  return cfg;
}

TrialResult attached_at(double d)
{
  TrialResult r;
  r.serving_distance_m = d;
  r.decision = AttachmentDecision{1, 0, 0, 0.0, std::nullopt};
  r.n_available = 1;
  return r;
}

} // namespace

TEST_CASE("serving distance aggregation")
{
  const std::vector<TrialResult> two{attached_at(100.0), attached_at(200.0)};
  ServingDistanceSummary s = mean_serving_distance(two);
  CHECK(*s.distance.mean == 150.0);
  CHECK(s.detach_fraction == 0.0);

  const std::vector<TrialResult> one{attached_at(42.0)};
  CHECK(*mean_serving_distance(one).distance.mean == 42.0);
  CHECK(mean_serving_distance(one).distance.std_error == 0.0);

  const std::vector<TrialResult> mixed{attached_at(100.0), attached_at(200.0), TrialResult{}};
  s = mean_serving_distance(mixed);
  CHECK(*s.distance.mean == 150.0);
  CHECK(s.distance.n == 2);
  CHECK(s.detach_fraction == doctest::Approx(1.0 / 3.0));

  const std::vector<TrialResult> detached(3);
  CHECK_FALSE(mean_serving_distance(detached).distance.mean.has_value());
  CHECK(mean_serving_distance(detached).detach_fraction == 1.0);
  CHECK_THROWS(mean_serving_distance(std::vector<TrialResult>{}));
}

TEST_CASE("available cells aggregation")
{
  std::vector<TrialResult> rs(3);
  rs[1].n_available = 2;
  rs[2].n_available = 4;
  CHECK(*avg_available_cells(rs).mean == 2.0);
  CHECK(*avg_available_cells(std::vector<TrialResult>(5)).mean == 0.0);
}

TEST_CASE("summarize")
{
  const MetricSummary s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(*s.mean == 2.5);
  // sample std sqrt(5/3), over sqrt(4)
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK_FALSE(summarize({}).mean.has_value());

  // order of the inputs does not matter, bit for bit
  std::mt19937_64 rng{1};
  std::normal_distribution<double> x(50.0, 30.0);
  std::vector<double> v(1000);
  for (double& e : v) {
    e = x(rng);
  }
  const MetricSummary a = summarize(v);
  std::shuffle(v.begin(), v.end(), rng);
  const MetricSummary b = summarize(v);
  CHECK(*a.mean == *b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("empty deployment detaches")
{
  SimConfig cfg;
  const TrialTrace tr = run_trial_traced(cfg, 0.0, cfg.t_sig_s, 0);
  CHECK(tr.deployment.scell_count() == 0);
  CHECK(tr.crt.n_scells() == 0);
  CHECK_FALSE(tr.result.decision.has_value());
  CHECK_FALSE(tr.result.serving_distance_m.has_value());
  CHECK(tr.result.n_available == 0);
  CHECK(tr.messages.empty());
  for (const HandoverOutcome& o : tr.timeline) {
    CHECK(std::holds_alternative<Detach>(o));
  }
}

TEST_CASE("a close LOS cell without shadowing is selected")
{
  ChannelParams ch;
  ch.pathloss.los.sigma_db = 0.0;
  ch.pathloss.nlos.sigma_db = 0.0;
  Rng rng{6};
  DirectionalLink near;
  do {
    near = sample_link(1, {0, 0}, {10, 0}, ch, rng);
  } while (near.state != LinkState::Los);
  const DirectionalLink far = sample_link(2, {0, 0}, {400, 0}, ch, rng);
  const std::vector<DirectionalLink> links{far, near};
  std::vector<ReportTable> tables;
  const MeasurementConfig mcfg;
  full_sweep(links, mcfg, tables);
  const AttachmentDecision d = select_best(assemble_crt(tables), MaxSinr{});
  CHECK(d.n_id == 1);
  // 30 dBm - 81.4 dB + 79 dB leaves a wide margin over tau even off-beam.
  CHECK(d.sinr_db > 20.0);
}

TEST_CASE("trials are deterministic and self-consistent")
{
  const SimConfig cfg = small_config();
  for (std::uint64_t idx = 0; idx < 15; ++idx) {
    const TrialTrace a = run_trial_traced(cfg, 60.0, cfg.t_sig_s, idx);
    const TrialResult b = run_trial(cfg, 60.0, cfg.t_sig_s, idx);
    CHECK(a.result == b);
    REQUIRE(a.timeline.size() == 3);

    // CRT is N_UE x M and the decision replays from it
    CHECK(a.crt.n_ue_dirs == 8);
    CHECK(a.crt.n_scells() == a.deployment.scell_count());
    int recount = 0;
    for (const ReportTable& t : a.crt.columns) {
      recount += std::any_of(t.rows.begin(), t.rows.end(), [](const RtEntry& e) { return e.detected(); }) ? 1 : 0;
    }
    CHECK(recount == a.result.n_available);
    const CompleteReportTable replay = crt_from_json(nlohmann::json::parse(to_json(a.crt, true).dump()));
    if (a.result.decision) {
      CHECK(select_best(replay, cfg.policy) == *a.result.decision);
      const auto& id = a.result.decision->n_id;
      CHECK(*a.result.serving_distance_m == a.links[static_cast<std::size_t>(id - 1)].distance_m);
      // last two messages are the attach commands
      REQUIRE(a.messages.size() >= 2);
      CHECK(std::get<PathSwitchCommand>(a.messages[a.messages.size() - 2]).n_id == id);
      CHECK(std::get<UeSteerCommand>(a.messages.back()).d_ue == a.result.decision->d_ue);
    } else {
      CHECK_THROWS_AS(select_best(replay, cfg.policy), NoCellAvailable);
    }
  }
}

TEST_CASE("longer sounding dominates trial by trial")
{
  const SimConfig cfg = small_config();
  int larger = 0;
  for (std::uint64_t idx = 0; idx < 40; ++idx) {
    const TrialTrace s = run_trial_traced(cfg, 30.0, 10e-6, idx);
    const TrialTrace l = run_trial_traced(cfg, 30.0, 100e-6, idx);
    REQUIRE(s.deployment.scell_positions == l.deployment.scell_positions);
    CHECK(l.result.n_available >= s.result.n_available);
    larger += l.result.n_available > s.result.n_available ? 1 : 0;
  }
  CHECK(larger > 0);
}

TEST_CASE("campaign is independent of thread count")
{
  SimConfig cfg = small_config();
  const std::string one = campaign_csv(run_campaign(cfg, 1));
  const std::string four = campaign_csv(run_campaign(cfg, 4));
  CHECK(one == four);
  CHECK(campaign_json(run_campaign(cfg, 3)) == campaign_json(run_campaign(cfg, 1)));
}

TEST_CASE("campaign layout")
{
  SimConfig cfg = small_config();
  cfg.lambda_bs = {25.0};
  const CampaignResult r = run_campaign(cfg, 1);
  REQUIRE(r.curves.size() == 4);
  CHECK(r.find("serving_distance_m") != nullptr);
  CHECK(r.find("detach_fraction") != nullptr);
  CHECK(r.find("available_cells_tsig_10us") != nullptr);
  CHECK(r.find("available_cells_tsig_100us") != nullptr);
  CHECK(r.find("nope") == nullptr);
  for (const Curve& c : r.curves) {
    CHECK(c.points.size() == 1);
  }
  const std::string csv = campaign_csv(r);
  CHECK(csv.rfind("lambda_bs,metric,mean,stderr,n_trials\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  // An all-detach density leaves the distance fields empty.
  cfg.lambda_bs = {0.0};
  cfg.n_trials = 3;
  const std::string zero = campaign_csv(run_campaign(cfg, 1));
  CHECK(zero.find("0,serving_distance_m,,,0\n") != std::string::npos);
  CHECK(zero.find("0,detach_fraction,1,0,3\n") != std::string::npos);
}

TEST_CASE("standard error shrinks like 1/sqrt(n)")
{
  SimConfig cfg;
  cfg.lambda_bs = {40.0};
  cfg.t_sig_sweep_s = {10e-6};
  cfg.sweeps_per_trial = 2;
  cfg.n_trials = 200;
  const double se_small = run_campaign(cfg, 1).find("available_cells_tsig_10us")->points[0].std_error;
  cfg.n_trials = 400;
  const double se_large = run_campaign(cfg, 1).find("available_cells_tsig_10us")->points[0].std_error;
  CHECK(se_large / se_small == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.15));
}
