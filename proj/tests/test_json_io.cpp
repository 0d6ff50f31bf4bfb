#include "mmwmc/json_io.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace mmwmc;

TEST_CASE("report entry and table round trip")
{
  RtEntry e;
  e.sinr_db = 12.25;
  e.best_bs_dir = 11;
  e.variance = 0.5;
  e.history = {12.0, 12.5, 12.25};
  CHECK(rt_entry_from_json(to_json(e)) == e);
  const nlohmann::json j = to_json(RtEntry{});
  CHECK(j.at("sinr_db").is_null());
  CHECK(j.at("detected") == false);
  CHECK(rt_entry_from_json(j) == RtEntry{});

  const ReportTable t{4, {e, RtEntry{}}};
  CHECK(report_table_from_json(to_json(t)) == t);
  // re-parsing the dumped text is lossless
  CHECK(report_table_from_json(nlohmann::json::parse(to_json(t).dump())) == t);

  nlohmann::json bad = to_json(e);
  bad["best_bs_dir"] = nullptr;
  CHECK_THROWS(rt_entry_from_json(bad));
}

TEST_CASE("CRT round trip")
{
  RtEntry e;
  e.sinr_db = -3.0;
  e.best_bs_dir = 0;
  e.variance = 0.0;
  e.history = {-3.0};
  const CompleteReportTable crt = assemble_crt({ReportTable{9, {RtEntry{}, e}}, ReportTable{2, {e, e}}});
  const nlohmann::json j = to_json(crt, true);
  CHECK(j.at("scell_ids") == nlohmann::json({2, 9}));
  CHECK(j.at("entries").size() == 2);
  CHECK(j.at("entries")[0].size() == 2);
  const CompleteReportTable back = crt_from_json(j);
  CHECK(back.scell_ids == crt.scell_ids);
  CHECK(back.columns == crt.columns);

  const CompleteReportTable empty = crt_from_json(to_json(assemble_crt({})));
  CHECK(empty.n_scells() == 0);
}

TEST_CASE("decision and messages round trip")
{
  const AttachmentDecision d{3, 2, 7, 14.5, std::nullopt};
  CHECK(decision_from_json(to_json(d)) == d);
  const AttachmentDecision dv{1, 0, 15, -4.75, 2.0};
  CHECK(decision_from_json(to_json(dv)) == dv);

  for (const ControlMessage& m : emit_commands(Handover{d})) {
    const nlohmann::json j = to_json(m);
    CHECK(control_message_from_json(j) == m);
  }
  const nlohmann::json ps = to_json(ControlMessage{PathSwitchCommand{3, 7}});
  CHECK(ps.at("type") == "path_switch");
  CHECK(ps.at("path") == "x2");
  const nlohmann::json us = to_json(ControlMessage{UeSteerCommand{2, 3}});
  CHECK(us.at("type") == "ue_steer");
  CHECK(us.at("path") == "legacy");

  nlohmann::json wrong = us;
  wrong["path"] = "x2";
  CHECK_THROWS(control_message_from_json(wrong));
  CHECK_THROWS(control_message_from_json({{"type", "teleport"}}));

  const ControlMessage report = RtReport{5, ReportTable{5, {RtEntry{}}}};
  CHECK(control_message_from_json(to_json(report)) == report);
  CHECK(to_json(HandoverOutcome{Handover{d}}).at("target").at("n_id") == 3);
  CHECK(to_json(HandoverOutcome{Detach{}}).at("outcome") == "detach");
}

TEST_CASE("links and deployments")
{
  DirectionalLink l;
  l.scell_id = 6;
  l.distance_m = 250.0;
  l.state = LinkState::Outage;
  l.pathloss_db = std::numeric_limits<double>::infinity();
  const nlohmann::json j = to_json(l);
  CHECK(j.at("pathloss_db").is_null());
  CHECK(j.at("state") == "OUTAGE");
  CHECK(j.at("clusters").empty());

  Rng rng{1};
  const Deployment dep = sample_deployment(rng, 40.0, SimArea{});
  const nlohmann::json dj = to_json(dep);
  CHECK(dj.at("scells").size() == dep.scell_count());
  CHECK(dj.at("ue").at("x_m") == dep.ue_position.x);
}
