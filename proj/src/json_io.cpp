#include "mmwmc/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace mmwmc {

using nlohmann::json;

namespace {

json number_or_null(double v)
{
  return std::isfinite(v) ? json(v) : json(nullptr);
}

template <class T>
json optional_or_null(const std::optional<T>& v)
{
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key)
{
  if (!j.contains(key) || j.at(key).is_null()) {
    return std::nullopt;
  }
  return j.at(key).get<T>();
}

} // namespace

json to_json(const Deployment& d)
{
  json cells = json::array();
  for (std::size_t i = 0; i < d.scell_count(); ++i) {
    cells.push_back({{"id", d.scell_ids[i]}, {"x_m", d.scell_positions[i].x}, {"y_m", d.scell_positions[i].y}});
  }
  return {{"ue", {{"x_m", d.ue_position.x}, {"y_m", d.ue_position.y}}}, {"scells", std::move(cells)}};
}

json to_json(const DirectionalLink& link, bool with_subpaths)
{
  json clusters = json::array();
  for (const Cluster& c : link.clusters) {
    json jc = {
      {"ue_azimuth_rad", c.ue_azimuth_rad},
      {"ue_elevation_rad", c.ue_elevation_rad},
      {"bs_azimuth_rad", c.bs_azimuth_rad},
      {"bs_elevation_rad", c.bs_elevation_rad},
      {"power_fraction", c.power_fraction},
      {"n_subpaths", c.subpaths.size()},
    };
    if (with_subpaths) {
      json subs = json::array();
      for (const Subpath& s : c.subpaths) {
        subs.push_back({{"ue_az_offset_rad", s.ue_azimuth_offset_rad},
                        {"ue_el_offset_rad", s.ue_elevation_offset_rad},
                        {"bs_az_offset_rad", s.bs_azimuth_offset_rad},
                        {"bs_el_offset_rad", s.bs_elevation_offset_rad},
                        {"gain_re", s.gain.real()},
                        {"gain_im", s.gain.imag()}});
      }
      jc["subpaths"] = std::move(subs);
    }
    clusters.push_back(std::move(jc));
  }
  return {{"scell_id", link.scell_id},
          {"distance_m", link.distance_m},
          {"state", std::string{to_string(link.state)}},
          {"pathloss_db", number_or_null(link.pathloss_db)},
          {"clusters", std::move(clusters)}};
}

json to_json(const RtEntry& e, bool with_history)
{
  json j = {{"detected", e.detected()},
            {"sinr_db", optional_or_null(e.sinr_db)},
            {"best_bs_dir", optional_or_null(e.best_bs_dir)},
            {"variance", optional_or_null(e.variance)}};
  if (with_history) {
    j["history"] = json(std::vector<double>(e.history.begin(), e.history.end()));
  }
  return j;
}

RtEntry rt_entry_from_json(const json& j)
{
  RtEntry e;
  e.sinr_db = optional_from<double>(j, "sinr_db");
  e.best_bs_dir = optional_from<int>(j, "best_bs_dir");
  e.variance = optional_from<double>(j, "variance");
  if (j.contains("history")) {
    for (const auto& v : j.at("history")) {
      e.history.push_back(v.get<double>());
    }
  }
  if (e.sinr_db.has_value() != e.best_bs_dir.has_value()) {
    throw std::invalid_argument("report entry must carry both sinr_db and best_bs_dir or neither");
  }
  return e;
}

json to_json(const ReportTable& t, bool with_history)
{
  json rows = json::array();
  for (const RtEntry& e : t.rows) {
    rows.push_back(to_json(e, with_history));
  }
  return {{"scell_id", t.scell_id}, {"rows", std::move(rows)}};
}

ReportTable report_table_from_json(const json& j)
{
  ReportTable t;
  t.scell_id = j.at("scell_id").get<int>();
  for (const auto& row : j.at("rows")) {
    t.rows.push_back(rt_entry_from_json(row));
  }
  return t;
}

json to_json(const CompleteReportTable& crt, bool with_history)
{
  json entries = json::array();
  for (int i = 0; i < crt.n_ue_dirs; ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < crt.n_scells(); ++c) {
      row.push_back(to_json(crt.at(i, c), with_history));
    }
    entries.push_back(std::move(row));
  }
  return {{"n_ue_dirs", crt.n_ue_dirs}, {"scell_ids", crt.scell_ids}, {"entries", std::move(entries)}};
}

CompleteReportTable crt_from_json(const json& j)
{
  const int n_ue = j.at("n_ue_dirs").get<int>();
  const auto ids = j.at("scell_ids").get<std::vector<int>>();
  const json& entries = j.at("entries");
  if (entries.size() != static_cast<std::size_t>(n_ue)) {
    throw std::invalid_argument("CRT entry rows do not match n_ue_dirs");
  }
  std::vector<ReportTable> columns;
  for (std::size_t c = 0; c < ids.size(); ++c) {
    ReportTable t;
    t.scell_id = ids[c];
    for (int i = 0; i < n_ue; ++i) {
      t.rows.push_back(rt_entry_from_json(entries.at(static_cast<std::size_t>(i)).at(c)));
    }
    columns.push_back(std::move(t));
  }
  CompleteReportTable crt = assemble_crt(std::move(columns));
  crt.n_ue_dirs = n_ue;
  return crt;
}

json to_json(const AttachmentDecision& d)
{
  return {{"n_id", d.n_id},
          {"d_ue", d.d_ue},
          {"d_scell", d.d_scell},
          {"sinr_db", d.sinr_db},
          {"variance", optional_or_null(d.variance)}};
}

AttachmentDecision decision_from_json(const json& j)
{
  AttachmentDecision d;
  d.n_id = j.at("n_id").get<int>();
  d.d_ue = j.at("d_ue").get<int>();
  d.d_scell = j.at("d_scell").get<int>();
  d.sinr_db = j.at("sinr_db").get<double>();
  d.variance = optional_from<double>(j, "variance");
  return d;
}

json to_json(const HandoverOutcome& o)
{
  json j = {{"outcome", std::string{outcome_name(o)}}};
  if (const auto* h = std::get_if<Handover>(&o)) {
    j["target"] = to_json(h->target);
  }
  return j;
}

json to_json(const ControlMessage& m)
{
  json j;
  if (const auto* r = std::get_if<RtReport>(&m)) {
    j = {{"type", "rt_report"}, {"scell_id", r->scell_id}, {"table", to_json(r->table)}};
  } else if (const auto* p = std::get_if<PathSwitchCommand>(&m)) {
    j = {{"type", "path_switch"}, {"n_id", p->n_id}, {"d_scell", p->d_scell}};
  } else {
    const auto& u = std::get<UeSteerCommand>(m);
    j = {{"type", "ue_steer"}, {"d_ue", u.d_ue}, {"n_id", u.n_id}};
  }
  j["path"] = std::string{to_string(path_of(m))};
  return j;
}

ControlMessage control_message_from_json(const json& j)
{
  const auto type = j.at("type").get<std::string>();
  ControlMessage m;
  if (type == "rt_report") {
    m = RtReport{j.at("scell_id").get<int>(), report_table_from_json(j.at("table"))};
  } else if (type == "path_switch") {
    m = PathSwitchCommand{j.at("n_id").get<int>(), j.at("d_scell").get<int>()};
  } else if (type == "ue_steer") {
    m = UeSteerCommand{j.at("d_ue").get<int>(), j.at("n_id").get<int>()};
  } else {
    throw std::invalid_argument("unknown control message type '" + type + "'");
  }
  if (j.contains("path") && j.at("path").get<std::string>() != to_string(path_of(m))) {
    throw std::invalid_argument("control message '" + type + "' cannot travel on path '" +
                                j.at("path").get<std::string>() + "'");
  }
  return m;
}

} // namespace mmwmc
