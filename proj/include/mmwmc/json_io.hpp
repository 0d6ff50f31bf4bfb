#pragma once

// JSON mirrors of the simulator's records. Field names are stable and listed
// in README.md. Absent optionals and infinities are written as null.

#include "mmwmc/channel.hpp"
#include "mmwmc/controller.hpp"
#include "mmwmc/deployment.hpp"
#include "mmwmc/measurement.hpp"

#include <json.hpp>

namespace mmwmc {

nlohmann::json to_json(const Deployment& d);
nlohmann::json to_json(const DirectionalLink& link, bool with_subpaths = false);

nlohmann::json to_json(const RtEntry& e, bool with_history = true);
RtEntry rt_entry_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReportTable& t, bool with_history = true);
ReportTable report_table_from_json(const nlohmann::json& j);

/// {"n_ue_dirs", "scell_ids", "entries": [ue_dir][column]}.
nlohmann::json to_json(const CompleteReportTable& crt, bool with_history = false);
CompleteReportTable crt_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AttachmentDecision& d);
AttachmentDecision decision_from_json(const nlohmann::json& j);

nlohmann::json to_json(const HandoverOutcome& o);

/// {"type": "rt_report" | "path_switch" | "ue_steer", "path": "x2" | "legacy", ...}.
nlohmann::json to_json(const ControlMessage& m);
ControlMessage control_message_from_json(const nlohmann::json& j);

} // namespace mmwmc
