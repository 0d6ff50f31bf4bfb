#pragma once

#include "mmwmc/measurement.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

namespace mmwmc {

/// MCell-side view: one column per reporting SCell, ordered by ascending id.
struct CompleteReportTable
{
  int n_ue_dirs = 0;
  std::vector<int> scell_ids;
  std::vector<ReportTable> columns;

  std::size_t n_scells() const { return columns.size(); }
  const RtEntry& at(int ue_dir, std::size_t column) const;
  /// Column index for an SCell id, if present.
  std::optional<std::size_t> column_of(int scell_id) const;
};

/// Throws std::invalid_argument on duplicate ids or ragged tables.
CompleteReportTable assemble_crt(std::vector<ReportTable> reports);

struct AttachmentDecision
{
  int n_id = 0;
  int d_ue = 0;
  int d_scell = 0;
  double sinr_db = 0.0;
  std::optional<double> variance;

  bool operator==(const AttachmentDecision&) const = default;
};

struct MaxSinr
{
  bool operator==(const MaxSinr&) const = default;
};

struct MaxSinrHysteresis
{
  double delta_db = 0.0;
  bool operator==(const MaxSinrHysteresis&) const = default;
};

struct VariancePenalized
{
  double weight = 0.1;
  bool operator==(const VariancePenalized&) const = default;
};

using SelectionPolicy = std::variant<MaxSinr, MaxSinrHysteresis, VariancePenalized>;

void validate(const SelectionPolicy& policy);
std::string_view policy_name(const SelectionPolicy& policy);

class NoCellAvailable : public std::runtime_error
{
public:
  NoCellAvailable() : std::runtime_error("no SCell has a detected report entry") {}
};

/// Ranking score of a detected entry. sinr - w * var for VariancePenalized (an
/// entry without variance scores its SINR), plain SINR otherwise.
double entry_score(const RtEntry& entry, const SelectionPolicy& policy);

/// Best detected entry; ties go to the lower SCell id, then the lower UE direction.
/// Throws NoCellAvailable when nothing is detected.
AttachmentDecision select_best(const CompleteReportTable& crt, const SelectionPolicy& policy);

struct Stay
{
  bool operator==(const Stay&) const = default;
};

struct Handover
{
  AttachmentDecision target;
  bool operator==(const Handover&) const = default;
};

struct Detach
{
  bool operator==(const Detach&) const = default;
};

using HandoverOutcome = std::variant<Stay, Handover, Detach>;

std::string_view outcome_name(const HandoverOutcome& outcome);

/// Re-evaluates the serving SCell on a fresh CRT.
///  - nothing detected: Detach
///  - no current attachment: Handover to select_best
///  - current SCell scores at least the best score: Stay
///  - otherwise Handover iff best - current > delta_db (delta_db is 0 except for
///    MaxSinrHysteresis). The current score is the best score in the current
///    SCell's column of this CRT, -inf if the column is absent or undetected.
HandoverOutcome handover_decision(const CompleteReportTable& crt, const std::optional<AttachmentDecision>& current,
                                  const SelectionPolicy& policy);

enum class ControlPath
{
  X2,
  Legacy,
};

std::string_view to_string(ControlPath path);

/// SCell -> MCell report over X2.
struct RtReport
{
  int scell_id = 0;
  ReportTable table;
  bool operator==(const RtReport&) const = default;
};

/// MCell -> target SCell over X2.
struct PathSwitchCommand
{
  int n_id = 0;
  int d_scell = 0;
  bool operator==(const PathSwitchCommand&) const = default;
};

/// MCell -> UE over the omnidirectional legacy link.
struct UeSteerCommand
{
  int d_ue = 0;
  int n_id = 0;
  bool operator==(const UeSteerCommand&) const = default;
};

using ControlMessage = std::variant<RtReport, PathSwitchCommand, UeSteerCommand>;

ControlPath path_of(const ControlMessage& msg);

/// Handover -> [PathSwitchCommand (X2), UeSteerCommand (legacy)]; Stay and Detach -> [].
std::vector<ControlMessage> emit_commands(const HandoverOutcome& outcome);

} // namespace mmwmc
