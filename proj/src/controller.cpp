#include "mmwmc/controller.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mmwmc {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double hysteresis_margin(const SelectionPolicy& policy)
{
  if (const auto* h = std::get_if<MaxSinrHysteresis>(&policy)) {
    return h->delta_db;
  }
  return 0.0;
}

double best_score_in_column(const CompleteReportTable& crt, std::size_t column, const SelectionPolicy& policy)
{
  double best = -std::numeric_limits<double>::infinity();
  for (const RtEntry& e : crt.columns[column].rows) {
    if (e.detected()) {
      best = std::max(best, entry_score(e, policy));
    }
  }
  return best;
}

} // namespace

const RtEntry& CompleteReportTable::at(int ue_dir, std::size_t column) const
{
  if (ue_dir < 0 || ue_dir >= n_ue_dirs || column >= columns.size()) {
    throw std::out_of_range("CRT index out of range");
  }
  return columns[column].rows[static_cast<std::size_t>(ue_dir)];
}

std::optional<std::size_t> CompleteReportTable::column_of(int scell_id) const
{
  const auto it = std::lower_bound(scell_ids.begin(), scell_ids.end(), scell_id);
  if (it == scell_ids.end() || *it != scell_id) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - scell_ids.begin());
}

CompleteReportTable assemble_crt(std::vector<ReportTable> reports)
{
  std::sort(reports.begin(), reports.end(),
            [](const ReportTable& a, const ReportTable& b) { return a.scell_id < b.scell_id; });

  CompleteReportTable crt;
  crt.n_ue_dirs = reports.empty() ? 0 : static_cast<int>(reports.front().rows.size());
  for (std::size_t j = 0; j < reports.size(); ++j) {
    if (j > 0 && reports[j].scell_id == reports[j - 1].scell_id) {
      throw std::invalid_argument("duplicate SCell id " + std::to_string(reports[j].scell_id) + " in reports");
    }
    if (static_cast<int>(reports[j].rows.size()) != crt.n_ue_dirs) {
      throw std::invalid_argument("report of SCell " + std::to_string(reports[j].scell_id) +
                                  " has a different number of UE directions");
    }
    crt.scell_ids.push_back(reports[j].scell_id);
  }
  crt.columns = std::move(reports);
  return crt;
}

void validate(const SelectionPolicy& policy)
{
  std::visit(overloaded{
               [](const MaxSinr&) {},
               [](const MaxSinrHysteresis& h) {
                 if (!(h.delta_db >= 0.0)) {
                   throw std::invalid_argument("hysteresis margin must be non-negative");
                 }
               },
               [](const VariancePenalized& v) {
                 if (!(v.weight >= 0.0)) {
                   throw std::invalid_argument("variance weight must be non-negative");
                 }
               },
             },
             policy);
}

std::string_view policy_name(const SelectionPolicy& policy)
{
  return std::visit(overloaded{
                      [](const MaxSinr&) { return std::string_view{"max_sinr"}; },
                      [](const MaxSinrHysteresis&) { return std::string_view{"max_sinr_hysteresis"}; },
                      [](const VariancePenalized&) { return std::string_view{"variance_penalized"}; },
                    },
                    policy);
}

double entry_score(const RtEntry& entry, const SelectionPolicy& policy)
{
  if (!entry.detected()) {
    return -std::numeric_limits<double>::infinity();
  }
  if (const auto* v = std::get_if<VariancePenalized>(&policy); v != nullptr && entry.variance) {
    return *entry.sinr_db - v->weight * *entry.variance;
  }
  return *entry.sinr_db;
}

AttachmentDecision select_best(const CompleteReportTable& crt, const SelectionPolicy& policy)
{
  const RtEntry* winner = nullptr;
  std::size_t winner_col = 0;
  int winner_dir = 0;
  double winner_score = -std::numeric_limits<double>::infinity();

  // Columns are in ascending id order, so strict '>' keeps the lowest (id, dir) on ties.
  for (std::size_t j = 0; j < crt.columns.size(); ++j) {
    for (int i = 0; i < crt.n_ue_dirs; ++i) {
      const RtEntry& e = crt.at(i, j);
      if (!e.detected()) {
        continue;
      }
      const double score = entry_score(e, policy);
      if (winner == nullptr || score > winner_score) {
        winner = &e;
        winner_col = j;
        winner_dir = i;
        winner_score = score;
      }
    }
  }
  if (winner == nullptr) {
    throw NoCellAvailable{};
  }

  AttachmentDecision d;
  d.n_id = crt.scell_ids[winner_col];
  d.d_ue = winner_dir;
  d.d_scell = *winner->best_bs_dir;
  d.sinr_db = *winner->sinr_db;
  d.variance = winner->variance;
  return d;
}

std::string_view outcome_name(const HandoverOutcome& outcome)
{
  return std::visit(overloaded{
                      [](const Stay&) { return std::string_view{"stay"}; },
                      [](const Handover&) { return std::string_view{"handover"}; },
                      [](const Detach&) { return std::string_view{"detach"}; },
                    },
                    outcome);
}

HandoverOutcome handover_decision(const CompleteReportTable& crt, const std::optional<AttachmentDecision>& current,
                                  const SelectionPolicy& policy)
{
  AttachmentDecision best;
  try {
    best = select_best(crt, policy);
  } catch (const NoCellAvailable&) {
    return Detach{};
  }
  if (!current) {
    return Handover{best};
  }

  const double best_score = best_score_in_column(crt, *crt.column_of(best.n_id), policy);
  double current_score = -std::numeric_limits<double>::infinity();
  if (const auto col = crt.column_of(current->n_id)) {
    current_score = best_score_in_column(crt, *col, policy);
  }

  if (best.n_id == current->n_id || current_score >= best_score) {
    return Stay{};
  }
  if (best_score - current_score > hysteresis_margin(policy)) {
    return Handover{best};
  }
  return Stay{};
}

std::string_view to_string(ControlPath path)
{
  return path == ControlPath::X2 ? "x2" : "legacy";
}

ControlPath path_of(const ControlMessage& msg)
{
  return std::holds_alternative<UeSteerCommand>(msg) ? ControlPath::Legacy : ControlPath::X2;
}

std::vector<ControlMessage> emit_commands(const HandoverOutcome& outcome)
{
  std::vector<ControlMessage> out;
  if (const auto* h = std::get_if<Handover>(&outcome)) {
    out.emplace_back(PathSwitchCommand{h->target.n_id, h->target.d_scell});
    out.emplace_back(UeSteerCommand{h->target.d_ue, h->target.n_id});
  }
  return out;
}

} // namespace mmwmc
