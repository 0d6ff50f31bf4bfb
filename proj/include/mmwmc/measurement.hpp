#pragma once

#include "mmwmc/beamforming.hpp"
#include "mmwmc/channel.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace mmwmc {

/// Sounding duration at which no energy-accumulation bonus applies.
inline constexpr double kReferenceSignalDuration = 10e-6;

/// Link-budget and sweep settings seen by the SCells.
struct MeasurementConfig
{
  double p_tx_dbm = 30.0;
  double w_tot_hz = 1e9;
  double nf_db = 5.0;
  double tau_db = -5.0;
  double t_sig_s = 10e-6;
  BfArchitecture bs_architecture = BfArchitecture::Analog;
  std::size_t memory_cap = 10;  // 0 keeps the whole history
  Codebook ue_codebook{4, 4, 8};
  Codebook bs_codebook{8, 8, 16};
};

/// Thermal noise over the band: -174 dBm/Hz + 10 log10(W) + NF.
double noise_floor_dbm(double w_tot_hz, double nf_db);

/// 10 log10(t_sig / 10 us).
double energy_bonus_db(double t_sig_s);

struct SinrSample
{
  double value_db = 0.0;
  bool detected = false;
};

/// Converts a beamformed linear channel gain into an SINR sample (noise-limited).
SinrSample sinr_from_gain(double gain_linear, const MeasurementConfig& cfg);

SinrSample measure_sinr(const DirectionalLink& link, int ue_dir, int bs_dir, const MeasurementConfig& cfg);

/// One report-table cell: the best SCell receive direction for a UE transmit
/// direction plus the history of detected maxima.
struct RtEntry
{
  std::optional<double> sinr_db;     // empty when the latest scan saw nothing above tau
  std::optional<int> best_bs_dir;
  std::optional<double> variance;    // population variance of `history`, dB^2
  std::deque<double> history;

  bool detected() const { return sinr_db.has_value(); }
  bool operator==(const RtEntry&) const = default;
};

/// Population variance (divide by count). Empty input gives nullopt.
std::optional<double> population_variance(const std::deque<double>& values);

/// Appends a detected maximum, evicts beyond `memory_cap` (0 = unbounded) and
/// recomputes the variance over what is stored.
RtEntry update_variance(RtEntry entry, double new_sinr_db, std::size_t memory_cap);

/// Max/argmax over one row of per-direction SINR values; lowest index wins ties.
RtEntry scan_row_from_sinr(std::span<const double> sinr_db, double tau_db);

/// Scans every SCell receive direction for UE direction `ue_dir`. History is untouched.
RtEntry scan_row(const DirectionalLink& link, int ue_dir, const MeasurementConfig& cfg);

struct ReportTable
{
  int scell_id = 0;
  std::vector<RtEntry> rows;  // indexed by UE direction

  bool any_detected() const;
  bool operator==(const ReportTable&) const = default;
};

ReportTable empty_report_table(int scell_id, int n_ue_dirs);

struct SweepStats
{
  std::size_t sinr_evaluations = 0;  // per SCell
  std::size_t scan_slots = 0;        // per SCell: N_UE * N_BS analog, N_UE digital
};

/// One complete sounding sweep. `tables` is created on the first call (empty
/// vector) and updated in place afterwards, so histories accumulate across sweeps.
SweepStats full_sweep(std::span<const DirectionalLink> links, const MeasurementConfig& cfg,
                      std::vector<ReportTable>& tables);

} // namespace mmwmc
