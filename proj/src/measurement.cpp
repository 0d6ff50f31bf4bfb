#include "mmwmc/measurement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mmwmc {

double noise_floor_dbm(double w_tot_hz, double nf_db)
{
  if (!(w_tot_hz > 0.0)) {
    throw std::invalid_argument("bandwidth must be positive");
  }
  return -174.0 + 10.0 * std::log10(w_tot_hz) + nf_db;
}

double energy_bonus_db(double t_sig_s)
{
  if (!(t_sig_s > 0.0)) {
    throw std::invalid_argument("signal duration must be positive");
  }
  return 10.0 * std::log10(t_sig_s / kReferenceSignalDuration);
}

SinrSample sinr_from_gain(double gain_linear, const MeasurementConfig& cfg)
{
  SinrSample s;
  if (!(gain_linear > 0.0)) {
    s.value_db = -std::numeric_limits<double>::infinity();
    s.detected = false;
    return s;
  }
  s.value_db = cfg.p_tx_dbm + 10.0 * std::log10(gain_linear) - noise_floor_dbm(cfg.w_tot_hz, cfg.nf_db) +
               energy_bonus_db(cfg.t_sig_s);
  s.detected = s.value_db >= cfg.tau_db;
  return s;
}

SinrSample measure_sinr(const DirectionalLink& link, int ue_dir, int bs_dir, const MeasurementConfig& cfg)
{
  return sinr_from_gain(link_gain_linear(link, ue_dir, bs_dir, cfg.ue_codebook, cfg.bs_codebook), cfg);
}

std::optional<double> population_variance(const std::deque<double>& values)
{
  if (values.empty()) {
    return std::nullopt;
  }
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) {
    mean += v;
  }
  mean /= n;
  double acc = 0.0;
  for (double v : values) {
    acc += (v - mean) * (v - mean);
  }
  return acc / n;
}

RtEntry update_variance(RtEntry entry, double new_sinr_db, std::size_t memory_cap)
{
  entry.history.push_back(new_sinr_db);
  if (memory_cap > 0) {
    while (entry.history.size() > memory_cap) {
      entry.history.pop_front();
    }
  }
  entry.variance = population_variance(entry.history);
  return entry;
}

RtEntry scan_row_from_sinr(std::span<const double> sinr_db, double tau_db)
{
  RtEntry e;
  int best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sinr_db.size(); ++k) {
    if (best < 0 || sinr_db[k] > best_value) {
      best = static_cast<int>(k);
      best_value = sinr_db[k];
    }
  }
  if (best >= 0 && best_value >= tau_db) {
    e.sinr_db = best_value;
    e.best_bs_dir = best;
  }
  return e;
}

RtEntry scan_row(const DirectionalLink& link, int ue_dir, const MeasurementConfig& cfg)
{
  cfg.ue_codebook.steering(ue_dir);
  std::vector<double> row(static_cast<std::size_t>(cfg.bs_codebook.n_directions()));
  for (int k = 0; k < cfg.bs_codebook.n_directions(); ++k) {
    row[static_cast<std::size_t>(k)] = measure_sinr(link, ue_dir, k, cfg).value_db;
  }
  return scan_row_from_sinr(row, cfg.tau_db);
}

bool ReportTable::any_detected() const
{
  for (const RtEntry& e : rows) {
    if (e.detected()) {
      return true;
    }
  }
  return false;
}

ReportTable empty_report_table(int scell_id, int n_ue_dirs)
{
  ReportTable t;
  t.scell_id = scell_id;
  t.rows.resize(static_cast<std::size_t>(n_ue_dirs));
  return t;
}

SweepStats full_sweep(std::span<const DirectionalLink> links, const MeasurementConfig& cfg,
                      std::vector<ReportTable>& tables)
{
  const int n_ue = cfg.ue_codebook.n_directions();
  const int n_bs = cfg.bs_codebook.n_directions();
  if (tables.empty()) {
    tables.reserve(links.size());
    for (const DirectionalLink& link : links) {
      tables.push_back(empty_report_table(link.scell_id, n_ue));
    }
  }
  if (tables.size() != links.size()) {
    throw std::invalid_argument("report table count does not match link count");
  }

  SweepStats stats;
  stats.sinr_evaluations = static_cast<std::size_t>(n_ue) * static_cast<std::size_t>(n_bs);
  stats.scan_slots = cfg.bs_architecture == BfArchitecture::Analog ? stats.sinr_evaluations
                                                                     : static_cast<std::size_t>(n_ue);

  std::vector<double> sinr_row(static_cast<std::size_t>(n_bs));
  for (std::size_t j = 0; j < links.size(); ++j) {
    const DirectionalLink& link = links[j];
    ReportTable& table = tables[j];
    if (table.scell_id != link.scell_id || table.rows.size() != static_cast<std::size_t>(n_ue)) {
      throw std::invalid_argument("report table " + std::to_string(j) + " does not match its link");
    }

    const std::vector<double> gains = link_gain_matrix(link, cfg.ue_codebook, cfg.bs_codebook);
    for (int i = 0; i < n_ue; ++i) {
      for (int k = 0; k < n_bs; ++k) {
        sinr_row[static_cast<std::size_t>(k)] =
          sinr_from_gain(gains[static_cast<std::size_t>(i * n_bs + k)], cfg).value_db;
      }
      const RtEntry scanned = scan_row_from_sinr(sinr_row, cfg.tau_db);
      RtEntry& entry = table.rows[static_cast<std::size_t>(i)];
      entry.sinr_db = scanned.sinr_db;
      entry.best_bs_dir = scanned.best_bs_dir;
      if (scanned.detected()) {
        entry = update_variance(std::move(entry), *scanned.sinr_db, cfg.memory_cap);
      }
    }
  }
  return stats;
}

} // namespace mmwmc
