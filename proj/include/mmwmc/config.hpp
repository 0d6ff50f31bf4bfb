#pragma once

#include "mmwmc/channel.hpp"
#include "mmwmc/controller.hpp"
#include "mmwmc/deployment.hpp"
#include "mmwmc/measurement.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmwmc {

/// Everything a trial or campaign needs. Defaults reproduce the reference
/// system parameters (1 GHz at 28 GHz, 8x8/16 SCells, 4x4/8 UE, tau = -5 dB,
/// A = 0.5 km^2, T_sig = 10 us every 200 us).
struct SimConfig
{
  double w_tot_hz = 1e9;
  double p_tx_dbm = 30.0;
  double nf_db = 5.0;
  double f_c_hz = 28e9;
  double tau_db = -5.0;

  int bs_array_rows = 8;
  int bs_array_cols = 8;
  int ue_array_rows = 4;
  int ue_array_cols = 4;
  double element_spacing_wl = 0.5;
  int n_bs_dirs = 16;
  int n_ue_dirs = 8;
  BfArchitecture bs_bf = BfArchitecture::Analog;

  std::vector<double> lambda_bs{10, 20, 30, 40, 50, 60, 70};
  SimArea area;

  double t_sig_s = 10e-6;
  std::vector<double> t_sig_sweep_s{10e-6, 100e-6};
  double phi_ov = 0.05;
  double t_per_s = 200e-6;

  std::size_t n_trials = 500;
  std::uint64_t seed = 1;
  int sweeps_per_trial = 10;
  std::size_t memory_cap = 10;
  bool refresh_fading = true;
  int threads = 0;  // 0 = hardware concurrency

  ChannelParams channel;
  SelectionPolicy policy = MaxSinr{};
};

/// Configuration problem tied to one key.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(std::string key, const std::string& what)
    : std::runtime_error("config key '" + key + "': " + what), m_key(std::move(key))
  {
  }
  const std::string& key() const { return m_key; }

private:
  std::string m_key;
};

/// Throws ConfigError naming the first inconsistent key.
void validate(const SimConfig& cfg);

/// `key = value` lines, `#` comments, comma-separated lists. Keys not present
/// keep their defaults; unknown keys are errors. The result is validated.
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::filesystem::path& path);

/// Renders every key in the format parse_config reads.
std::string to_config_text(const SimConfig& cfg);

MeasurementConfig measurement_config(const SimConfig& cfg, double t_sig_s);

} // namespace mmwmc
