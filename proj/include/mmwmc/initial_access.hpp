#pragma once

#include "mmwmc/beamforming.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace mmwmc {

/// Who sweeps and who listens during initial access.
///  - DownlinkBased: SCell transmits synchronization signals, UE receives.
///  - UplinkBased: UE transmits random-access preambles, SCell receives.
enum class IaDesign
{
  DownlinkBased,
  UplinkBased,
};

std::string_view to_string(IaDesign d);
std::string_view to_string(BfArchitecture a);

/// Receive directions examined per scanning opportunity. Only the receiver's
/// architecture matters: the SCell for UplinkBased, the UE for DownlinkBased.
int simultaneous_directions(IaDesign design, BfArchitecture bs, BfArchitecture ue, int n_bs, int n_ue);

/// n_bs * n_ue / L. `l_override` models hybrid receivers (1 <= L <= receiver's
/// direction count); non-divisor values round the scan count up.
int scan_count(IaDesign design, BfArchitecture bs, BfArchitecture ue, int n_bs, int n_ue,
               std::optional<int> l_override = std::nullopt);

/// Delay = scans * T_per (one scanning opportunity per period).
double access_delay(int scans, double t_per_s);

/// T_sig / T_per. Throws unless 0 < t_sig <= t_per.
double overhead(double t_sig_s, double t_per_s);

struct DelayRow
{
  BfArchitecture scell = BfArchitecture::Analog;
  BfArchitecture ue = BfArchitecture::Analog;
  int dl_scans = 0;
  int ul_scans = 0;
  double dl_delay_s = 0.0;
  double ul_delay_s = 0.0;
};

/// The four architecture pairings in order (SCell, UE): AA, AD, DA, DD.
std::vector<DelayRow> delay_table(int n_bs, int n_ue, double t_per_s);

} // namespace mmwmc
