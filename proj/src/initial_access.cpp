#include "mmwmc/initial_access.hpp"

#include <stdexcept>
#include <string>

namespace mmwmc {

std::string_view to_string(IaDesign d)
{
  return d == IaDesign::UplinkBased ? "UL-based" : "DL-based";
}

std::string_view to_string(BfArchitecture a)
{
  return a == BfArchitecture::Digital ? "Digital" : "Analog";
}

int simultaneous_directions(IaDesign design, BfArchitecture bs, BfArchitecture ue, int n_bs, int n_ue)
{
  if (n_bs < 1 || n_ue < 1) {
    throw std::invalid_argument("direction counts must be >= 1");
  }
  if (design == IaDesign::UplinkBased) {
    return bs == BfArchitecture::Digital ? n_bs : 1;
  }
  return ue == BfArchitecture::Digital ? n_ue : 1;
}

int scan_count(IaDesign design, BfArchitecture bs, BfArchitecture ue, int n_bs, int n_ue,
               std::optional<int> l_override)
{
  int l = simultaneous_directions(design, bs, ue, n_bs, n_ue);
  if (l_override) {
    const int receiver_dirs = design == IaDesign::UplinkBased ? n_bs : n_ue;
    if (*l_override < 1 || *l_override > receiver_dirs) {
      throw std::invalid_argument("L must lie in [1, " + std::to_string(receiver_dirs) + "]");
    }
    l = *l_override;
  }
  const int pairs = n_bs * n_ue;
  return (pairs + l - 1) / l;
}

double access_delay(int scans, double t_per_s)
{
  if (!(t_per_s > 0.0)) {
    throw std::invalid_argument("T_per must be positive");
  }
  if (scans < 0) {
    throw std::invalid_argument("scan count must be non-negative");
  }
  return scans * t_per_s;
}

double overhead(double t_sig_s, double t_per_s)
{
  if (!(t_sig_s > 0.0) || !(t_per_s > 0.0)) {
    throw std::invalid_argument("T_sig and T_per must be positive");
  }
  if (t_sig_s > t_per_s) {
    throw std::invalid_argument("T_sig cannot exceed T_per");
  }
  return t_sig_s / t_per_s;
}

std::vector<DelayRow> delay_table(int n_bs, int n_ue, double t_per_s)
{
  std::vector<DelayRow> rows;
  for (BfArchitecture scell : {BfArchitecture::Analog, BfArchitecture::Digital}) {
    for (BfArchitecture ue : {BfArchitecture::Analog, BfArchitecture::Digital}) {
      DelayRow r;
      r.scell = scell;
      r.ue = ue;
      r.dl_scans = scan_count(IaDesign::DownlinkBased, scell, ue, n_bs, n_ue);
      r.ul_scans = scan_count(IaDesign::UplinkBased, scell, ue, n_bs, n_ue);
      r.dl_delay_s = access_delay(r.dl_scans, t_per_s);
      r.ul_delay_s = access_delay(r.ul_scans, t_per_s);
      rows.push_back(r);
    }
  }
  return rows;
}

} // namespace mmwmc
