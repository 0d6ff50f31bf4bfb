#pragma once

#include "mmwmc/beamforming.hpp"
#include "mmwmc/deployment.hpp"
#include "mmwmc/rng.hpp"

#include <complex>
#include <numbers>
#include <string_view>
#include <vector>

namespace mmwmc {

enum class LinkState
{
  Los,
  Nlos,
  Outage,
};

std::string_view to_string(LinkState s);

/// Log-distance model PL = alpha + 10*beta*log10(d) + N(0, sigma^2).
struct StatePathloss
{
  double alpha_db;
  double beta;
  double sigma_db;
};

/// Three-state pathloss model. Defaults are the 28 GHz dense-urban fit.
struct PathlossParams
{
  StatePathloss los{61.4, 2.0, 5.8};
  StatePathloss nlos{72.0, 2.92, 8.7};
  double a_los_per_m = 1.0 / 67.1;
  double a_out_per_m = 1.0 / 30.0;
  double b_out = 5.2;
  double carrier_hz = 28e9;
};

void validate(const PathlossParams& p);

/// Small-scale cluster generator settings.
struct ClusterParams
{
  double mean_clusters = 1.9;  // K = max(1, Poisson(mean))
  int subpaths_per_cluster = 20;
  double delay_power_ratio = 2.8;  // cluster power ~ U^(r-1) * 10^(-0.1 Z)
  double power_shadow_db = 4.0;    // std of Z
  double ue_azimuth_spread_rad = 15.5 * std::numbers::pi / 180.0;
  double bs_azimuth_spread_rad = 10.2 * std::numbers::pi / 180.0;
  double ue_elevation_spread_rad = 6.0 * std::numbers::pi / 180.0;
  double bs_elevation_spread_rad = 3.0 * std::numbers::pi / 180.0;
};

void validate(const ClusterParams& p);

struct ChannelParams
{
  PathlossParams pathloss;
  ClusterParams clusters;
  double ue_height_m = 10.0;
  double scell_height_m = 10.0;
};

struct StateProbabilities
{
  double los = 0.0;
  double nlos = 0.0;
  double outage = 0.0;
};

/// p_out = max(0, 1 - exp(-a_out d + b_out)), p_los = (1 - p_out) exp(-a_los d).
StateProbabilities state_probabilities(double d_m, const PathlossParams& params);

LinkState sample_link_state(double d_m, const PathlossParams& params, Rng& rng);

/// Pathloss with one shadowing draw. Throws for OUTAGE or d <= 0.
/// NLOS values are floored at free-space loss for the same distance.
double pathloss_db(double d_m, LinkState state, const PathlossParams& params, Rng& rng);

double free_space_pathloss_db(double d_m, double carrier_hz);

struct Subpath
{
  double ue_azimuth_offset_rad = 0.0;
  double ue_elevation_offset_rad = 0.0;
  double bs_azimuth_offset_rad = 0.0;
  double bs_elevation_offset_rad = 0.0;
  std::complex<double> gain;  // amplitude sqrt(power_fraction / n_subpaths), random phase
};

struct Cluster
{
  double ue_azimuth_rad = 0.0;
  double ue_elevation_rad = 0.0;
  double bs_azimuth_rad = 0.0;
  double bs_elevation_rad = 0.0;
  double power_fraction = 1.0;
  double azimuth_spread_ue_rad = 0.0;
  double azimuth_spread_bs_rad = 0.0;
  double elevation_spread_ue_rad = 0.0;
  double elevation_spread_bs_rad = 0.0;
  std::vector<Subpath> subpaths;
};

/// Angles of the direct ray between the two ends, used to anchor LOS clusters.
struct LinkGeometry
{
  double ue_to_bs_azimuth_rad = 0.0;
  double ue_to_bs_elevation_rad = 0.0;
};

LinkGeometry link_geometry(Point ue, double ue_height_m, Point bs, double bs_height_m);

/// Draws the cluster set of a non-outage link; throws for OUTAGE.
/// In LOS the first cluster is centered on the direct ray; all other centers are
/// uniform in azimuth at each end.
std::vector<Cluster> sample_clusters(LinkState state, const ClusterParams& params, const LinkGeometry& geometry,
                                     Rng& rng);

struct DirectionalLink
{
  int scell_id = 0;
  double distance_m = 0.0;
  LinkState state = LinkState::Outage;
  double pathloss_db = 0.0;  // +inf for OUTAGE
  std::vector<Cluster> clusters;
};

/// Full per-link draw: state, then shadowed pathloss, then clusters.
DirectionalLink sample_link(int scell_id, Point ue, Point bs, const ChannelParams& params, Rng& rng);

/// Redraws the phase of every subpath; state, pathloss and angles are kept.
void refresh_fading(DirectionalLink& link, Rng& rng);

/// Beamformed power gain |sum_s g_s r_ue(s) r_bs(s)|^2 * 10^(-PL/10); 0 for OUTAGE.
double link_gain_linear(const DirectionalLink& link, int ue_dir, int bs_dir, const Codebook& ue_codebook,
                        const Codebook& bs_codebook);

/// All direction pairs at once, row-major [ue_dir * n_bs + bs_dir].
std::vector<double> link_gain_matrix(const DirectionalLink& link, const Codebook& ue_codebook,
                                     const Codebook& bs_codebook);

} // namespace mmwmc
