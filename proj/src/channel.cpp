#include "mmwmc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mmwmc {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

double uniform_phase(Rng& rng)
{
  return std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
}

double standard_normal(Rng& rng)
{
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

} // namespace

std::string_view to_string(LinkState s)
{
  switch (s) {
    case LinkState::Los: return "LOS";
    case LinkState::Nlos: return "NLOS";
    case LinkState::Outage: return "OUTAGE";
  }
  return "?";
}

void validate(const PathlossParams& p)
{
  for (const StatePathloss* s : {&p.los, &p.nlos}) {
    if (!(s->beta > 0.0)) {
      throw std::invalid_argument("pathloss slope beta must be positive");
    }
    if (!(s->sigma_db >= 0.0)) {
      throw std::invalid_argument("shadowing sigma must be non-negative");
    }
  }
  if (!(p.a_los_per_m >= 0.0) || !(p.a_out_per_m >= 0.0)) {
    throw std::invalid_argument("state-probability decay coefficients must be non-negative");
  }
  if (!(p.carrier_hz > 0.0)) {
    throw std::invalid_argument("carrier frequency must be positive");
  }
}

void validate(const ClusterParams& p)
{
  if (!(p.mean_clusters >= 0.0)) {
    throw std::invalid_argument("mean cluster count must be non-negative");
  }
  if (p.subpaths_per_cluster < 1) {
    throw std::invalid_argument("subpaths per cluster must be >= 1");
  }
  for (double s : {p.ue_azimuth_spread_rad, p.bs_azimuth_spread_rad, p.ue_elevation_spread_rad,
                   p.bs_elevation_spread_rad, p.power_shadow_db}) {
    if (!(s >= 0.0)) {
      throw std::invalid_argument("angular spreads and power shadowing must be non-negative");
    }
  }
  if (!(p.delay_power_ratio >= 1.0)) {
    throw std::invalid_argument("cluster power ratio must be >= 1");
  }
}

StateProbabilities state_probabilities(double d_m, const PathlossParams& params)
{
  if (!(d_m > 0.0)) {
    throw std::invalid_argument("link distance must be positive");
  }
  StateProbabilities p;
  p.outage = std::clamp(1.0 - std::exp(-params.a_out_per_m * d_m + params.b_out), 0.0, 1.0);
  p.los = std::clamp((1.0 - p.outage) * std::exp(-params.a_los_per_m * d_m), 0.0, 1.0);
  p.nlos = 1.0 - p.outage - p.los;
  return p;
}

LinkState sample_link_state(double d_m, const PathlossParams& params, Rng& rng)
{
  const StateProbabilities p = state_probabilities(d_m, params);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < p.outage) {
    return LinkState::Outage;
  }
  if (u < p.outage + p.los) {
    return LinkState::Los;
  }
  return LinkState::Nlos;
}

double free_space_pathloss_db(double d_m, double carrier_hz)
{
  const double wavelength = kSpeedOfLight / carrier_hz;
  return 20.0 * std::log10(4.0 * std::numbers::pi * d_m / wavelength);
}

double pathloss_db(double d_m, LinkState state, const PathlossParams& params, Rng& rng)
{
  if (!(d_m > 0.0)) {
    throw std::invalid_argument("link distance must be positive");
  }
  if (state == LinkState::Outage) {
    throw std::invalid_argument("outage links have no finite pathloss");
  }
  const StatePathloss& s = state == LinkState::Los ? params.los : params.nlos;
  const double shadow = s.sigma_db * standard_normal(rng);
  double pl = s.alpha_db + 10.0 * s.beta * std::log10(d_m) + shadow;
  if (state == LinkState::Nlos) {
    pl = std::max(pl, free_space_pathloss_db(d_m, params.carrier_hz));
  }
  return pl;
}

LinkGeometry link_geometry(Point ue, double ue_height_m, Point bs, double bs_height_m)
{
  LinkGeometry g;
  g.ue_to_bs_azimuth_rad = std::atan2(bs.y - ue.y, bs.x - ue.x);
  g.ue_to_bs_elevation_rad = std::atan2(bs_height_m - ue_height_m, distance_m(ue, bs));
  return g;
}

std::vector<Cluster> sample_clusters(LinkState state, const ClusterParams& params, const LinkGeometry& geometry,
                                     Rng& rng)
{
  if (state == LinkState::Outage) {
    throw std::invalid_argument("outage links carry no clusters");
  }

  std::size_t count = 0;
  if (params.mean_clusters > 0.0) {
    count = std::poisson_distribution<std::size_t>(params.mean_clusters)(rng);
  }
  count = std::max<std::size_t>(count, 1);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Cluster> clusters(count);
  double total_power = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    Cluster& cl = clusters[c];
    const bool direct = state == LinkState::Los && c == 0;
    const double ue_az = direct ? geometry.ue_to_bs_azimuth_rad : uniform_phase(rng);
    const double bs_az = direct ? geometry.ue_to_bs_azimuth_rad + std::numbers::pi : uniform_phase(rng);
    cl.ue_azimuth_rad = wrap_angle(ue_az);
    cl.bs_azimuth_rad = wrap_angle(bs_az);
    cl.ue_elevation_rad = geometry.ue_to_bs_elevation_rad;
    cl.bs_elevation_rad = -geometry.ue_to_bs_elevation_rad;
    cl.azimuth_spread_ue_rad = params.ue_azimuth_spread_rad;
    cl.azimuth_spread_bs_rad = params.bs_azimuth_spread_rad;
    cl.elevation_spread_ue_rad = params.ue_elevation_spread_rad;
    cl.elevation_spread_bs_rad = params.bs_elevation_spread_rad;

    // (0, 1] keeps pow() finite for the exponent below.
    const double u = 1.0 - unit(rng);
    const double z = params.power_shadow_db * standard_normal(rng);
    cl.power_fraction = std::pow(u, params.delay_power_ratio - 1.0) * std::pow(10.0, -0.1 * z);
    total_power += cl.power_fraction;

    cl.subpaths.resize(static_cast<std::size_t>(params.subpaths_per_cluster));
    for (Subpath& sp : cl.subpaths) {
      sp.ue_azimuth_offset_rad = cl.azimuth_spread_ue_rad * standard_normal(rng);
      sp.ue_elevation_offset_rad = cl.elevation_spread_ue_rad * standard_normal(rng);
      sp.bs_azimuth_offset_rad = cl.azimuth_spread_bs_rad * standard_normal(rng);
      sp.bs_elevation_offset_rad = cl.elevation_spread_bs_rad * standard_normal(rng);
    }
  }

  for (Cluster& cl : clusters) {
    cl.power_fraction /= total_power;
    const double amplitude = std::sqrt(cl.power_fraction / static_cast<double>(cl.subpaths.size()));
    for (Subpath& sp : cl.subpaths) {
      sp.gain = std::polar(amplitude, uniform_phase(rng));
    }
  }
  return clusters;
}

DirectionalLink sample_link(int scell_id, Point ue, Point bs, const ChannelParams& params, Rng& rng)
{
  DirectionalLink link;
  link.scell_id = scell_id;
  const double dz = params.scell_height_m - params.ue_height_m;
  // Below 1 m the far-field model does not apply.
  link.distance_m = std::max(1.0, std::hypot(distance_m(ue, bs), dz));
  link.state = sample_link_state(link.distance_m, params.pathloss, rng);
  if (link.state == LinkState::Outage) {
    link.pathloss_db = std::numeric_limits<double>::infinity();
    return link;
  }
  link.pathloss_db = pathloss_db(link.distance_m, link.state, params.pathloss, rng);
  link.clusters = sample_clusters(link.state, params.clusters,
                                  link_geometry(ue, params.ue_height_m, bs, params.scell_height_m), rng);
  return link;
}

void refresh_fading(DirectionalLink& link, Rng& rng)
{
  for (Cluster& cl : link.clusters) {
    for (Subpath& sp : cl.subpaths) {
      sp.gain = std::polar(std::abs(sp.gain), uniform_phase(rng));
    }
  }
}

double link_gain_linear(const DirectionalLink& link, int ue_dir, int bs_dir, const Codebook& ue_codebook,
                        const Codebook& bs_codebook)
{
  ue_codebook.steering(ue_dir);
  bs_codebook.steering(bs_dir);
  if (link.state == LinkState::Outage) {
    return 0.0;
  }
  std::complex<double> h{0.0, 0.0};
  for (const Cluster& cl : link.clusters) {
    for (const Subpath& sp : cl.subpaths) {
      h += sp.gain *
           ue_codebook.response(ue_dir, cl.ue_azimuth_rad + sp.ue_azimuth_offset_rad,
                                cl.ue_elevation_rad + sp.ue_elevation_offset_rad) *
           bs_codebook.response(bs_dir, cl.bs_azimuth_rad + sp.bs_azimuth_offset_rad,
                                cl.bs_elevation_rad + sp.bs_elevation_offset_rad);
    }
  }
  return std::norm(h) * std::pow(10.0, -link.pathloss_db / 10.0);
}

std::vector<double> link_gain_matrix(const DirectionalLink& link, const Codebook& ue_codebook,
                                     const Codebook& bs_codebook)
{
  const auto n_ue = static_cast<std::size_t>(ue_codebook.n_directions());
  const auto n_bs = static_cast<std::size_t>(bs_codebook.n_directions());
  std::vector<double> gains(n_ue * n_bs, 0.0);
  if (link.state == LinkState::Outage) {
    return gains;
  }

  std::vector<std::complex<double>> h(n_ue * n_bs, {0.0, 0.0});
  std::vector<std::complex<double>> ue_r(n_ue);
  std::vector<std::complex<double>> bs_r(n_bs);
  for (const Cluster& cl : link.clusters) {
    for (const Subpath& sp : cl.subpaths) {
      ue_codebook.responses(cl.ue_azimuth_rad + sp.ue_azimuth_offset_rad,
                            cl.ue_elevation_rad + sp.ue_elevation_offset_rad, ue_r);
      bs_codebook.responses(cl.bs_azimuth_rad + sp.bs_azimuth_offset_rad,
                            cl.bs_elevation_rad + sp.bs_elevation_offset_rad, bs_r);
      for (std::size_t i = 0; i < n_ue; ++i) {
        const std::complex<double> a = sp.gain * ue_r[i];
        if (a == std::complex<double>{0.0, 0.0}) {
          continue;
        }
        std::complex<double>* row = &h[i * n_bs];
        for (std::size_t k = 0; k < n_bs; ++k) {
          row[k] += a * bs_r[k];
        }
      }
    }
  }

  const double scale = std::pow(10.0, -link.pathloss_db / 10.0);
  for (std::size_t n = 0; n < h.size(); ++n) {
    gains[n] = std::norm(h[n]) * scale;
  }
  return gains;
}

} // namespace mmwmc
