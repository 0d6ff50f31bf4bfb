#include "mmwmc/config.hpp"

#include "mmwmc/initial_access.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace mmwmc {

namespace {

double from_degrees(double deg)
{
  return deg * std::numbers::pi / 180.0;
}

// Shortest decimal degree value that maps back to exactly `rad`.
std::string degrees_text(double rad)
{
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, rad * 180.0 / std::numbers::pi);
    if (from_degrees(std::strtod(buf, nullptr)) == rad) {
      return buf;
    }
  }
  return buf;
}

std::string trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string{s.substr(first, last - first + 1)};
}

double parse_double(const std::string& key, const std::string& text)
{
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key, "expected a number, got '" + text + "'");
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& text)
{
  long long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text)
{
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_double(key, trim(item)));
  }
  if (out.empty()) {
    throw ConfigError(key, "expected a non-empty comma-separated list");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& text)
{
  if (text == "true" || text == "1" || text == "yes") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no") {
    return false;
  }
  throw ConfigError(key, "expected true/false, got '" + text + "'");
}

BfArchitecture parse_bf(const std::string& key, const std::string& text)
{
  if (text == "analog") {
    return BfArchitecture::Analog;
  }
  if (text == "digital") {
    return BfArchitecture::Digital;
  }
  throw ConfigError(key, "expected analog|digital, got '" + text + "'");
}

std::string fmt(double v)
{
  // Shortest representation that round-trips.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_list(const std::vector<double>& v)
{
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? ", " : "") + fmt(v[i]);
  }
  return out;
}

// Policy parameters are parsed separately and folded into the variant at the end.
struct PolicyFields
{
  std::string name;
  double hysteresis_db = 0.0;
  double variance_weight = 0.1;
};

struct Field
{
  std::function<void(SimConfig&, PolicyFields&, const std::string& key, const std::string& value)> set;
  std::function<std::string(const SimConfig&, const PolicyFields&)> get;
};

#define MMWMC_DOUBLE(expr)                                                                          \
  Field                                                                                             \
  {                                                                                                 \
    [](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) {                   \
      expr = parse_double(k, v);                                                                    \
    },                                                                                              \
      [](const SimConfig& c, const PolicyFields&) { return fmt(expr); }                             \
  }

#define MMWMC_DEGREES(expr)                                                                         \
  Field                                                                                             \
  {                                                                                                 \
    [](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) {                   \
      expr = from_degrees(parse_double(k, v));                                                      \
    },                                                                                              \
      [](const SimConfig& c, const PolicyFields&) { return degrees_text(expr); }                    \
  }

#define MMWMC_INT(expr)                                                                             \
  Field                                                                                             \
  {                                                                                                 \
    [](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) {                   \
      expr = static_cast<int>(parse_integer(k, v));                                                 \
    },                                                                                              \
      [](const SimConfig& c, const PolicyFields&) { return std::to_string(expr); }                  \
  }

#define MMWMC_SIZE(expr)                                                                            \
  Field                                                                                             \
  {                                                                                                 \
    [](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) {                   \
      expr = static_cast<std::size_t>(parse_unsigned(k, v));                                        \
    },                                                                                              \
      [](const SimConfig& c, const PolicyFields&) { return std::to_string(expr); }                  \
  }

const std::map<std::string, Field>& fields()
{
  static const std::map<std::string, Field> table = {
    {"w_tot_hz", MMWMC_DOUBLE(c.w_tot_hz)},
    {"p_tx_dbm", MMWMC_DOUBLE(c.p_tx_dbm)},
    {"nf_db", MMWMC_DOUBLE(c.nf_db)},
    {"f_c_hz", MMWMC_DOUBLE(c.f_c_hz)},
    {"tau_db", MMWMC_DOUBLE(c.tau_db)},
    {"bs_array_rows", MMWMC_INT(c.bs_array_rows)},
    {"bs_array_cols", MMWMC_INT(c.bs_array_cols)},
    {"ue_array_rows", MMWMC_INT(c.ue_array_rows)},
    {"ue_array_cols", MMWMC_INT(c.ue_array_cols)},
    {"element_spacing_wl", MMWMC_DOUBLE(c.element_spacing_wl)},
    {"n_bs_dirs", MMWMC_INT(c.n_bs_dirs)},
    {"n_ue_dirs", MMWMC_INT(c.n_ue_dirs)},
    {"bs_bf",
     {[](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) { c.bs_bf = parse_bf(k, v); },
      [](const SimConfig& c, const PolicyFields&) {
        return std::string{c.bs_bf == BfArchitecture::Digital ? "digital" : "analog"};
      }}},
    {"lambda_bs",
     {[](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) { c.lambda_bs = parse_list(k, v); },
      [](const SimConfig& c, const PolicyFields&) { return fmt_list(c.lambda_bs); }}},
    {"area_width_km", MMWMC_DOUBLE(c.area.width_km)},
    {"area_height_km", MMWMC_DOUBLE(c.area.height_km)},
    {"t_sig_s", MMWMC_DOUBLE(c.t_sig_s)},
    {"t_sig_sweep_s",
     {[](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) {
        c.t_sig_sweep_s = parse_list(k, v);
      },
      [](const SimConfig& c, const PolicyFields&) { return fmt_list(c.t_sig_sweep_s); }}},
    {"phi_ov", MMWMC_DOUBLE(c.phi_ov)},
    {"t_per_s", MMWMC_DOUBLE(c.t_per_s)},
    {"n_trials", MMWMC_SIZE(c.n_trials)},
    {"seed",
     {[](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) { c.seed = parse_unsigned(k, v); },
      [](const SimConfig& c, const PolicyFields&) { return std::to_string(c.seed); }}},
    {"sweeps_per_trial", MMWMC_INT(c.sweeps_per_trial)},
    {"memory_cap", MMWMC_SIZE(c.memory_cap)},
    {"refresh_fading",
     {[](SimConfig& c, PolicyFields&, const std::string& k, const std::string& v) {
        c.refresh_fading = parse_bool(k, v);
      },
      [](const SimConfig& c, const PolicyFields&) { return std::string{c.refresh_fading ? "true" : "false"}; }}},
    {"threads", MMWMC_INT(c.threads)},
    {"ue_height_m", MMWMC_DOUBLE(c.channel.ue_height_m)},
    {"scell_height_m", MMWMC_DOUBLE(c.channel.scell_height_m)},
    {"los_alpha_db", MMWMC_DOUBLE(c.channel.pathloss.los.alpha_db)},
    {"los_beta", MMWMC_DOUBLE(c.channel.pathloss.los.beta)},
    {"los_sigma_db", MMWMC_DOUBLE(c.channel.pathloss.los.sigma_db)},
    {"nlos_alpha_db", MMWMC_DOUBLE(c.channel.pathloss.nlos.alpha_db)},
    {"nlos_beta", MMWMC_DOUBLE(c.channel.pathloss.nlos.beta)},
    {"nlos_sigma_db", MMWMC_DOUBLE(c.channel.pathloss.nlos.sigma_db)},
    {"a_los_per_m", MMWMC_DOUBLE(c.channel.pathloss.a_los_per_m)},
    {"a_out_per_m", MMWMC_DOUBLE(c.channel.pathloss.a_out_per_m)},
    {"b_out", MMWMC_DOUBLE(c.channel.pathloss.b_out)},
    {"cluster_mean", MMWMC_DOUBLE(c.channel.clusters.mean_clusters)},
    {"subpaths_per_cluster", MMWMC_INT(c.channel.clusters.subpaths_per_cluster)},
    {"cluster_power_ratio", MMWMC_DOUBLE(c.channel.clusters.delay_power_ratio)},
    {"cluster_power_shadow_db", MMWMC_DOUBLE(c.channel.clusters.power_shadow_db)},
    {"ue_az_spread_deg", MMWMC_DEGREES(c.channel.clusters.ue_azimuth_spread_rad)},
    {"bs_az_spread_deg", MMWMC_DEGREES(c.channel.clusters.bs_azimuth_spread_rad)},
    {"ue_el_spread_deg", MMWMC_DEGREES(c.channel.clusters.ue_elevation_spread_rad)},
    {"bs_el_spread_deg", MMWMC_DEGREES(c.channel.clusters.bs_elevation_spread_rad)},
    {"policy",
     {[](SimConfig&, PolicyFields& p, const std::string&, const std::string& v) { p.name = v; },
      [](const SimConfig&, const PolicyFields& p) { return p.name; }}},
    {"hysteresis_db",
     {[](SimConfig&, PolicyFields& p, const std::string& k, const std::string& v) {
        p.hysteresis_db = parse_double(k, v);
      },
      [](const SimConfig&, const PolicyFields& p) { return fmt(p.hysteresis_db); }}},
    {"variance_weight",
     {[](SimConfig&, PolicyFields& p, const std::string& k, const std::string& v) {
        p.variance_weight = parse_double(k, v);
      },
      [](const SimConfig&, const PolicyFields& p) { return fmt(p.variance_weight); }}},
  };
  return table;
}

#undef MMWMC_DOUBLE
#undef MMWMC_DEGREES
#undef MMWMC_INT
#undef MMWMC_SIZE

PolicyFields policy_fields(const SelectionPolicy& policy)
{
  PolicyFields p;
  p.name = std::string{policy_name(policy)};
  if (const auto* h = std::get_if<MaxSinrHysteresis>(&policy)) {
    p.hysteresis_db = h->delta_db;
  }
  if (const auto* w = std::get_if<VariancePenalized>(&policy)) {
    p.variance_weight = w->weight;
  }
  return p;
}

SelectionPolicy build_policy(const PolicyFields& p)
{
  if (p.name == "max_sinr") {
    return MaxSinr{};
  }
  if (p.name == "max_sinr_hysteresis") {
    return MaxSinrHysteresis{p.hysteresis_db};
  }
  if (p.name == "variance_penalized") {
    return VariancePenalized{p.variance_weight};
  }
  throw ConfigError("policy", "expected max_sinr|max_sinr_hysteresis|variance_penalized, got '" + p.name + "'");
}

} // namespace

void validate(const SimConfig& c)
{
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) {
      throw ConfigError(key, what);
    }
  };
  require(c.w_tot_hz > 0.0, "w_tot_hz", "must be positive");
  require(c.f_c_hz > 0.0, "f_c_hz", "must be positive");
  require(c.bs_array_rows >= 1, "bs_array_rows", "must be >= 1");
  require(c.bs_array_cols >= 1, "bs_array_cols", "must be >= 1");
  require(c.ue_array_rows >= 1, "ue_array_rows", "must be >= 1");
  require(c.ue_array_cols >= 1, "ue_array_cols", "must be >= 1");
  require(c.element_spacing_wl > 0.0, "element_spacing_wl", "must be positive");
  require(c.n_bs_dirs >= 1, "n_bs_dirs", "must be >= 1");
  require(c.n_ue_dirs >= 1, "n_ue_dirs", "must be >= 1");
  require(!c.lambda_bs.empty(), "lambda_bs", "must list at least one density");
  for (double l : c.lambda_bs) {
    require(l >= 0.0, "lambda_bs", "densities must be non-negative");
  }
  require(c.area.width_km > 0.0, "area_width_km", "must be positive");
  require(c.area.height_km > 0.0, "area_height_km", "must be positive");
  require(c.t_per_s > 0.0, "t_per_s", "must be positive");
  require(c.t_sig_s > 0.0 && c.t_sig_s <= c.t_per_s, "t_sig_s", "must satisfy 0 < t_sig_s <= t_per_s");
  for (double t : c.t_sig_sweep_s) {
    require(t > 0.0, "t_sig_sweep_s", "durations must be positive");
  }
  const double expected_ov = overhead(c.t_sig_s, c.t_per_s);
  require(std::abs(c.phi_ov - expected_ov) <= 1e-9 * std::max(1.0, expected_ov), "phi_ov",
          "must equal t_sig_s / t_per_s");
  require(c.n_trials >= 1, "n_trials", "must be >= 1");
  require(c.sweeps_per_trial >= 1, "sweeps_per_trial", "must be >= 1");
  require(c.threads >= 0, "threads", "must be >= 0");
  require(c.channel.ue_height_m >= 0.0, "ue_height_m", "must be non-negative");
  require(c.channel.scell_height_m >= 0.0, "scell_height_m", "must be non-negative");
  require(c.channel.pathloss.los.beta > 0.0, "los_beta", "must be positive");
  require(c.channel.pathloss.nlos.beta > 0.0, "nlos_beta", "must be positive");
  require(c.channel.pathloss.los.sigma_db >= 0.0, "los_sigma_db", "must be non-negative");
  require(c.channel.pathloss.nlos.sigma_db >= 0.0, "nlos_sigma_db", "must be non-negative");
  require(c.channel.pathloss.a_los_per_m >= 0.0, "a_los_per_m", "must be non-negative");
  require(c.channel.pathloss.a_out_per_m >= 0.0, "a_out_per_m", "must be non-negative");
  require(c.channel.clusters.mean_clusters >= 0.0, "cluster_mean", "must be non-negative");
  require(c.channel.clusters.subpaths_per_cluster >= 1, "subpaths_per_cluster", "must be >= 1");
  require(c.channel.clusters.delay_power_ratio >= 1.0, "cluster_power_ratio", "must be >= 1");
  require(c.channel.clusters.power_shadow_db >= 0.0, "cluster_power_shadow_db", "must be non-negative");
  require(c.channel.clusters.ue_azimuth_spread_rad >= 0.0, "ue_az_spread_deg", "must be non-negative");
  require(c.channel.clusters.bs_azimuth_spread_rad >= 0.0, "bs_az_spread_deg", "must be non-negative");
  require(c.channel.clusters.ue_elevation_spread_rad >= 0.0, "ue_el_spread_deg", "must be non-negative");
  require(c.channel.clusters.bs_elevation_spread_rad >= 0.0, "bs_el_spread_deg", "must be non-negative");
  if (const auto* h = std::get_if<MaxSinrHysteresis>(&c.policy)) {
    require(h->delta_db >= 0.0, "hysteresis_db", "must be non-negative");
  }
  if (const auto* w = std::get_if<VariancePenalized>(&c.policy)) {
    require(w->weight >= 0.0, "variance_weight", "must be non-negative");
  }
}

SimConfig parse_config(std::istream& in)
{
  SimConfig cfg;
  PolicyFields policy = policy_fields(cfg.policy);
  const auto& table = fields();

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(body, "line " + std::to_string(line_no) + " is not of the form key = value");
    }
    const std::string key = trim(std::string_view{body}.substr(0, eq));
    const std::string value = trim(std::string_view{body}.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) {
      throw ConfigError(key, "unknown key (line " + std::to_string(line_no) + ")");
    }
    if (value.empty()) {
      throw ConfigError(key, "missing value");
    }
    it->second.set(cfg, policy, key, value);
  }
  cfg.policy = build_policy(policy);
  validate(cfg);
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path.string() + "'");
  }
  return parse_config(in);
}

std::string to_config_text(const SimConfig& cfg)
{
  const PolicyFields policy = policy_fields(cfg.policy);
  std::string out;
  for (const auto& [key, field] : fields()) {
    out += key + " = " + field.get(cfg, policy) + "\n";
  }
  return out;
}

MeasurementConfig measurement_config(const SimConfig& cfg, double t_sig_s)
{
  return MeasurementConfig{
    .p_tx_dbm = cfg.p_tx_dbm,
    .w_tot_hz = cfg.w_tot_hz,
    .nf_db = cfg.nf_db,
    .tau_db = cfg.tau_db,
    .t_sig_s = t_sig_s,
    .bs_architecture = cfg.bs_bf,
    .memory_cap = cfg.memory_cap,
    .ue_codebook = Codebook{cfg.ue_array_rows, cfg.ue_array_cols, cfg.n_ue_dirs, cfg.element_spacing_wl},
    .bs_codebook = Codebook{cfg.bs_array_rows, cfg.bs_array_cols, cfg.n_bs_dirs, cfg.element_spacing_wl},
  };
}

} // namespace mmwmc
