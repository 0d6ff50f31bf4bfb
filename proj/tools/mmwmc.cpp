// mmwmc: command-line driver.
//
//   mmwmc ia-delay      [--format text|csv|json] [--t-per S] [--n-bs N] [--n-ue N] [--output PATH]
//   mmwmc sweep-density [--config PATH] [--seed N] [--trials N] [--threads N] [--output CSV] [--json PATH]
//   mmwmc single-trial  [--config PATH] [--seed N] [--lambda X] [--trial-index N] [--t-sig S]
//                       [--output PATH] [--trace]
//
// Exit status: 0 success, 1 runtime or config error, 2 usage error.

#include "mmwmc/config.hpp"
#include "mmwmc/experiments.hpp"
#include "mmwmc/initial_access.hpp"
#include "mmwmc/json_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace mmwmc;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string fmt_g(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << text;
}

std::string scan_label(IaDesign design, int scans, int n_bs, int n_ue)
{
  if (scans == n_bs * n_ue) {
    return "N_UE N_BS";
  }
  if (design == IaDesign::DownlinkBased && scans == n_bs) {
    return "N_BS";
  }
  if (design == IaDesign::UplinkBased && scans == n_ue) {
    return "N_UE";
  }
  return std::to_string(scans);
}

// Lowercase tokens, as used in config files.
const char* bf_token(BfArchitecture a)
{
  return a == BfArchitecture::Analog ? "analog" : "digital";
}

struct IaDelayOptions
{
  std::string format = "text";
  double t_per_s = 200e-6;
  int n_bs = 16;
  int n_ue = 8;
  std::string output;
};

std::string render_ia_delay(const IaDelayOptions& o)
{
  const auto rows = delay_table(o.n_bs, o.n_ue, o.t_per_s);
  std::ostringstream out;
  if (o.format == "csv") {
    out << "scell_bf,ue_bf,design,scans,delay_ms\n";
    for (const DelayRow& r : rows) {
      out << bf_token(r.scell) << ',' << bf_token(r.ue) << ",DL," << r.dl_scans << ',' << fmt_g(r.dl_delay_s * 1e3)
          << '\n';
      out << bf_token(r.scell) << ',' << bf_token(r.ue) << ",UL," << r.ul_scans << ',' << fmt_g(r.ul_delay_s * 1e3)
          << '\n';
    }
  } else if (o.format == "json") {
    nlohmann::json j = {{"n_bs", o.n_bs}, {"n_ue", o.n_ue}, {"t_per_s", o.t_per_s}, {"rows", nlohmann::json::array()}};
    for (const DelayRow& r : rows) {
      j["rows"].push_back({{"scell_bf", bf_token(r.scell)},
                           {"ue_bf", bf_token(r.ue)},
                           {"dl_scans", r.dl_scans},
                           {"dl_delay_s", r.dl_delay_s},
                           {"ul_scans", r.ul_scans},
                           {"ul_delay_s", r.ul_delay_s}});
    }
    out << j.dump(2) << '\n';
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %-8s | %-26s | %s\n", "SCell", "UE", "DL-based (SCell tx)",
                  "UL-based (UE tx)");
    out << line << std::string(72, '-') << '\n';
    for (const DelayRow& r : rows) {
      const std::string dl = scan_label(IaDesign::DownlinkBased, r.dl_scans, o.n_bs, o.n_ue) + " = " +
                             std::to_string(r.dl_scans) + " (" + fmt_g(r.dl_delay_s * 1e3) + " ms)";
      const std::string ul = scan_label(IaDesign::UplinkBased, r.ul_scans, o.n_bs, o.n_ue) + " = " +
                             std::to_string(r.ul_scans) + " (" + fmt_g(r.ul_delay_s * 1e3) + " ms)";
      std::snprintf(line, sizeof line, "%-8s %-8s | %-26s | %s\n", std::string{to_string(r.scell)}.c_str(),
                    std::string{to_string(r.ue)}.c_str(), dl.c_str(), ul.c_str());
      out << line;
    }
    out << "N_BS = " << o.n_bs << ", N_UE = " << o.n_ue << ", T_per = " << fmt_g(o.t_per_s * 1e6) << " us\n";
  }
  return out.str();
}

struct RunOptions
{
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<int> threads;
  std::string output;
  std::string json_path;
  std::optional<double> lambda;
  std::uint64_t trial_index = 0;
  std::optional<double> t_sig;
  bool trace = false;
};

SimConfig resolve_config(const RunOptions& o)
{
  SimConfig cfg = o.config_path.empty() ? SimConfig{} : load_config(o.config_path);
  if (o.seed) {
    cfg.seed = *o.seed;
  }
  if (o.trials) {
    cfg.n_trials = *o.trials;
  }
  if (o.threads) {
    cfg.threads = *o.threads;
  }
  validate(cfg);
  return cfg;
}

int cmd_sweep_density(const RunOptions& o)
{
  const SimConfig cfg = resolve_config(o);
  const CampaignResult result = run_campaign(cfg);
  write_output(o.output, campaign_csv(result));
  if (!o.json_path.empty()) {
    write_output(o.json_path, campaign_json(result).dump(2) + "\n");
  }

  std::ostream& log = o.output.empty() || o.output == "-" ? std::cerr : std::cout;
  log << "seed " << cfg.seed << ", " << cfg.n_trials << " trials per density\n";
  for (const Curve& c : result.curves) {
    log << c.metric << ":";
    for (const CurvePoint& p : c.points) {
      log << "  " << fmt_g(p.lambda_bs) << "->" << (p.mean ? fmt_g(*p.mean) : std::string{"n/a"});
    }
    log << '\n';
  }
  return 0;
}

int cmd_single_trial(const RunOptions& o)
{
  const SimConfig cfg = resolve_config(o);
  const double lambda = o.lambda.value_or(cfg.lambda_bs.front());
  const double t_sig = o.t_sig.value_or(cfg.t_sig_s);
  if (!(lambda >= 0.0)) {
    throw ConfigError("lambda_bs", "must be non-negative");
  }
  if (!(t_sig > 0.0)) {
    throw ConfigError("t_sig_s", "must be positive");
  }
  const TrialTrace tr = run_trial_traced(cfg, lambda, t_sig, o.trial_index);

  nlohmann::json links = nlohmann::json::array();
  for (const DirectionalLink& l : tr.links) {
    links.push_back(to_json(l, o.trace));
  }
  nlohmann::json tables = nlohmann::json::array();
  for (const ReportTable& t : tr.tables) {
    tables.push_back(to_json(t, o.trace));
  }
  nlohmann::json timeline = nlohmann::json::array();
  for (const HandoverOutcome& h : tr.timeline) {
    timeline.push_back(to_json(h));
  }
  nlohmann::json messages = nlohmann::json::array();
  for (const ControlMessage& m : tr.messages) {
    messages.push_back(to_json(m));
  }

  nlohmann::json j = {
    {"seed", cfg.seed},
    {"trial_index", tr.trial_index},
    {"lambda_bs", tr.lambda_bs},
    {"t_sig_s", tr.t_sig_s},
    {"policy", std::string{policy_name(cfg.policy)}},
    {"deployment", to_json(tr.deployment)},
    {"links", std::move(links)},
    {"report_tables", std::move(tables)},
    {"crt", to_json(tr.crt, o.trace)},
    {"decision", tr.result.decision ? to_json(*tr.result.decision) : nlohmann::json(nullptr)},
    {"outcome", tr.result.decision ? "handover" : "detach"},
    {"n_available", tr.result.n_available},
    {"serving_distance_m",
     tr.result.serving_distance_m ? nlohmann::json(*tr.result.serving_distance_m) : nlohmann::json(nullptr)},
    {"handovers", tr.result.handovers},
    {"timeline", std::move(timeline)},
    {"messages", std::move(messages)},
    {"sweep", {{"sinr_evaluations_per_scell", tr.sweep_stats.sinr_evaluations},
               {"scan_slots_per_scell", tr.sweep_stats.scan_slots}}},
  };
  write_output(o.output, j.dump(2) + "\n");
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Uplink multi-connectivity measurement simulator for mmWave cellular networks"};
  app.require_subcommand(1);

  IaDelayOptions ia;
  auto* ia_cmd = app.add_subcommand("ia-delay", "Initial-access scan counts and delays per beamforming architecture");
  ia_cmd->add_option("--format", ia.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  ia_cmd->add_option("--t-per", ia.t_per_s, "Period between scanning opportunities [s]")
    ->check(CLI::PositiveNumber);
  ia_cmd->add_option("--n-bs", ia.n_bs, "SCell scanning directions")->check(CLI::Range(1, 1 << 16));
  ia_cmd->add_option("--n-ue", ia.n_ue, "UE scanning directions")->check(CLI::Range(1, 1 << 16));
  ia_cmd->add_option("--output", ia.output, "Output file (default stdout)");

  RunOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep-density", "Monte Carlo campaign over SCell densities");
  sweep_cmd->add_option("--config", sweep.config_path, "Key/value config file (default: built-in defaults)");
  sweep_cmd->add_option("--seed", sweep.seed, "Base seed override");
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per density override")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--output", sweep.output, "CSV output file (default stdout)");
  sweep_cmd->add_option("--json", sweep.json_path, "JSON mirror of the CSV");

  RunOptions single;
  auto* single_cmd = app.add_subcommand("single-trial", "Run one trial and print its JSON trace");
  single_cmd->add_option("--config", single.config_path, "Key/value config file (default: built-in defaults)");
  single_cmd->add_option("--seed", single.seed, "Base seed override");
  single_cmd->add_option("--lambda", single.lambda, "SCell density [1/km^2] (default: first lambda_bs)");
  single_cmd->add_option("--trial-index", single.trial_index, "Trial index within the seed's stream");
  single_cmd->add_option("--t-sig", single.t_sig, "Sounding duration [s] (default: t_sig_s)");
  single_cmd->add_option("--output", single.output, "Output file (default stdout)");
  single_cmd->add_flag("--trace", single.trace, "Include subpaths and per-entry SINR histories");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (ia_cmd->parsed()) {
      write_output(ia.output, render_ia_delay(ia));
      return 0;
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep_density(sweep);
    }
    return cmd_single_trial(single);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
