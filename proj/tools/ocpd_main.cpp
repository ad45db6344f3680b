// Experiment runner and file I/O for the streaming change-point detector:
// scenario simulation with Monte Carlo replication, detection on user data,
// and the worst-case delay-bound heatmap.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ocpd/csv.hpp"
#include "ocpd/delay.hpp"
#include "ocpd/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonFlags {
  double g = 0.0;
  double sigma = 1.0;
  double delta = 0.1;
  std::string regime = "empirical";
  double lambda = 0.0;  // 0 = default 2g
  long long max_window = 0;  // 0 = unbounded
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--g", flags.g,
                  "Diameter of the mean set (required; no safe default exists "
                  "for this parameter)")
      ->required();
  cmd->add_option("--sigma", flags.sigma, "Second-moment bound")->capture_default_str();
  cmd->add_option("--delta", flags.delta, "False-positive-rate budget in (0,1)")->capture_default_str();
  cmd->add_option("--regime", flags.regime, "Constant regime: empirical|theoretical")
      ->capture_default_str()
      ->check(CLI::IsMember({"empirical", "theoretical"}));
  cmd->add_option("--lambda", flags.lambda, "Clipping level override (default 2*g)");
  cmd->add_option("--max-window", flags.max_window,
                  "Cap on retained chains per segment (default unbounded)");
}

void apply_common(const CommonFlags& flags, ocpd::ExperimentSpec& spec) {
  spec.g_diam = flags.g;
  spec.sigma = flags.sigma;
  spec.delta = flags.delta;
  spec.regime = flags.regime == "theoretical" ? ocpd::Regime::Theoretical
                                              : ocpd::Regime::Empirical;
  if (flags.lambda > 0.0) spec.lambda_override = flags.lambda;
  if (flags.max_window > 0) spec.max_window = flags.max_window;
}

std::vector<ocpd::Index> parse_int_list(const std::string& text) {
  std::vector<ocpd::Index> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stoll(cell));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

int cmd_list_scenarios() {
  for (const auto& [name, scenario] : ocpd::scenario_catalog()) {
    std::cout << name << ": family=" << ocpd::to_string(scenario.family)
              << " dim=" << scenario.dim << " segments=";
    for (std::size_t i = 0; i < scenario.segments.size(); ++i) {
      if (i) std::cout << "|";
      std::cout << scenario.segments[i].length << "@" << ocpd::norm2(scenario.segments[i].mean);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const std::string& scenario_name, const std::string& detector,
                 const CommonFlags& flags, int replicates, unsigned long long seed,
                 const std::string& out_dir) {
  const auto catalog = ocpd::scenario_catalog();
  const auto it = catalog.find(scenario_name);
  if (it == catalog.end()) {
    std::cerr << "error: unknown scenario '" << scenario_name << "'. Available:\n";
    for (const auto& [name, sc] : catalog) std::cerr << "  " << name << "\n";
    return kExitUsage;
  }
  ocpd::ExperimentSpec spec;
  spec.scenario_name = scenario_name;
  spec.scenario = it->second;
  spec.detector = detector == "glr" ? ocpd::DetectorKind::Glr : ocpd::DetectorKind::Clipped;
  apply_common(flags, spec);
  spec.replicates = replicates;
  spec.base_seed = seed;

  const ocpd::ExperimentResult result = ocpd::run_experiment(spec);
  std::filesystem::create_directories(out_dir);
  ocpd::write_metrics_csv(out_dir + "/metrics.csv", spec, result);
  ocpd::write_summary_csv(out_dir + "/summary.csv", spec, result);
  std::cout << "scenario=" << scenario_name << " detector=" << ocpd::to_string(spec.detector)
            << " regret_median=" << result.regret_quantiles.median
            << " fpr=" << result.fpr_value << " -> " << out_dir << "\n";
  return kExitOk;
}

int cmd_detect(const std::string& input, bool well_log, int dim_expected,
               const std::string& detector, const CommonFlags& flags,
               const std::string& out_path) {
  std::vector<ocpd::Vec> stream;
  if (well_log) {
    stream = ocpd::load_well_log(input);
  } else {
    stream = ocpd::read_stream_csv(input);
  }
  if (stream.empty()) throw std::runtime_error("detect: input stream is empty");
  const int dim = static_cast<int>(stream.front().size());
  if (dim_expected > 0 && dim_expected != dim)
    throw std::runtime_error("detect: input dimension " + std::to_string(dim) +
                             " does not match --dim " + std::to_string(dim_expected));

  ocpd::ExperimentSpec spec;
  spec.scenario.dim = dim;
  spec.detector = detector == "glr" ? ocpd::DetectorKind::Glr : ocpd::DetectorKind::Clipped;
  apply_common(flags, spec);

  const std::vector<ocpd::Detection> detections = ocpd::detect_stream(stream, spec);
  std::ostringstream comment;
  comment << "input=" << input << (well_log ? " format=well-log" : " format=csv") << " "
          << ocpd::config_comment(spec);
  ocpd::write_detections_csv(out_path, detections, comment.str());
  std::cout << detections.size() << " detection(s) -> " << out_path << "\n";
  return kExitOk;
}

int cmd_delay_heatmap(const std::string& n_list, const std::string& jump_list,
                      const CommonFlags& flags, double delta_prime, long long d_max,
                      const std::string& out_path) {
  const std::vector<ocpd::Index> n_grid = parse_int_list(n_list);
  const std::vector<double> jump_grid = parse_double_list(jump_list);
  ocpd::DelayQuery tmpl;
  tmpl.cfg = ocpd::EstimatorConfig::make(
      flags.g, flags.sigma,
      flags.regime == "theoretical" ? ocpd::Regime::Theoretical : ocpd::Regime::Empirical,
      1, flags.lambda > 0.0 ? std::optional<double>(flags.lambda) : std::nullopt);
  tmpl.delta_prime = delta_prime;
  tmpl.fpr_delta = flags.delta;
  if (d_max > 0) tmpl.d_max = d_max;

  const ocpd::DelayHeatmap map = ocpd::delay_heatmap(n_grid, jump_grid, tmpl);

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("heatmap: cannot write " + out_path);
  out << "# g=" << ocpd::format_double(flags.g) << " sigma=" << ocpd::format_double(flags.sigma)
      << " delta=" << ocpd::format_double(flags.delta)
      << " delta_prime=" << ocpd::format_double(delta_prime) << " regime=" << flags.regime
      << " d_max=" << tmpl.d_max << "\n";
  out << "n";
  for (double j : map.jump_grid) out << "," << ocpd::format_double(j);
  out << "\n";
  for (std::size_t i = 0; i < map.n_grid.size(); ++i) {
    out << map.n_grid[i];
    for (std::size_t j = 0; j < map.jump_grid.size(); ++j) {
      out << ",";
      if (map.cells[i][j]) out << *map.cells[i][j];
    }
    out << "\n";
  }
  std::cout << "heatmap " << map.n_grid.size() << "x" << map.jump_grid.size() << " -> "
            << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming change-point detection for heavy-tailed data"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Config file; keys mirror the flags, grouped in a [subcommand] "
                 "section. Flags given on the command line win.");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo scenario experiment");
  std::string scenario_name, detector = "clipped", out_dir = "out";
  CommonFlags sim_flags;
  int replicates = 30;
  unsigned long long seed = 1;
  simulate->add_option("--scenario", scenario_name, "Scenario name (see list-scenarios)")
      ->required();
  simulate->add_option("--detector", detector, "Detector: clipped|glr")
      ->capture_default_str()
      ->check(CLI::IsMember({"clipped", "glr"}));
  add_common(simulate, sim_flags);
  simulate->add_option("--replicates", replicates, "Independent replicates")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Base seed; replicate i uses seed + i")->capture_default_str();
  simulate->add_option("--out", out_dir, "Output directory")->capture_default_str();

  // detect
  auto* detect = app.add_subcommand("detect", "Detect change points in a data file");
  std::string input, det_detector = "clipped", det_out = "detections.csv";
  bool well_log = false;
  int dim_expected = 0;
  CommonFlags det_flags;
  detect->add_option("input", input, "Input file (stream CSV, or --well-log text)")
      ->required();
  detect->add_flag("--well-log", well_log,
                   "Treat input as well-log text (one value per line, divided by 10^4.5)");
  detect->add_option("--dim", dim_expected, "Expected dimension (error on mismatch)");
  detect->add_option("--detector", det_detector, "Detector: clipped|glr")
      ->capture_default_str()
      ->check(CLI::IsMember({"clipped", "glr"}));
  add_common(detect, det_flags);
  detect->add_option("--out", det_out, "Output detections CSV")->capture_default_str();

  // delay-heatmap
  auto* heatmap = app.add_subcommand("delay-heatmap", "Worst-case delay bound over a grid");
  std::string n_list = "100,200,400,800,1600,2000";
  std::string jump_list = "0.5,1,2,4,6,8,10";
  std::string hm_out = "heatmap.csv";
  double delta_prime = 0.1;
  long long d_max = 0;
  CommonFlags hm_flags;
  heatmap->add_option("--n", n_list, "Comma-separated pre-change sample counts")->capture_default_str();
  heatmap->add_option("--jump", jump_list, "Comma-separated mean-jump magnitudes")->capture_default_str();
  add_common(heatmap, hm_flags);
  heatmap->add_option("--delta-prime", delta_prime, "Delay confidence in (0,1)")->capture_default_str();
  heatmap->add_option("--d-max", d_max, "Scan cap (default 1000000)");
  heatmap->add_option("--out", hm_out, "Output CSV")->capture_default_str();

  // list-scenarios
  app.add_subcommand("list-scenarios", "Print the scenario catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("list-scenarios")) return cmd_list_scenarios();
    if (app.got_subcommand(simulate))
      return cmd_simulate(scenario_name, detector, sim_flags, replicates, seed, out_dir);
    if (app.got_subcommand(detect))
      return cmd_detect(input, well_log, dim_expected, det_detector, det_flags, det_out);
    if (app.got_subcommand(heatmap))
      return cmd_delay_heatmap(n_list, jump_list, hm_flags, delta_prime, d_max, hm_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
