#include "ocpd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ocpd/csv.hpp"

namespace ocpd {

std::string to_string(DetectorKind k) {
  return k == DetectorKind::Clipped ? "clipped" : "glr";
}

DetectorConfig detector_config_of(const ExperimentSpec& spec) {
  if (spec.g_diam <= 0.0)
    throw std::invalid_argument(
        "experiment: the mean-set diameter g must be set explicitly (> 0); "
        "there is no safe default");
  DetectorConfig cfg;
  cfg.est = EstimatorConfig::make(spec.g_diam, spec.sigma, spec.regime,
                                  spec.scenario.dim, spec.lambda_override);
  cfg.delta = spec.delta;
  cfg.max_window = spec.max_window;
  return cfg;
}

GlrConfig glr_config_of(const ExperimentSpec& spec) {
  GlrConfig cfg;
  cfg.dim = spec.scenario.dim;
  cfg.lambda_max = spec.glr_lambda_max.value_or(spec.sigma * spec.sigma /
                                                static_cast<double>(spec.scenario.dim));
  cfg.delta = spec.delta;
  cfg.max_window = spec.max_window;
  cfg.allocate_over_span = spec.glr_allocate_over_span;
  return cfg;
}

namespace {

std::vector<Index> detection_times(const std::vector<Detection>& detections) {
  std::vector<Index> times;
  times.reserve(detections.size());
  for (const Detection& det : detections) times.push_back(det.time);
  return times;
}

RunReport run_one_replicate(const ExperimentSpec& spec, const GroundTruth& truth, int i) {
  const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(i);
  const std::vector<Vec> stream = generate(spec.scenario, seed);
  std::vector<Detection> detections;
  if (spec.detector == DetectorKind::Clipped) {
    detections = run(stream, detector_config_of(spec));
  } else {
    detections = run_glr(stream, glr_config_of(spec));
  }
  return make_report(seed, detection_times(detections), truth);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.replicates < 1) throw std::invalid_argument("experiment: replicates must be >= 1");
  validate_scenario(spec.scenario);
  if (spec.detector == DetectorKind::Clipped)
    (void)detector_config_of(spec);  // validate configuration up front
  ExperimentResult result;
  result.truth = ground_truth_of(spec.scenario);
  result.reports.resize(static_cast<std::size_t>(spec.replicates));

  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(spec.replicates)));
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= spec.replicates) return;
      result.reports[static_cast<std::size_t>(i)] = run_one_replicate(spec, result.truth, i);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  std::vector<double> regrets;
  regrets.reserve(result.reports.size());
  int detected = 0;
  for (const RunReport& rep : result.reports) {
    regrets.push_back(static_cast<double>(rep.regret));
    if (!rep.detections.empty()) ++detected;
  }
  result.regret_quantiles = aggregate(regrets);
  result.fpr_value = fpr(result.reports);
  result.detected_fraction =
      static_cast<double>(detected) / static_cast<double>(result.reports.size());
  if (result.truth.change_points.size() == 1) {
    std::vector<double> delays;
    for (const RunReport& rep : result.reports)
      if (rep.delays.front().has_value())
        delays.push_back(static_cast<double>(*rep.delays.front()));
    if (!delays.empty()) {
      result.delay_median = quantile_nearest_rank(delays, 0.5);
      result.delay_q90 = quantile_nearest_rank(delays, 0.9);
    }
  }
  return result;
}

std::vector<Detection> detect_stream(const std::vector<Vec>& stream,
                                     const ExperimentSpec& spec) {
  if (spec.detector == DetectorKind::Clipped) return run(stream, detector_config_of(spec));
  return run_glr(stream, glr_config_of(spec));
}

std::string config_comment(const ExperimentSpec& spec) {
  std::ostringstream os;
  os << "detector=" << to_string(spec.detector);
  if (!spec.scenario_name.empty()) os << " scenario=" << spec.scenario_name;
  os << " dim=" << spec.scenario.dim << " g=" << format_double(spec.g_diam)
     << " sigma=" << format_double(spec.sigma) << " delta=" << format_double(spec.delta)
     << " regime=" << to_string(spec.regime);
  if (spec.lambda_override) os << " lambda=" << format_double(*spec.lambda_override);
  if (spec.max_window != kUnbounded) os << " max_window=" << spec.max_window;
  os << " replicates=" << spec.replicates << " base_seed=" << spec.base_seed;
  if (spec.detector == DetectorKind::Glr) {
    os << " glr_lambda_max="
       << format_double(spec.glr_lambda_max.value_or(
              spec.sigma * spec.sigma / static_cast<double>(spec.scenario.dim)))
       << " glr_delta_allocation="
       << (spec.glr_allocate_over_span ? "per-span-pair" : "per-test");
  }
  return os.str();
}

void write_metrics_csv(const std::string& path, const ExperimentSpec& spec,
                       const ExperimentResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("metrics csv: cannot write " + path);
  out << "# " << config_comment(spec) << "\n";
  out << "seed,num_detections,num_false,regret,delay\n";
  const bool single_change = result.truth.change_points.size() == 1;
  for (const RunReport& rep : result.reports) {
    std::size_t num_false = 0;
    for (bool f : rep.false_flags) num_false += f ? 1 : 0;
    out << rep.seed << "," << rep.detections.size() << "," << num_false << ","
        << rep.regret << ",";
    if (single_change && rep.delays.front().has_value()) out << *rep.delays.front();
    out << "\n";
  }
}

void write_summary_csv(const std::string& path, const ExperimentSpec& spec,
                       const ExperimentResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("summary csv: cannot write " + path);
  out << "# " << config_comment(spec) << "\n";
  out << "scenario,detector,replicates,regret_median,regret_q05,regret_q95,fpr,"
         "detected_fraction,delay_median,delay_q90\n";
  out << spec.scenario_name << "," << to_string(spec.detector) << "," << spec.replicates
      << "," << format_double(result.regret_quantiles.median) << ","
      << format_double(result.regret_quantiles.q05) << ","
      << format_double(result.regret_quantiles.q95) << ","
      << format_double(result.fpr_value) << ","
      << format_double(result.detected_fraction) << ",";
  if (result.delay_median) out << format_double(*result.delay_median);
  out << ",";
  if (result.delay_q90) out << format_double(*result.delay_q90);
  out << "\n";
}

void write_detections_csv(const std::string& path,
                          const std::vector<Detection>& detections,
                          const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("detections csv: cannot write " + path);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "time,segment_start,loc_lo,loc_hi,witness_split\n";
  for (const Detection& det : detections) {
    out << det.time << "," << det.segment_start << ",";
    if (det.localization) out << det.localization->first << "," << det.localization->second;
    else out << ",";
    out << "," << det.witness_split << "\n";
  }
}

}  // namespace ocpd
