#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ocpd/baseline_glr.hpp"
#include "ocpd/detector.hpp"
#include "ocpd/metrics.hpp"
#include "ocpd/streams.hpp"

namespace ocpd {

enum class DetectorKind { Clipped, Glr };

std::string to_string(DetectorKind k);

// One Monte Carlo experiment: a scenario, a detector, replication counts and
// seeds. g_diam has no default on purpose; experiment entry points must set
// it explicitly.
struct ExperimentSpec {
  std::string scenario_name;
  Scenario scenario;
  DetectorKind detector = DetectorKind::Clipped;
  double g_diam = 0.0;
  double sigma = 1.0;
  double delta = 0.1;
  Regime regime = Regime::Empirical;
  std::optional<double> lambda_override;
  Index max_window = kUnbounded;
  int replicates = 30;
  std::uint64_t base_seed = 1;
  std::optional<double> glr_lambda_max;  // default sigma^2 / dim
  bool glr_allocate_over_span = true;
};

struct ExperimentResult {
  GroundTruth truth;
  std::vector<RunReport> reports;        // replicate order
  Quantiles regret_quantiles{};
  double fpr_value = 0.0;
  // Present only for single-change scenarios.
  std::optional<double> delay_median;
  std::optional<double> delay_q90;
  double detected_fraction = 0.0;  // runs with >= 1 detection
};

DetectorConfig detector_config_of(const ExperimentSpec& spec);
GlrConfig glr_config_of(const ExperimentSpec& spec);

// Replicate i runs on seed base_seed + i; replicates execute concurrently and
// reports are returned in replicate order.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Detections for one externally supplied stream under the spec's detector.
std::vector<Detection> detect_stream(const std::vector<Vec>& stream,
                                     const ExperimentSpec& spec);

std::string config_comment(const ExperimentSpec& spec);

void write_metrics_csv(const std::string& path, const ExperimentSpec& spec,
                       const ExperimentResult& result);
void write_summary_csv(const std::string& path, const ExperimentSpec& spec,
                       const ExperimentResult& result);
void write_detections_csv(const std::string& path,
                          const std::vector<Detection>& detections,
                          const std::string& comment);

}  // namespace ocpd
