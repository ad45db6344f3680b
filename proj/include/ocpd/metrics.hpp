#pragma once

#include <optional>
#include <vector>

#include "ocpd/vec.hpp"

namespace ocpd {

// Ground truth for one stream: horizon T and the change points, where a
// change point is the first 1-based index carrying the new mean.
struct GroundTruth {
  Index horizon = 0;
  std::vector<Index> change_points;  // strictly increasing, in (1, horizon]
};

// Per-replicate outcome with derived metric terms.
struct RunReport {
  std::uint64_t seed = 0;
  std::vector<Index> detections;                 // sorted detection times
  std::vector<bool> false_flags;                 // one per detection
  std::vector<std::optional<Index>> delays;      // one per true change
  Index regret = 0;
};

// Flag r is true iff no true change lies in (t_{r-1}, t_r], with t_0 = 0.
std::vector<bool> false_positive_flags(const std::vector<Index>& detections,
                                       const GroundTruth& truth);

// Mean over runs of (#false / #detections), counting zero for runs with no
// detections.
double fpr(const std::vector<RunReport>& reports);

// First detection strictly after change_at, minus change_at.
std::optional<Index> single_change_delay(const std::vector<Index>& detections,
                                         Index change_at);

// Sum over t = 1..T of |#detections <= t  -  #true changes <= t|.
Index regret(const std::vector<Index>& detections, const GroundTruth& truth);

struct Quantiles {
  double median = 0.0;
  double q05 = 0.0;
  double q95 = 0.0;
};

// Nearest-rank percentile: p in (0,1] maps to sorted[ceil(p*N)].
double quantile_nearest_rank(std::vector<double> values, double p);
Quantiles aggregate(std::vector<double> values);

RunReport make_report(std::uint64_t seed, std::vector<Index> detections,
                      const GroundTruth& truth);

}  // namespace ocpd
