#include "ocpd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ocpd {

std::vector<bool> false_positive_flags(const std::vector<Index>& detections,
                                       const GroundTruth& truth) {
  if (!std::is_sorted(detections.begin(), detections.end()))
    throw std::invalid_argument("false_positive_flags: detections must be sorted");
  std::vector<bool> flags;
  flags.reserve(detections.size());
  Index prev = 0;
  for (Index det : detections) {
    bool covered = false;
    for (Index tau : truth.change_points) {
      if (tau > prev && tau <= det) {
        covered = true;
        break;
      }
    }
    flags.push_back(!covered);
    prev = det;
  }
  return flags;
}

double fpr(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("fpr: empty report set");
  double total = 0.0;
  for (const RunReport& rep : reports) {
    if (rep.detections.empty()) continue;  // indicator contributes zero
    std::size_t num_false = 0;
    for (bool f : rep.false_flags) num_false += f ? 1 : 0;
    total += static_cast<double>(num_false) / static_cast<double>(rep.detections.size());
  }
  return total / static_cast<double>(reports.size());
}

std::optional<Index> single_change_delay(const std::vector<Index>& detections,
                                         Index change_at) {
  for (Index det : detections)
    if (det > change_at) return det - change_at;
  return std::nullopt;
}

Index regret(const std::vector<Index>& detections, const GroundTruth& truth) {
  Index total = 0;
  std::size_t di = 0, ci = 0;
  Index det_count = 0, change_count = 0;
  for (Index t = 1; t <= truth.horizon; ++t) {
    while (di < detections.size() && detections[di] <= t) {
      ++det_count;
      ++di;
    }
    while (ci < truth.change_points.size() && truth.change_points[ci] <= t) {
      ++change_count;
      ++ci;
    }
    total += std::llabs(det_count - change_count);
  }
  return total;
}

double quantile_nearest_rank(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must be in (0,1]");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return values[rank - 1];
}

Quantiles aggregate(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate: empty input");
  std::sort(values.begin(), values.end());
  auto pick = [&](double p) {
    const std::size_t n = values.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return values[rank - 1];
  };
  return Quantiles{pick(0.5), pick(0.05), pick(0.95)};
}

RunReport make_report(std::uint64_t seed, std::vector<Index> detections,
                      const GroundTruth& truth) {
  RunReport rep;
  rep.seed = seed;
  rep.detections = std::move(detections);
  rep.false_flags = false_positive_flags(rep.detections, truth);
  rep.delays.reserve(truth.change_points.size());
  for (Index tau : truth.change_points)
    rep.delays.push_back(single_change_delay(rep.detections, tau));
  rep.regret = regret(rep.detections, truth);
  return rep;
}

}  // namespace ocpd
