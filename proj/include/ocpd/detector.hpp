#pragma once

#include <deque>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ocpd/conf_bound.hpp"

namespace ocpd {

inline constexpr Index kUnbounded = std::numeric_limits<Index>::max();

struct DetectorConfig {
  EstimatorConfig est;
  double delta = 0.1;           // FPR budget
  Index max_window = kUnbounded;  // cap on retained chains/snapshots per segment
};

struct Detection {
  Index time = 0;           // global step at which the test fired
  Index segment_start = 0;  // anchor r at firing
  Index witness_split = 0;  // smallest violating split
  std::optional<std::pair<Index, Index>> localization;  // [min s, max s]
};

// B(n1, delta') + B(n2, delta') with delta' = delta / (2*span*(span+1));
// +inf whenever n1 or n2 is zero.
double split_threshold(Index n1, Index n2, Index span, double delta,
                       const EstimatorConfig& cfg);

// Streaming change detector over clipped-SGD chains. One chain per candidate
// start since the last restart; every step the split test compares the
// anchor chain's snapshot through X_s against the chain started at s+1.
// Single-writer: step() must be called sequentially per stream.
class Detector {
 public:
  explicit Detector(DetectorConfig cfg, Vec theta0 = {});

  // Consume one sample. Returns the detection when the split test fires (the
  // state restarts past it), nullopt otherwise.
  std::optional<Detection> step(const Vec& x);

  Index anchor() const { return r_; }
  Index time() const { return t_; }
  Index num_detections() const { return num_detections_; }
  bool window_truncated() const { return window_truncated_; }

  // Test indicator for one split r_ < s < t_; false (and the truncation flag
  // is set) when the cap evicted the required chain or snapshot.
  bool split_indicator(Index s);

  // Chain that has consumed X_s..X_t, or nullptr if s is out of range /
  // evicted. The anchor chain is start == anchor().
  const SgdChain* chain_for_start(Index s) const;

  // Anchor-chain estimate after consuming X_r..X_s.
  const Vec* anchor_snapshot(Index s) const;

  const DetectorConfig& config() const { return cfg_; }

 private:
  DetectorConfig cfg_;
  Vec theta0_;
  Index r_ = 1;
  Index t_ = 0;
  Index num_detections_ = 0;
  bool window_truncated_ = false;

  SgdChain anchor_chain_;             // start r_, kept for snapshot growth
  std::deque<Vec> anchor_snapshots_;  // estimates through X_r..X_s, s = snap_lo_..t_
  Index snap_lo_ = 1;
  std::deque<SgdChain> tail_chains_;  // starts tail_lo_..t_ (all > r_)
  Index tail_lo_ = 2;

  void restart();
  void enforce_window();
};

std::vector<Detection> run(const std::vector<Vec>& stream, const DetectorConfig& cfg,
                           const Vec& theta0 = {});

}  // namespace ocpd
