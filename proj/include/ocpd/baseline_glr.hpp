#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "ocpd/detector.hpp"

namespace ocpd {

// GLR-style baseline: empirical means per split side, fired against the
// sub-gaussian uniform-over-time radius. A comparison harness, not a faithful
// reimplementation of the published Improved-GLR.
struct GlrConfig {
  double lambda_max = 1.0;  // largest covariance eigenvalue proxy
  int dim = 1;
  double delta = 0.1;
  Index max_window = kUnbounded;
  // Each split test runs at delta / (2*span*(span+1)), mirroring the clipped
  // detector's allocation so the two are comparable. Turning this off spends
  // delta per test, which fires earlier at the cost of false positives.
  bool allocate_over_span = true;
};

class GlrDetector {
 public:
  explicit GlrDetector(GlrConfig cfg);

  std::optional<Detection> step(const Vec& x);

  Index anchor() const { return r_; }
  Index time() const { return t_; }
  Index num_detections() const { return num_detections_; }
  bool window_truncated() const { return window_truncated_; }

  // Empirical mean over global indices [a, b] within the current segment.
  std::optional<Vec> mean_over(Index a, Index b) const;

 private:
  GlrConfig cfg_;
  Index r_ = 1;
  Index t_ = 0;
  Index num_detections_ = 0;
  bool window_truncated_ = false;
  // prefix_[i] = sum of the first (pbase_ + i) post-restart samples; entries
  // are dropped from the front under max_window.
  std::deque<Vec> prefix_;
  Index pbase_ = 0;

  void restart();
};

std::vector<Detection> run_glr(const std::vector<Vec>& stream, const GlrConfig& cfg);

}  // namespace ocpd
