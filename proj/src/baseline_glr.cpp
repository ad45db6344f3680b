#include "ocpd/baseline_glr.hpp"

#include <cmath>
#include <stdexcept>

namespace ocpd {

GlrDetector::GlrDetector(GlrConfig cfg) : cfg_(cfg) {
  if (cfg_.lambda_max <= 0.0) throw std::invalid_argument("glr: lambda_max must be > 0");
  if (cfg_.dim < 1) throw std::invalid_argument("glr: dim must be >= 1");
  if (!(cfg_.delta > 0.0 && cfg_.delta < 1.0))
    throw std::invalid_argument("glr: delta must be in (0,1)");
  if (cfg_.max_window < 1) throw std::invalid_argument("glr: max_window must be >= 1");
  prefix_.push_back(Vec(static_cast<std::size_t>(cfg_.dim), 0.0));
}

void GlrDetector::restart() {
  r_ = t_ + 1;
  prefix_.clear();
  prefix_.push_back(Vec(static_cast<std::size_t>(cfg_.dim), 0.0));
  pbase_ = 0;
}

std::optional<Vec> GlrDetector::mean_over(Index a, Index b) const {
  if (a < r_ || b > t_ || a > b) return std::nullopt;
  const Index ja = a - r_;      // prefix index just before a
  const Index jb = b - r_ + 1;  // prefix index through b
  if (ja < pbase_) return std::nullopt;
  const Vec& lo = prefix_[static_cast<std::size_t>(ja - pbase_)];
  const Vec& hi = prefix_[static_cast<std::size_t>(jb - pbase_)];
  Vec mean(lo.size());
  const double count = static_cast<double>(b - a + 1);
  for (std::size_t i = 0; i < mean.size(); ++i) mean[i] = (hi[i] - lo[i]) / count;
  return mean;
}

std::optional<Detection> GlrDetector::step(const Vec& x) {
  if (static_cast<int>(x.size()) != cfg_.dim)
    throw std::invalid_argument("glr: sample dimension mismatch");
  ++t_;
  Vec next = prefix_.back();
  for (std::size_t i = 0; i < next.size(); ++i) next[i] += x[i];
  prefix_.push_back(std::move(next));
  if (cfg_.max_window != kUnbounded) {
    const Index samples = t_ - r_ + 1;
    while (pbase_ < samples - cfg_.max_window) {
      prefix_.pop_front();
      ++pbase_;
    }
  }

  const Index span = t_ - r_;
  if (span < 2) return std::nullopt;
  const double delta_eff =
      cfg_.allocate_over_span
          ? cfg_.delta / (2.0 * static_cast<double>(span) * (static_cast<double>(span) + 1.0))
          : cfg_.delta;
  std::vector<double> radius(static_cast<std::size_t>(span + 1));
  for (Index n = 1; n <= span; ++n)
    radius[static_cast<std::size_t>(n)] =
        subgaussian_radius(n, delta_eff, cfg_.lambda_max, cfg_.dim);

  Index first_violating = -1, last_violating = -1;
  for (Index s = r_ + 1; s <= t_ - 1; ++s) {
    const auto left = mean_over(r_, s);
    const auto right = mean_over(s + 1, t_);
    if (!left || !right) {
      window_truncated_ = true;
      continue;
    }
    const double threshold = radius[static_cast<std::size_t>(s - r_ + 1)] +
                             radius[static_cast<std::size_t>(t_ - s)];
    if (std::sqrt(sq_dist(*left, *right)) > threshold) {
      if (first_violating < 0) first_violating = s;
      last_violating = s;
    }
  }
  if (first_violating < 0) return std::nullopt;

  Detection det;
  det.time = t_;
  det.segment_start = r_;
  det.witness_split = first_violating;
  det.localization = std::make_pair(first_violating, last_violating);
  ++num_detections_;
  restart();
  return det;
}

std::vector<Detection> run_glr(const std::vector<Vec>& stream, const GlrConfig& cfg) {
  GlrDetector detector(cfg);
  std::vector<Detection> detections;
  for (const Vec& x : stream) {
    if (auto det = detector.step(x)) detections.push_back(*det);
  }
  return detections;
}

}  // namespace ocpd
