#include "ocpd/detector.hpp"

#include <cmath>
#include <stdexcept>

namespace ocpd {

double split_threshold(Index n1, Index n2, Index span, double delta,
                       const EstimatorConfig& cfg) {
  if (span < 1) throw std::invalid_argument("split_threshold: span must be >= 1");
  const double per_test =
      delta / (2.0 * static_cast<double>(span) * (static_cast<double>(span) + 1.0));
  return bound_b(n1, per_test, cfg) + bound_b(n2, per_test, cfg);
}

Detector::Detector(DetectorConfig cfg, Vec theta0)
    : cfg_(std::move(cfg)), theta0_(std::move(theta0)) {
  if (!(cfg_.delta > 0.0 && cfg_.delta < 1.0))
    throw std::invalid_argument("detector: delta must be in (0,1)");
  if (cfg_.max_window < 1) throw std::invalid_argument("detector: max_window must be >= 1");
  if (!theta0_.empty() && static_cast<int>(theta0_.size()) != cfg_.est.dim)
    throw std::invalid_argument("detector: theta0 dimension mismatch");
}

void Detector::restart() {
  r_ = t_ + 1;
  anchor_chain_ = SgdChain{};
  anchor_snapshots_.clear();
  snap_lo_ = r_;
  tail_chains_.clear();
  tail_lo_ = r_ + 1;
}

void Detector::enforce_window() {
  if (cfg_.max_window == kUnbounded) return;
  const Index keep_from = t_ - cfg_.max_window + 1;
  while (!anchor_snapshots_.empty() && snap_lo_ < keep_from) {
    anchor_snapshots_.pop_front();
    ++snap_lo_;
  }
  while (!tail_chains_.empty() && tail_lo_ < keep_from) {
    tail_chains_.pop_front();
    ++tail_lo_;
  }
}

std::optional<Detection> Detector::step(const Vec& x) {
  if (static_cast<int>(x.size()) != cfg_.est.dim)
    throw std::invalid_argument("detector: sample dimension mismatch");
  ++t_;
  if (t_ == r_) {
    anchor_chain_ = make_chain(r_, theta0_, cfg_.est);
    anchor_chain_ = update_step(std::move(anchor_chain_), x, cfg_.est);
    anchor_snapshots_.clear();
    anchor_snapshots_.push_back(anchor_chain_.estimate);
    snap_lo_ = r_;
    tail_chains_.clear();
    tail_lo_ = r_ + 1;
    return std::nullopt;
  }

  anchor_chain_ = update_step(std::move(anchor_chain_), x, cfg_.est);
  anchor_snapshots_.push_back(anchor_chain_.estimate);
  for (SgdChain& chain : tail_chains_) chain = update_step(std::move(chain), x, cfg_.est);
  {
    SgdChain fresh = make_chain(t_, theta0_, cfg_.est);
    tail_chains_.push_back(update_step(std::move(fresh), x, cfg_.est));
  }
  enforce_window();

  // Scan splits s in increasing order, collecting every violation; the
  // earliest valid split needs s-r >= 1 and t-s-1 >= 1.
  const Index span = t_ - r_;
  if (span < 3) return std::nullopt;
  const double per_test =
      cfg_.delta / (2.0 * static_cast<double>(span) * (static_cast<double>(span) + 1.0));
  // Both test sides draw from the same set of bound values; precompute them.
  std::vector<double> bounds(static_cast<std::size_t>(span - 1));
  for (Index n = 1; n <= span - 2; ++n)
    bounds[static_cast<std::size_t>(n)] = bound_b(n, per_test, cfg_.est);

  Index first_violating = -1, last_violating = -1;
  for (Index s = r_ + 1; s <= t_ - 2; ++s) {
    const Vec* left = anchor_snapshot(s);
    const SgdChain* right = chain_for_start(s + 1);
    if (left == nullptr || right == nullptr) {
      window_truncated_ = true;
      continue;
    }
    const double threshold = bounds[static_cast<std::size_t>(s - r_)] +
                             bounds[static_cast<std::size_t>(t_ - s - 1)];
    if (sq_dist(*left, right->estimate) > threshold) {
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

bool Detector::split_indicator(Index s) {
  if (t_ < r_ || s <= r_ || s >= t_) return false;
  const Vec* left = anchor_snapshot(s);
  const SgdChain* right = chain_for_start(s + 1);
  if (left == nullptr || right == nullptr) {
    window_truncated_ = true;
    return false;
  }
  const double threshold = split_threshold(s - r_, t_ - s - 1, t_ - r_, cfg_.delta, cfg_.est);
  return sq_dist(*left, right->estimate) > threshold;
}

const SgdChain* Detector::chain_for_start(Index s) const {
  if (t_ < r_ || s < r_ || s > t_) return nullptr;
  if (s == r_) return &anchor_chain_;
  if (s < tail_lo_) return nullptr;
  return &tail_chains_[static_cast<std::size_t>(s - tail_lo_)];
}

const Vec* Detector::anchor_snapshot(Index s) const {
  if (s < snap_lo_ || s > t_) return nullptr;
  return &anchor_snapshots_[static_cast<std::size_t>(s - snap_lo_)];
}

std::vector<Detection> run(const std::vector<Vec>& stream, const DetectorConfig& cfg,
                           const Vec& theta0) {
  Detector detector(cfg, theta0);
  std::vector<Detection> detections;
  for (const Vec& x : stream) {
    if (auto det = detector.step(x)) detections.push_back(*det);
  }
  return detections;
}

}  // namespace ocpd
