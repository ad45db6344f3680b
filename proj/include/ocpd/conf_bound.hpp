#pragma once

#include <optional>
#include <string>

#include "ocpd/vec.hpp"

namespace ocpd {

// Constant regime for the step-size offset gamma and the confidence-radius
// coefficients. Theoretical carries the provable constants; Empirical is the
// tuned set used by all experiment defaults.
enum class Regime { Theoretical, Empirical };

std::string to_string(Regime r);

// Euclidean projection onto the mean set. None means the whole space.
struct Projection {
  enum class Kind { None, Ball, Box };
  Kind kind = Kind::None;
  Vec center;
  double radius = 0.0;
  Vec lo, hi;

  static Projection none() { return {}; }
  static Projection ball(Vec center, double radius);
  static Projection box(Vec lo, Vec hi);

  void apply(Vec& x) const;
  bool is_none() const { return kind == Kind::None; }
};

// All scalar hyper-parameters governing estimation and thresholds.
// gamma is always derived from (regime, lambda, sigma); build through make()
// so the invariants (positivity, gamma > 2) hold by construction.
struct EstimatorConfig {
  double g_diam = 1.0;   // diameter of the mean set
  double sigma = 1.0;    // second-moment bound
  double lambda = 2.0;   // clipping level, default 2 * g_diam
  Regime regime = Regime::Empirical;
  double gamma = 16.0;   // step-size offset, derived
  int dim = 1;
  Projection projection;

  static EstimatorConfig make(double g_diam, double sigma, Regime regime, int dim,
                              std::optional<double> lambda_override = std::nullopt,
                              Projection projection = Projection::none());
};

// gamma = max(120*lambda*sigma*(sigma+1), 320*sigma^2 + 1)    (Theoretical)
//         max(  4*lambda*sigma*(sigma+1),   8*sigma^2 + 1)    (Empirical)
double gamma_of(Regime regime, double lambda, double sigma);

// eta_t = 2 / (t + gamma), t >= 1.
double step_size(Index t, double gamma);

// x * min(1, lam/||x||); the zero vector maps to itself.
Vec clip(Vec x, double lam);

// Leading constant C_t of the confidence radius, t >= 1, delta in (0,1).
double c_t(Index t, double delta, const EstimatorConfig& cfg);

// Anytime confidence radius (squared) for the clipped-SGD estimate after t
// steps, valid at every confidence level delta simultaneously.
// Returns +inf at t == 0 (no data, the log term degenerates).
double bound_b(Index t, double delta, const EstimatorConfig& cfg);

// Uniform-over-time radius for an empirical mean of sub-gaussian vectors:
// sqrt(2*lambda_max*(1+1/t)*ln((t+1)^d/delta)/t).  Used by the GLR baseline.
double subgaussian_radius(Index t, double delta, double lambda_max, int dim);

// One clipped-SGD chain: the estimate after consuming `steps` samples
// starting at global index `start`.
struct SgdChain {
  Index start = 0;
  Index steps = 0;
  Vec estimate;
};

SgdChain make_chain(Index start, const Vec& theta0, const EstimatorConfig& cfg);

// theta <- Pi(theta + eta_{steps+1} * clip(x - theta, lambda)); pure.
SgdChain update_step(SgdChain chain, const Vec& x, const EstimatorConfig& cfg);

}  // namespace ocpd
