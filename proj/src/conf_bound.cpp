#include "ocpd/conf_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ocpd {

std::string to_string(Regime r) {
  return r == Regime::Theoretical ? "theoretical" : "empirical";
}

Projection Projection::ball(Vec center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("projection ball: radius must be > 0");
  Projection p;
  p.kind = Kind::Ball;
  p.center = std::move(center);
  p.radius = radius;
  return p;
}

Projection Projection::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("projection box: lo/hi size mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw std::invalid_argument("projection box: lo > hi");
  Projection p;
  p.kind = Kind::Box;
  p.lo = std::move(lo);
  p.hi = std::move(hi);
  return p;
}

void Projection::apply(Vec& x) const {
  switch (kind) {
    case Kind::None:
      return;
    case Kind::Ball: {
      if (x.size() != center.size())
        throw std::invalid_argument("projection ball: dimension mismatch");
      double d2 = sq_dist(x, center);
      if (d2 <= radius * radius) return;
      const double scale = radius / std::sqrt(d2);
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = center[i] + scale * (x[i] - center[i]);
      return;
    }
    case Kind::Box: {
      if (x.size() != lo.size())
        throw std::invalid_argument("projection box: dimension mismatch");
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::clamp(x[i], lo[i], hi[i]);
      return;
    }
  }
}

EstimatorConfig EstimatorConfig::make(double g_diam, double sigma, Regime regime, int dim,
                                      std::optional<double> lambda_override,
                                      Projection projection) {
  if (g_diam <= 0.0) throw std::invalid_argument("estimator config: g_diam must be > 0");
  if (sigma <= 0.0) throw std::invalid_argument("estimator config: sigma must be > 0");
  if (dim < 1) throw std::invalid_argument("estimator config: dim must be >= 1");
  const double lambda = lambda_override.value_or(2.0 * g_diam);
  if (lambda <= 0.0) throw std::invalid_argument("estimator config: lambda must be > 0");
  const double gamma = gamma_of(regime, lambda, sigma);
  if (gamma <= 2.0)
    throw std::invalid_argument(
        "estimator config: derived gamma <= 2; increase lambda or sigma");
  EstimatorConfig cfg;
  cfg.g_diam = g_diam;
  cfg.sigma = sigma;
  cfg.lambda = lambda;
  cfg.regime = regime;
  cfg.gamma = gamma;
  cfg.dim = dim;
  cfg.projection = std::move(projection);
  return cfg;
}

double gamma_of(Regime regime, double lambda, double sigma) {
  if (regime == Regime::Theoretical)
    return std::max(120.0 * lambda * sigma * (sigma + 1.0), 320.0 * sigma * sigma + 1.0);
  return std::max(4.0 * lambda * sigma * (sigma + 1.0), 8.0 * sigma * sigma + 1.0);
}

double step_size(Index t, double gamma) { return 2.0 / (static_cast<double>(t) + gamma); }

Vec clip(Vec x, double lam) {
  const double n = norm2(x);
  if (n <= lam) return x;  // covers the zero vector
  const double scale = lam / n;
  for (double& v : x) v *= scale;
  return x;
}

namespace {

// ln(2 t^2 (t+1) / delta), in floating point to keep large t safe.
double log_term(Index t, double delta) {
  const double td = static_cast<double>(t);
  return std::log(2.0 * td * td * (td + 1.0) / delta);
}

}  // namespace

double c_t(Index t, double delta, const EstimatorConfig& cfg) {
  const double L = log_term(t, delta);
  const double g2 = cfg.g_diam * cfg.g_diam;
  const double l2 = cfg.lambda * cfg.lambda;
  const double s4 = cfg.sigma * cfg.sigma * cfg.sigma * cfg.sigma;
  const double gamma2 = cfg.gamma * cfg.gamma;
  if (cfg.regime == Regime::Theoretical)
    return std::max(1024.0 * s4 / (g2 * l2), 8.0 * cfg.lambda * std::sqrt(L) / (gamma2 * cfg.g_diam));
  return std::max(0.5 * s4 / (g2 * l2), cfg.lambda * std::sqrt(L) / (gamma2 * cfg.g_diam));
}

double bound_b(Index t, double delta, const EstimatorConfig& cfg) {
  if (t <= 0) return std::numeric_limits<double>::infinity();
  const double td = static_cast<double>(t);
  const double L = log_term(t, delta);
  const double C = c_t(t, delta, cfg);
  const double s2 = cfg.sigma * cfg.sigma;
  const double gamma2g2 = cfg.gamma * cfg.gamma * cfg.g_diam * cfg.g_diam;
  const double l2 = cfg.lambda * cfg.lambda;
  const double ss1 = cfg.sigma * (cfg.sigma + 1.0);
  if (cfg.regime == Regime::Theoretical) {
    return C * (gamma2g2 / ((td + 1.0) * (td + 1.0)) +
                (16.0 * s2 / cfg.lambda + 4.0 * s2) / (2.0 * (td + 1.0)) +
                96.0 * l2 * L * ss1 / ((td + cfg.gamma) * std::sqrt(td + 1.0)));
  }
  return C * (gamma2g2 / (td + 1.0) +
              (2.0 * s2 / cfg.lambda + s2) / (2.0 * (td + 1.0)) +
              2.0 * l2 * L * ss1 / ((td + cfg.gamma) * std::sqrt(td + 1.0)));
}

double subgaussian_radius(Index t, double delta, double lambda_max, int dim) {
  if (t < 1) throw std::invalid_argument("subgaussian_radius: t must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("subgaussian_radius: delta must be in (0,1)");
  const double td = static_cast<double>(t);
  // d*ln(t+1) - ln(delta), written out so (t+1)^d never overflows.
  const double L = static_cast<double>(dim) * std::log(td + 1.0) - std::log(delta);
  return std::sqrt(2.0 * lambda_max * (1.0 + 1.0 / td) * L / td);
}

SgdChain make_chain(Index start, const Vec& theta0, const EstimatorConfig& cfg) {
  SgdChain c;
  c.start = start;
  c.steps = 0;
  if (theta0.empty()) {
    c.estimate.assign(static_cast<std::size_t>(cfg.dim), 0.0);
  } else {
    if (static_cast<int>(theta0.size()) != cfg.dim)
      throw std::invalid_argument("make_chain: theta0 dimension mismatch");
    c.estimate = theta0;
  }
  cfg.projection.apply(c.estimate);
  return c;
}

SgdChain update_step(SgdChain chain, const Vec& x, const EstimatorConfig& cfg) {
  if (static_cast<int>(x.size()) != cfg.dim ||
      static_cast<int>(chain.estimate.size()) != cfg.dim)
    throw std::invalid_argument("update_step: dimension mismatch");
  const double eta = step_size(chain.steps + 1, cfg.gamma);
  Vec innov(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) innov[i] = x[i] - chain.estimate[i];
  innov = clip(std::move(innov), cfg.lambda);
  for (std::size_t i = 0; i < x.size(); ++i) chain.estimate[i] += eta * innov[i];
  cfg.projection.apply(chain.estimate);
  chain.steps += 1;
  return chain;
}

}  // namespace ocpd
