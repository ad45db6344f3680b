#include "ocpd/streams.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ocpd {

std::string to_string(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::Pareto: return "pareto";
    case Family::Bernoulli: return "bernoulli";
  }
  return "?";
}

void validate_scenario(const Scenario& sc) {
  if (sc.dim < 1) throw std::invalid_argument("scenario: dim must be >= 1");
  if (sc.sigma_target <= 0.0) throw std::invalid_argument("scenario: sigma_target must be > 0");
  if (sc.segments.empty()) throw std::invalid_argument("scenario: no segments");
  if (sc.family == Family::Pareto && sc.shape <= 2.0)
    throw std::invalid_argument("scenario: pareto shape must be > 2 (finite variance)");
  if (sc.family == Family::Bernoulli && sc.dim != 1)
    throw std::invalid_argument("scenario: bernoulli requires dim == 1");
  for (std::size_t i = 0; i < sc.segments.size(); ++i) {
    const Segment& seg = sc.segments[i];
    if (seg.length <= 0) throw std::invalid_argument("scenario: segment length must be > 0");
    if (static_cast<int>(seg.mean.size()) != sc.dim)
      throw std::invalid_argument("scenario: segment mean dimension mismatch");
    if (sc.family == Family::Bernoulli &&
        (seg.mean[0] <= 0.0 || seg.mean[0] >= 1.0))
      throw std::invalid_argument("scenario: bernoulli mean must lie in (0,1)");
    if (i > 0 && seg.mean == sc.segments[i - 1].mean)
      throw std::invalid_argument("scenario: consecutive segment means must differ");
  }
}

Index scenario_horizon(const Scenario& sc) {
  Index total = 0;
  for (const Segment& seg : sc.segments) total += seg.length;
  return total;
}

GroundTruth ground_truth_of(const Scenario& sc) {
  GroundTruth truth;
  truth.horizon = scenario_horizon(sc);
  Index pos = 0;
  for (std::size_t i = 0; i + 1 < sc.segments.size(); ++i) {
    pos += sc.segments[i].length;
    truth.change_points.push_back(pos + 1);  // first index with the new mean
  }
  return truth;
}

Vec Rng::unit_sphere(int dim) {
  Vec u(static_cast<std::size_t>(dim));
  while (true) {
    for (double& v : u) v = gaussian();
    const double n = norm2(u);
    if (n > 0.0) {
      for (double& v : u) v /= n;
      return u;
    }
  }
}

double pareto_scale_for_variance(double shape, double target_var) {
  if (shape <= 2.0)
    throw std::invalid_argument("pareto scale: shape must be > 2 (finite variance)");
  if (target_var <= 0.0)
    throw std::invalid_argument("pareto scale: target variance must be > 0");
  return (shape - 1.0) * std::sqrt(target_var * (shape - 2.0) / shape);
}

std::vector<Vec> gen_univariate(const Scenario& sc, Rng& rng) {
  validate_scenario(sc);
  if (sc.dim != 1) throw std::invalid_argument("gen_univariate: dim must be 1");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(scenario_horizon(sc)));
  const double sigma = sc.sigma_target;
  double xm = 0.0, pareto_mean = 0.0;
  if (sc.family == Family::Pareto) {
    xm = pareto_scale_for_variance(sc.shape, sc.sigma_target * sc.sigma_target);
    pareto_mean = sc.shape * xm / (sc.shape - 1.0);
  }
  for (const Segment& seg : sc.segments) {
    for (Index i = 0; i < seg.length; ++i) {
      double x = 0.0;
      switch (sc.family) {
        case Family::Gaussian:
          x = seg.mean[0] + sigma * rng.gaussian();
          break;
        case Family::Pareto:
          x = seg.mean[0] + (rng.pareto(sc.shape, xm) - pareto_mean);
          break;
        case Family::Bernoulli:
          x = rng.bernoulli(seg.mean[0]) ? 1.0 : 0.0;
          break;
      }
      out.push_back(Vec{x});
    }
  }
  return out;
}

std::vector<Vec> gen_multivariate(const Scenario& sc, Rng& rng) {
  validate_scenario(sc);
  if (sc.dim < 2) throw std::invalid_argument("gen_multivariate: dim must be >= 2");
  if (sc.family == Family::Bernoulli)
    throw std::invalid_argument("gen_multivariate: bernoulli is univariate only");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(scenario_horizon(sc)));
  // Per-axis std for Gaussian so E||X - mean||^2 = sigma_target^2; radial
  // Pareto scale so E[R^2] = sigma_target^2.
  const double axis_sd = sc.sigma_target / std::sqrt(static_cast<double>(sc.dim));
  const double radial_scale =
      std::sqrt(sc.sigma_target * sc.sigma_target * (sc.shape - 2.0) / sc.shape);
  for (const Segment& seg : sc.segments) {
    for (Index i = 0; i < seg.length; ++i) {
      Vec x = seg.mean;
      if (sc.family == Family::Gaussian) {
        for (double& v : x) v += axis_sd * rng.gaussian();
      } else {
        const double radius = rng.pareto(sc.shape, radial_scale);
        const Vec dir = rng.unit_sphere(sc.dim);
        for (int k = 0; k < sc.dim; ++k) x[static_cast<std::size_t>(k)] += radius * dir[static_cast<std::size_t>(k)];
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<Vec> generate(const Scenario& sc, std::uint64_t seed) {
  Rng rng(seed);
  return sc.dim == 1 ? gen_univariate(sc, rng) : gen_multivariate(sc, rng);
}

namespace {

Scenario four_segment(Family family, int dim, double jump) {
  Scenario sc;
  sc.dim = dim;
  sc.family = family;
  Vec base(static_cast<std::size_t>(dim), 0.0);
  Vec shifted(static_cast<std::size_t>(dim),
              jump / std::sqrt(static_cast<double>(dim)));
  if (dim == 1) shifted[0] = jump;
  sc.segments = {{400, base}, {400, shifted}, {400, base}, {400, shifted}};
  return sc;
}

Scenario bernoulli_pair(double hi, double lo) {
  Scenario sc;
  sc.dim = 1;
  sc.family = Family::Bernoulli;
  sc.segments = {{400, {hi}}, {400, {lo}}, {400, {hi}}, {400, {lo}}};
  return sc;
}

}  // namespace

std::map<std::string, Scenario> scenario_catalog() {
  std::map<std::string, Scenario> cat;
  for (double jump : {0.5, 1.0}) {
    const std::string suffix = jump == 0.5 ? "D05" : "D1";
    cat["pareto-d1-" + suffix] = four_segment(Family::Pareto, 1, jump);
    cat["pareto-d32-" + suffix] = four_segment(Family::Pareto, 32, jump);
    cat["gauss-d1-" + suffix] = four_segment(Family::Gaussian, 1, jump);
    cat["gauss-d32-" + suffix] = four_segment(Family::Gaussian, 32, jump);
  }
  cat["bern-a"] = bernoulli_pair(0.7, 0.3);
  cat["bern-b"] = bernoulli_pair(0.85, 0.15);
  return cat;
}

std::vector<Vec> load_well_log(const std::string& path, double divisor) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("well-log: cannot open " + path);
  std::vector<Vec> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;  // blank line
    std::size_t end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    double value = 0.0;
    std::size_t consumed = 0;
    try {
      value = std::stod(token, &consumed);
    } catch (const std::exception&) {
      throw std::runtime_error("well-log: parse error at line " + std::to_string(lineno));
    }
    if (consumed != token.size())
      throw std::runtime_error("well-log: parse error at line " + std::to_string(lineno));
    if (!std::isfinite(value))
      throw std::runtime_error("well-log: non-finite value at line " + std::to_string(lineno));
    out.push_back(Vec{value / divisor});
  }
  if (out.empty()) throw std::runtime_error("well-log: empty file " + path);
  return out;
}

}  // namespace ocpd
