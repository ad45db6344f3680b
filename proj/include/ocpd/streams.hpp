#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ocpd/metrics.hpp"
#include "ocpd/vec.hpp"

namespace ocpd {

enum class Family { Gaussian, Pareto, Bernoulli };

std::string to_string(Family f);

struct Segment {
  Index length = 0;
  Vec mean;
};

// Piecewise-constant-mean process description. For dim == 1 the Pareto
// family is a mean-centered one-sided Pareto; for dim >= 2 it is an
// isotropic vector with Pareto-distributed norm.
struct Scenario {
  int dim = 1;
  Family family = Family::Gaussian;
  std::vector<Segment> segments;
  double sigma_target = 1.0;  // second-moment budget per sample
  double shape = 2.01;        // Pareto shape
};

void validate_scenario(const Scenario& sc);
Index scenario_horizon(const Scenario& sc);
GroundTruth ground_truth_of(const Scenario& sc);

// Seeded generator: mt19937_64 with explicit transforms, so identical seeds
// give identical streams independent of the standard library's distribution
// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // N(0,1) via Box-Muller (no state carried between calls).
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Pareto(shape, scale) by inverse CDF; support [scale, inf).
  double pareto(double shape, double scale) {
    const double u = 1.0 - uniform();  // (0, 1]
    return scale * std::pow(u, -1.0 / shape);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform direction on the unit sphere.
  Vec unit_sphere(int dim);

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  std::mt19937_64 eng_;
};

// Scale x_m with Var(Pareto(shape, x_m)) = target_var; requires shape > 2.
double pareto_scale_for_variance(double shape, double target_var);

std::vector<Vec> gen_univariate(const Scenario& sc, Rng& rng);
std::vector<Vec> gen_multivariate(const Scenario& sc, Rng& rng);
std::vector<Vec> generate(const Scenario& sc, std::uint64_t seed);

// The named synthetic scenarios: Pareto/Gaussian x d in {1,32} x jump in
// {0.5,1}, four segments of 400 each, plus two Bernoulli variants.
std::map<std::string, Scenario> scenario_catalog();

inline constexpr double kWellLogDivisor = 31622.77660168379332;  // 10^4.5

// Plain text, one measurement per line; values are divided by `divisor`.
// Blank lines are skipped; anything non-numeric or non-finite is an error
// naming the offending line.
std::vector<Vec> load_well_log(const std::string& path,
                               double divisor = kWellLogDivisor);

}  // namespace ocpd
