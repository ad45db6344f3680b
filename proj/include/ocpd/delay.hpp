#pragma once

#include <optional>
#include <vector>

#include "ocpd/conf_bound.hpp"

namespace ocpd {

// Inputs for the worst-case detection-delay bound: n pre-change samples, a
// mean jump of delta_jump, delay confidence delta_prime, and the detector's
// FPR budget fpr_delta.
struct DelayQuery {
  Index n = 2;
  double delta_jump = 1.0;
  double delta_prime = 0.1;
  double fpr_delta = 0.1;
  EstimatorConfig cfg;
  Index d_max = 1'000'000;
};

// Smallest d with
//   jump^2 >= B(n-1, d'/2) + B(d, d'/2)
//           + B(n-1, delta/(2(n+d+1)(n+d))) + B(d, delta/(2(n+d+1)(n+d))),
// scanning d = 1..d_max; nullopt when no d qualifies (the bound is vacuous).
std::optional<Index> delay_bound(const DelayQuery& q);

bool undetectable(const DelayQuery& q);

struct DelayHeatmap {
  std::vector<Index> n_grid;
  std::vector<double> jump_grid;
  // cells[i][j] = delay_bound at (n_grid[i], jump_grid[j]); nullopt = vacuous.
  std::vector<std::vector<std::optional<Index>>> cells;
};

DelayHeatmap delay_heatmap(const std::vector<Index>& n_grid,
                           const std::vector<double>& jump_grid,
                           const DelayQuery& query_template);

}  // namespace ocpd
