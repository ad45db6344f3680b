#include "ocpd/delay.hpp"

#include <stdexcept>

namespace ocpd {

std::optional<Index> delay_bound(const DelayQuery& q) {
  if (q.n < 2) throw std::invalid_argument("delay_bound: n must be >= 2");
  if (q.delta_jump <= 0.0) throw std::invalid_argument("delay_bound: jump must be > 0");
  if (!(q.delta_prime > 0.0 && q.delta_prime < 1.0))
    throw std::invalid_argument("delay_bound: delta_prime must be in (0,1)");
  if (!(q.fpr_delta > 0.0 && q.fpr_delta < 1.0))
    throw std::invalid_argument("delay_bound: fpr_delta must be in (0,1)");
  if (q.d_max < 1) throw std::invalid_argument("delay_bound: d_max must be >= 1");

  const double jump_sq = q.delta_jump * q.delta_jump;
  const double pre_fixed = bound_b(q.n - 1, q.delta_prime / 2.0, q.cfg);
  // The linear scan gives the exact infimum (the predicate is not monotone in
  // d for small d). Once jump^2 falls below the two d-independent pre-change
  // terms — which only grow with d, since their allocation shrinks — no larger
  // d can qualify and the scan stops early.
  for (Index d = 1; d <= q.d_max; ++d) {
    const double nd = static_cast<double>(q.n + d);
    const double alloc = q.fpr_delta / (2.0 * (nd + 1.0) * nd);
    const double pre_alloc = bound_b(q.n - 1, alloc, q.cfg);
    if (jump_sq < pre_fixed + pre_alloc) return std::nullopt;
    const double rhs = pre_fixed + bound_b(d, q.delta_prime / 2.0, q.cfg) + pre_alloc +
                       bound_b(d, alloc, q.cfg);
    if (jump_sq >= rhs) return d;
  }
  return std::nullopt;
}

bool undetectable(const DelayQuery& q) { return !delay_bound(q).has_value(); }

DelayHeatmap delay_heatmap(const std::vector<Index>& n_grid,
                           const std::vector<double>& jump_grid,
                           const DelayQuery& query_template) {
  if (n_grid.empty() || jump_grid.empty())
    throw std::invalid_argument("delay_heatmap: grids must be nonempty");
  DelayHeatmap map;
  map.n_grid = n_grid;
  map.jump_grid = jump_grid;
  map.cells.resize(n_grid.size());
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    map.cells[i].resize(jump_grid.size());
    for (std::size_t j = 0; j < jump_grid.size(); ++j) {
      DelayQuery q = query_template;
      q.n = n_grid[i];
      q.delta_jump = jump_grid[j];
      map.cells[i][j] = delay_bound(q);
    }
  }
  return map;
}

}  // namespace ocpd
