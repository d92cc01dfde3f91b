#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "circfuse/t2t/track.hpp"

namespace circfuse::t2t {

/// Log-likelihood association distance
///   d = D^T S^-1 D + ln det S,   S = P_a + P_b
/// over the position block, extended by a heading row/column when
/// `use_heading` is set (D_theta = shortest-arc difference, variance
/// sigma_a^2 + sigma_b^2 on the variance scale).
/// Throws DegenerateCovarianceError when S is not positive definite.
double association_distance(const TrackState& a, const TrackState& b, bool use_heading = false);

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (row, col), sorted by row
  std::vector<std::size_t> unmatched_rows;
  std::vector<std::size_t> unmatched_cols;
  double matched_cost = 0.0;  // sum of matched costs, in row order
  /// matched_cost + gate/2 per unmatched row and per unmatched column.
  double objective = 0.0;
};

/// Global nearest neighbour: jointly optimal one-to-one assignment.
///
/// A pair is admissible when its cost is finite and <= gate. Leaving a row
/// or a column unassigned costs gate/2, so a pair is matched only when that
/// lowers the total; the solution minimises `objective` over all partial
/// matchings of admissible pairs. Costs may be negative. `gate` must be
/// finite and positive.
Assignment gnn_associate(const Eigen::MatrixXd& cost, double gate);

/// Evaluates `objective` for a given matching; used by tests and oracles.
double assignment_objective(const Eigen::MatrixXd& cost, double gate,
                            const std::vector<std::pair<std::size_t, std::size_t>>& matches);

}  // namespace circfuse::t2t
