#include "circfuse/t2t/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "circfuse/errors.hpp"

namespace circfuse::t2t {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <int N>
double log_likelihood_distance(const Eigen::Matrix<double, N, 1>& delta,
                               const Eigen::Matrix<double, N, N>& s) {
  if (!s.allFinite()) {
    throw DegenerateCovarianceError("association_distance: non-finite innovation covariance");
  }
  const Eigen::LLT<Eigen::Matrix<double, N, N>> llt(s);
  if (llt.info() != Eigen::Success) {
    throw DegenerateCovarianceError("association_distance: innovation covariance is singular");
  }
  const auto l = llt.matrixL();
  double log_det = 0.0;
  for (int i = 0; i < N; ++i) {
    const double d = llt.matrixLLT()(i, i);
    if (!(d > 0.0)) {
      throw DegenerateCovarianceError("association_distance: innovation covariance is singular");
    }
    log_det += 2.0 * std::log(d);
  }
  const Eigen::Matrix<double, N, 1> w = l.solve(delta);
  return w.squaredNorm() + log_det;
}

// Shortest augmenting path Hungarian algorithm on a square matrix with +inf
// for forbidden cells. Returns row -> column.
std::vector<int> solve_square(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0);    // column -> row (1-based, 0 = free)
  std::vector<int> way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) {
          continue;
        }
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) {
        throw ContractError("gnn_associate: no feasible assignment");
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) {
      row_to_col[p[j] - 1] = j - 1;
    }
  }
  return row_to_col;
}

bool admissible(double c, double gate) { return std::isfinite(c) && c <= gate; }

}  // namespace

double association_distance(const TrackState& a, const TrackState& b, bool use_heading) {
  const Mat2 s_pos = a.pos_vel_cov.topLeftCorner<2, 2>() + b.pos_vel_cov.topLeftCorner<2, 2>();
  const Vec2 d_pos = a.pos - b.pos;
  if (!use_heading) {
    return log_likelihood_distance<2>(d_pos, s_pos);
  }
  Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
  s.topLeftCorner<2, 2>() = s_pos;
  s(2, 2) = a.heading_dispersion.as_variance() + b.heading_dispersion.as_variance();
  const Eigen::Vector3d delta(d_pos.x(), d_pos.y(), circ_distance(a.heading, b.heading));
  return log_likelihood_distance<3>(delta, s);
}

double assignment_objective(const Eigen::MatrixXd& cost, double gate,
                            const std::vector<std::pair<std::size_t, std::size_t>>& matches) {
  double total = 0.0;
  for (const auto& [r, c] : matches) {
    total += cost(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  const auto unmatched = static_cast<double>(static_cast<std::size_t>(cost.rows()) +
                                             static_cast<std::size_t>(cost.cols()) -
                                             2 * matches.size());
  return total + 0.5 * gate * unmatched;
}

Assignment gnn_associate(const Eigen::MatrixXd& cost, double gate) {
  if (!(gate > 0.0) || !std::isfinite(gate)) {
    throw ContractError("gnn_associate: gate must be finite and > 0");
  }
  const Eigen::Index rows = cost.rows();
  const Eigen::Index cols = cost.cols();
  Assignment out;
  if (rows == 0 || cols == 0) {
    for (Eigen::Index r = 0; r < rows; ++r) out.unmatched_rows.push_back(static_cast<std::size_t>(r));
    for (Eigen::Index c = 0; c < cols; ++c) out.unmatched_cols.push_back(static_cast<std::size_t>(c));
    out.objective = assignment_objective(cost, gate, out.matches);
    return out;
  }

  // Augmented (rows + cols) square problem:
  //   [ C      | D_row ]   D_row: gate/2 on the diagonal (row left unmatched)
  //   [ D_col  | 0     ]   D_col: gate/2 on the diagonal (column left unmatched)
  const Eigen::Index n = rows + cols;
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n, n, kInf);
  const double half_gate = 0.5 * gate;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (admissible(cost(r, c), gate)) {
        a(r, c) = cost(r, c);
      }
    }
    a(r, cols + r) = half_gate;
  }
  for (Eigen::Index c = 0; c < cols; ++c) {
    a(rows + c, c) = half_gate;
  }
  a.bottomRightCorner(cols, rows).setZero();

  const std::vector<int> row_to_col = solve_square(a);
  std::vector<char> col_used(static_cast<std::size_t>(cols), 0);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const int c = row_to_col[static_cast<std::size_t>(r)];
    if (c >= 0 && c < cols) {
      out.matches.emplace_back(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      out.matched_cost += cost(r, c);
      col_used[static_cast<std::size_t>(c)] = 1;
    } else {
      out.unmatched_rows.push_back(static_cast<std::size_t>(r));
    }
  }
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!col_used[static_cast<std::size_t>(c)]) {
      out.unmatched_cols.push_back(static_cast<std::size_t>(c));
    }
  }
  out.objective = assignment_objective(cost, gate, out.matches);
  return out;
}

}  // namespace circfuse::t2t
