#include "circfuse/t2t/merge.hpp"

#include <vector>

#include <Eigen/Cholesky>

#include "circfuse/errors.hpp"

namespace circfuse::t2t {
namespace {

Mat4 information(const Mat4& p) {
  const Eigen::LLT<Mat4> llt(p);
  if (!p.allFinite() || llt.info() != Eigen::Success) {
    throw DegenerateCovarianceError("merge_tracks: covariance is not positive definite");
  }
  return llt.solve(Mat4::Identity());
}

}  // namespace

TrackState merge_tracks(const TrackState& a, const TrackState& b) {
  const TrackState both[] = {a, b};
  return merge_tracks(both);
}

TrackState merge_tracks(std::span<const TrackState> states) {
  if (states.empty()) {
    throw ContractError("merge_tracks: nothing to merge");
  }
  if (states.size() == 1) {
    return states.front();
  }

  Mat4 info_sum = Mat4::Zero();
  Vec4 info_state = Vec4::Zero();
  std::vector<AngularEstimate> headings;
  headings.reserve(states.size());
  for (const auto& s : states) {
    Mat4 info = information(s.pos_vel_cov);
    info = symmetrized(info);
    info_sum += info;
    info_state += info * s.linear();
    headings.push_back(s.heading_estimate());
  }
  const Eigen::LLT<Mat4> llt(info_sum);
  if (llt.info() != Eigen::Success) {
    throw DegenerateCovarianceError("merge_tracks: combined information is singular");
  }
  Mat4 cov = llt.solve(Mat4::Identity());
  cov = symmetrized(cov);
  const Vec4 x = cov * info_state;

  const AngularEstimate heading = fuse_weighted(headings);
  TrackState out;
  out.pos = x.head<2>();
  out.vel = x.tail<2>();
  out.pos_vel_cov = cov;
  out.heading = heading.angle;
  out.heading_dispersion = heading.dispersion;
  return out;
}

}  // namespace circfuse::t2t
