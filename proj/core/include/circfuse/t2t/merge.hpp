#pragma once

#include <span>

#include "circfuse/t2t/track.hpp"

namespace circfuse::t2t {

/// Fuses two tracks of the same object.
/// Linear block: information-weighted average, P_f = (P_a^-1 + P_b^-1)^-1.
/// Heading: weighted circular mean, dispersion by harmonic variance or
/// summed concentration. Both headings must use the same dispersion kind.
/// Symmetric in its arguments. Throws DegenerateCovarianceError when either
/// covariance is not positive definite.
TrackState merge_tracks(const TrackState& a, const TrackState& b);

/// N-ary form; a single state is returned unchanged.
TrackState merge_tracks(std::span<const TrackState> states);

}  // namespace circfuse::t2t
