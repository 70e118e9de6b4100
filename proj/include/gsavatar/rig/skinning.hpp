// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gsavatar/rig/skeleton.hpp"

namespace gsav {

// Template surface points with known LBS weights; Gaussians inherit their
// weights from these by nearest-neighbour lookup.
struct ControlPoints {
    PointMat positions;  // P x 3, canonical space
    MatX weights;        // P x J, rows sum to 1

    Index count() const { return positions.rows(); }
    void validate() const;
};

// Per-query weight rows. k=1 copies the nearest row; k>1 blends rows by
// inverse distance and renormalizes. Exact hits take the matched row.
MatX inherit_weights(const PointMat& query_cano, const ControlPoints& cp, int k);

}  // namespace gsav
