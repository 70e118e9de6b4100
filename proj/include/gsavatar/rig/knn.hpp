// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gsavatar/core/types.hpp"

namespace gsav {

// Exact Euclidean k-nearest neighbours of each query row among the
// reference rows. Results ascend by (distance, index); ties go to the
// lower reference index. A uniform grid accelerates the search but the
// output is bit-identical to a brute-force scan.
MatXi knn(const PointMat& query, const PointMat& reference, int k);

}  // namespace gsav
