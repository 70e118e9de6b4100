// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#include "gsavatar/rig/skinning.hpp"

#include "gsavatar/core/parallel.hpp"
#include "gsavatar/rig/knn.hpp"

namespace gsav {

void ControlPoints::validate() const {
    if (count() == 0) throw DataError("control points: empty set");
    if (weights.rows() != count()) throw DataError("control points: weight row count mismatch");
    for (Index i = 0; i < weights.rows(); ++i) {
        if (weights.row(i).minCoeff() < -1e-9) throw DataError("control points: negative weight");
        if (std::abs(weights.row(i).sum() - 1.0) > 1e-6)
            throw DataError("control points: weight row does not sum to 1");
    }
}

MatX inherit_weights(const PointMat& query_cano, const ControlPoints& cp, int k) {
    if (cp.count() == 0) throw DataError("inherit_weights: empty control set");
    if (k < 1) throw DataError("inherit_weights: k must be >= 1");

    const MatXi nn = knn(query_cano, cp.positions, k);
    MatX out(query_cano.rows(), cp.weights.cols());

    parallel_for(query_cano.rows(), [&](std::int64_t i) {
        if (k == 1) {
            out.row(i) = cp.weights.row(nn(i, 0));
            return;
        }
        // Inverse-distance blend; an exact hit short-circuits to its row.
        double inv_sum = 0.0;
        VecX inv(k);
        for (int m = 0; m < k; ++m) {
            const double d = (cp.positions.row(nn(i, m)) - query_cano.row(i)).norm();
            if (d < 1e-12) {
                out.row(i) = cp.weights.row(nn(i, m));
                return;
            }
            inv[m] = 1.0 / d;
            inv_sum += inv[m];
        }
        out.row(i).setZero();
        for (int m = 0; m < k; ++m) out.row(i) += (inv[m] / inv_sum) * cp.weights.row(nn(i, m));
        out.row(i) /= out.row(i).sum();
    });
    return out;
}

}  // namespace gsav
