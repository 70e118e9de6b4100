// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#include "gsavatar/rig/knn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gsavatar/core/parallel.hpp"

namespace gsav {

namespace {

struct Cand {
    double d2;
    int idx;
    bool operator<(const Cand& o) const {
        return d2 < o.d2 || (d2 == o.d2 && idx < o.idx);
    }
};

// Fixed-capacity k-best set; worst element at heap top.
class KBest {
  public:
    explicit KBest(int k) : k_(k) { heap_.reserve(k); }

    void offer(const Cand& c) {
        if (static_cast<int>(heap_.size()) < k_) {
            heap_.push_back(c);
            std::push_heap(heap_.begin(), heap_.end());
        } else if (c < heap_.front()) {
            std::pop_heap(heap_.begin(), heap_.end());
            heap_.back() = c;
            std::push_heap(heap_.begin(), heap_.end());
        }
    }

    bool full() const { return static_cast<int>(heap_.size()) == k_; }
    double worst_d2() const { return heap_.front().d2; }

    void sorted(std::vector<Cand>& out) {
        out = heap_;
        std::sort(out.begin(), out.end());
    }

  private:
    int k_;
    std::vector<Cand> heap_;
};

struct Grid {
    Vec3 lo;
    double cell = 1.0;
    int nx = 1, ny = 1, nz = 1;
    std::vector<std::vector<int>> cells;

    int clampi(int v, int n) const { return v < 0 ? 0 : (v >= n ? n - 1 : v); }

    void coords(const Vec3& p, int& ix, int& iy, int& iz) const {
        ix = clampi(static_cast<int>(std::floor((p[0] - lo[0]) / cell)), nx);
        iy = clampi(static_cast<int>(std::floor((p[1] - lo[1]) / cell)), ny);
        iz = clampi(static_cast<int>(std::floor((p[2] - lo[2]) / cell)), nz);
    }

    int cell_index(int ix, int iy, int iz) const { return (iz * ny + iy) * nx + ix; }
};

Grid build_grid(const PointMat& pts) {
    Grid g;
    const Index n = pts.rows();
    Vec3 lo = pts.colwise().minCoeff().transpose();
    Vec3 hi = pts.colwise().maxCoeff().transpose();
    const Vec3 extent = (hi - lo).cwiseMax(1e-9);
    // Aim for a handful of points per cell, cap total cell count.
    const double target = std::cbrt(extent.prod() / std::max<double>(1.0, double(n) / 3.0));
    g.cell = std::max(target, extent.maxCoeff() / 96.0);
    g.lo = lo;
    g.nx = std::max(1, static_cast<int>(std::floor(extent[0] / g.cell)) + 1);
    g.ny = std::max(1, static_cast<int>(std::floor(extent[1] / g.cell)) + 1);
    g.nz = std::max(1, static_cast<int>(std::floor(extent[2] / g.cell)) + 1);
    g.cells.resize(static_cast<std::size_t>(g.nx) * g.ny * g.nz);
    for (Index i = 0; i < n; ++i) {
        int ix, iy, iz;
        g.coords(pts.row(i).transpose(), ix, iy, iz);
        g.cells[g.cell_index(ix, iy, iz)].push_back(static_cast<int>(i));
    }
    return g;
}

void query_grid(const Grid& g, const PointMat& ref, const Vec3& q, int k, std::vector<Cand>& out) {
    KBest best(k);
    int cx, cy, cz;
    g.coords(q, cx, cy, cz);
    const int max_ring = std::max({g.nx, g.ny, g.nz});

    auto scan_cell = [&](int ix, int iy, int iz) {
        for (int idx : g.cells[g.cell_index(ix, iy, iz)]) {
            const double d2 = (ref.row(idx).transpose() - q).squaredNorm();
            best.offer({d2, idx});
        }
    };

    for (int ring = 0; ring <= max_ring; ++ring) {
        const int x0 = std::max(0, cx - ring), x1 = std::min(g.nx - 1, cx + ring);
        const int y0 = std::max(0, cy - ring), y1 = std::min(g.ny - 1, cy + ring);
        const int z0 = std::max(0, cz - ring), z1 = std::min(g.nz - 1, cz + ring);
        for (int iz = z0; iz <= z1; ++iz) {
            for (int iy = y0; iy <= y1; ++iy) {
                for (int ix = x0; ix <= x1; ++ix) {
                    const bool shell = ix == cx - ring || ix == cx + ring || iy == cy - ring ||
                                       iy == cy + ring || iz == cz - ring || iz == cz + ring;
                    if (ring == 0 || shell) scan_cell(ix, iy, iz);
                }
            }
        }
        if (best.full()) {
            // Everything unexplored lies outside the box spanned by the
            // explored rings; stop once that is provably farther than the
            // current k-th best (ties included, hence strict >).
            const Vec3 blo = g.lo + g.cell * Vec3(cx - ring, cy - ring, cz - ring);
            const Vec3 bhi = g.lo + g.cell * Vec3(cx + ring + 1, cy + ring + 1, cz + ring + 1);
            double margin = std::min({q[0] - blo[0], bhi[0] - q[0], q[1] - blo[1], bhi[1] - q[1],
                                      q[2] - blo[2], bhi[2] - q[2]});
            if (margin > 0 && margin * margin > best.worst_d2()) break;
        }
        if (x0 == 0 && y0 == 0 && z0 == 0 && x1 == g.nx - 1 && y1 == g.ny - 1 && z1 == g.nz - 1)
            break;
    }
    best.sorted(out);
}

}  // namespace

MatXi knn(const PointMat& query, const PointMat& reference, int k) {
    const Index p = reference.rows();
    if (p == 0) throw DataError("knn: empty reference set");
    if (k < 1) throw DataError("knn: k must be >= 1");
    if (k > p) throw DataError("knn: k exceeds reference size");

    MatXi out(query.rows(), k);
    const Grid grid = build_grid(reference);
    parallel_for(query.rows(), [&](std::int64_t i) {
        std::vector<Cand> best;
        query_grid(grid, reference, query.row(i).transpose(), k, best);
        for (int j = 0; j < k; ++j) out(i, j) = best[j].idx;
    });
    return out;
}

}  // namespace gsav
