// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gsavatar/core/error.hpp"

namespace gsav {

using Index = Eigen::Index;

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using VecX = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using MatX = Eigen::MatrixXd;
using MatXi = Eigen::MatrixXi;

// Rows are points / per-item records.
using PointMat = Eigen::Matrix<double, Eigen::Dynamic, 3>;
using QuatMat = Eigen::Matrix<double, Eigen::Dynamic, 4>;

// Unit quaternion stored scalar-first: (w, x, y, z). [1,0,0,0] is identity.
using Quat = Vec4;

// Homogeneous 4x4 with last row (0,0,0,1). Rigid transforms keep the
// upper-left 3x3 orthonormal; LBS blends are general affine.
using Transform = Mat4;

struct Gaussian3D {
    Vec3 mean = Vec3::Zero();
    Vec3 scale_log = Vec3::Zero();
    Quat rot = Quat(1, 0, 0, 0);
    double opacity_logit = 0.0;
    VecX color_feat;
};

// Canonical avatar cloud, struct-of-arrays. N is fixed after init.
struct GaussianCloud {
    PointMat positions;     // N x 3
    PointMat scale_log;     // N x 3
    QuatMat rotations;      // N x 4, rows (w,x,y,z)
    VecX opacity_logit;     // N
    MatX color_feat;        // N x F

    Index size() const { return positions.rows(); }
    Index feat_dim() const { return color_feat.cols(); }

    static GaussianCloud zeros(Index n, Index feat_dim);

    Gaussian3D gaussian(Index i) const;
    void set_gaussian(Index i, const Gaussian3D& g);

    bool all_finite() const;
};

struct Camera {
    Transform view = Transform::Identity();  // world -> camera
    double fx = 1, fy = 1;
    double cx = 0, cy = 0;
    int width = 0, height = 0;
    double near = 1e-2;

    void validate() const;
    Vec3 center() const;  // camera position in world coordinates
};

// Row-major interleaved pixels in [0,1].
struct Image {
    int width = 0, height = 0, channels = 0;
    VecX pixels;

    static Image zeros(int w, int h, int c);
    static Image constant(int w, int h, int c, double v);

    double& at(int x, int y, int c) { return pixels[(static_cast<Index>(y) * width + x) * channels + c]; }
    double at(int x, int y, int c) const { return pixels[(static_cast<Index>(y) * width + x) * channels + c]; }
    Index pixel_count() const { return static_cast<Index>(width) * height; }
    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
inline double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace gsav
