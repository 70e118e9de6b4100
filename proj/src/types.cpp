// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#include "gsavatar/core/types.hpp"

#include "gsavatar/core/rotation.hpp"

namespace gsav {

GaussianCloud GaussianCloud::zeros(Index n, Index feat_dim) {
    GaussianCloud c;
    c.positions = PointMat::Zero(n, 3);
    c.scale_log = PointMat::Zero(n, 3);
    c.rotations = QuatMat::Zero(n, 4);
    c.rotations.col(0).setOnes();
    c.opacity_logit = VecX::Zero(n);
    c.color_feat = MatX::Zero(n, feat_dim);
    return c;
}

Gaussian3D GaussianCloud::gaussian(Index i) const {
    Gaussian3D g;
    g.mean = positions.row(i).transpose();
    g.scale_log = scale_log.row(i).transpose();
    g.rot = rotations.row(i).transpose();
    g.opacity_logit = opacity_logit[i];
    g.color_feat = color_feat.row(i).transpose();
    return g;
}

void GaussianCloud::set_gaussian(Index i, const Gaussian3D& g) {
    positions.row(i) = g.mean.transpose();
    scale_log.row(i) = g.scale_log.transpose();
    rotations.row(i) = g.rot.transpose();
    opacity_logit[i] = g.opacity_logit;
    color_feat.row(i) = g.color_feat.transpose();
}

bool GaussianCloud::all_finite() const {
    return positions.allFinite() && scale_log.allFinite() && rotations.allFinite() &&
           opacity_logit.allFinite() && color_feat.allFinite();
}

void Camera::validate() const {
    if (!(fx > 0) || !(fy > 0)) throw DataError("camera focal lengths must be positive");
    if (width <= 0 || height <= 0) throw DataError("camera resolution must be positive");
    if (cx < 0 || cx >= width || cy < 0 || cy >= height)
        throw DataError("camera principal point out of bounds");
    if (!(near > 0)) throw DataError("camera near plane must be positive");
}

Vec3 Camera::center() const {
    return -(view.topLeftCorner<3, 3>().transpose() * view.topRightCorner<3, 1>());
}

Image Image::zeros(int w, int h, int c) {
    Image img;
    img.width = w;
    img.height = h;
    img.channels = c;
    img.pixels = VecX::Zero(static_cast<Index>(w) * h * c);
    return img;
}

Image Image::constant(int w, int h, int c, double v) {
    Image img = zeros(w, h, c);
    img.pixels.setConstant(v);
    return img;
}

}  // namespace gsav
