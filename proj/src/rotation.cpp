// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#include "gsavatar/core/rotation.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace gsav {

Quat quat_normalize(const Quat& q) {
    const double n = q.norm();
    if (!(n > 1e-12)) throw NumericalError("degenerate quaternion");
    return q / n;
}

Mat3 quat_to_rotmat(const Quat& q) {
    const Quat u = quat_normalize(q);
    const double w = u[0], x = u[1], y = u[2], z = u[3];
    Mat3 r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

Quat quat_compose(const Quat& a, const Quat& b) {
    if (!a.allFinite() || !b.allFinite()) throw NumericalError("non-finite quaternion");
    Quat c;
    c[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
    c[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
    c[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
    c[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
    return quat_normalize(c);
}

Quat quat_from_axis_angle(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (!(n > 1e-12)) return quat_identity();
    const Vec3 u = axis / n;
    const double h = 0.5 * angle;
    const double s = std::sin(h);
    return Quat(std::cos(h), s * u[0], s * u[1], s * u[2]);
}

Quat rotmat_to_quat(const Mat3& r) {
    const double tr = r.trace();
    Quat q;
    if (tr > 0.0) {
        double s = std::sqrt(tr + 1.0) * 2.0;
        q = Quat(0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s,
                 (r(1, 0) - r(0, 1)) / s);
    } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
        double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
        q = Quat((r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s,
                 (r(0, 2) + r(2, 0)) / s);
    } else if (r(1, 1) > r(2, 2)) {
        double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
        q = Quat((r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s,
                 (r(1, 2) + r(2, 1)) / s);
    } else {
        double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
        q = Quat((r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s,
                 (r(1, 2) + r(2, 1)) / s, 0.25 * s);
    }
    return quat_normalize(q);
}

double quat_angle_between(const Quat& a, const Quat& b) {
    const Quat ua = quat_normalize(a), ub = quat_normalize(b);
    double d = std::abs(ua.dot(ub));
    if (d > 1.0) d = 1.0;
    return 2.0 * std::acos(d);
}

Vec4 normalize_backward_vec4(const Vec4& v, const Vec4& dy) {
    const double n = v.norm();
    const Vec4 y = v / n;
    return (dy - y * y.dot(dy)) / n;
}

Vec3 normalize_backward_vec3(const Vec3& v, const Vec3& dy) {
    const double n = v.norm();
    const Vec3 y = v / n;
    return (dy - y * y.dot(dy)) / n;
}

Quat quat_to_rotmat_backward(const Quat& q, const Mat3& g) {
    const Quat u = quat_normalize(q);
    const double w = u[0], x = u[1], y = u[2], z = u[3];
    Vec4 du;
    du[0] = 2 * (-z * g(0, 1) + y * g(0, 2) + z * g(1, 0) - x * g(1, 2) - y * g(2, 0) + x * g(2, 1));
    du[1] = 2 * (y * g(0, 1) + z * g(0, 2) + y * g(1, 0) - 2 * x * g(1, 1) - w * g(1, 2) +
                 z * g(2, 0) + w * g(2, 1) - 2 * x * g(2, 2));
    du[2] = 2 * (-2 * y * g(0, 0) + x * g(0, 1) + w * g(0, 2) + x * g(1, 0) + z * g(1, 2) -
                 w * g(2, 0) + z * g(2, 1) - 2 * y * g(2, 2));
    du[3] = 2 * (-2 * z * g(0, 0) - w * g(0, 1) + x * g(0, 2) + w * g(1, 0) - 2 * z * g(1, 1) +
                 y * g(1, 2) + x * g(2, 0) + y * g(2, 1));
    return normalize_backward_vec4(q, du);
}

Quat quat_compose_backward_a(const Quat& b, const Quat& dc) {
    // c = R(b) a with R(b) the right-multiplication matrix.
    Mat4 rb;
    rb << b[0], -b[1], -b[2], -b[3],
          b[1],  b[0],  b[3], -b[2],
          b[2], -b[3],  b[0],  b[1],
          b[3],  b[2], -b[1],  b[0];
    return rb.transpose() * dc;
}

Quat quat_compose_backward_b(const Quat& a, const Quat& dc) {
    // c = L(a) b with L(a) the left-multiplication matrix.
    Mat4 la;
    la << a[0], -a[1], -a[2], -a[3],
          a[1],  a[0], -a[3],  a[2],
          a[2],  a[3],  a[0], -a[1],
          a[3], -a[2],  a[1],  a[0];
    return la.transpose() * dc;
}

Mat3 polar_rotation(const Mat3& m) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 u = svd.matrixU(), v = svd.matrixV();
    Mat3 p = u * v.transpose();
    if (p.determinant() < 0) {
        u.col(2) *= -1.0;
        p = u * v.transpose();
    }
    return p;
}

namespace {
inline Vec3 antisym(const Mat3& b) {
    return Vec3(b(2, 1) - b(1, 2), b(0, 2) - b(2, 0), b(1, 0) - b(0, 1));
}
inline Mat3 cross_matrix(const Vec3& w) {
    Mat3 s;
    s << 0, -w[2], w[1], w[2], 0, -w[0], -w[1], w[0], 0;
    return s;
}
}  // namespace

Mat3 polar_rotation_backward(const Mat3& m, const Mat3& p, const Mat3& dP) {
    // With M = P H, perturbations satisfy  (tr(H) I - H) w = antisym(P^T dM),
    // dP = P [w]x. The VJP follows by transposing that linear map.
    Mat3 h = p.transpose() * m;
    h = 0.5 * (h + h.transpose());
    Mat3 c = h.trace() * Mat3::Identity() - h;
    const double det = c.determinant();
    if (!(std::abs(det) > 1e-12)) return Mat3::Zero();
    const Vec3 u = c.inverse() * antisym(p.transpose() * dP);
    return p * cross_matrix(u);
}

Transform make_transform(const Mat3& r, const Vec3& t) {
    Transform m = Transform::Identity();
    m.topLeftCorner<3, 3>() = r;
    m.topRightCorner<3, 1>() = t;
    return m;
}

Transform rigid_inverse(const Transform& t) {
    const Mat3 rt = t.topLeftCorner<3, 3>().transpose();
    return make_transform(rt, -rt * t.topRightCorner<3, 1>());
}

Vec3 transform_point(const Transform& t, const Vec3& p) {
    return t.topLeftCorner<3, 3>() * p + t.topRightCorner<3, 1>();
}

Vec3 transform_direction(const Transform& t, const Vec3& d) {
    return t.topLeftCorner<3, 3>() * d;
}

}  // namespace gsav
