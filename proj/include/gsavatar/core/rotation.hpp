// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gsavatar/core/types.hpp"

namespace gsav {

inline Quat quat_identity() { return Quat(1, 0, 0, 0); }

// Normalizes q; throws NumericalError on a near-zero norm.
Quat quat_normalize(const Quat& q);

// Rotation matrix of q (normalized internally). Orthonormal, det +1.
Mat3 quat_to_rotmat(const Quat& q);

// Hamilton product a*b, normalized. Matches rotation-matrix product order:
// quat_to_rotmat(a*b) == quat_to_rotmat(a) * quat_to_rotmat(b).
Quat quat_compose(const Quat& a, const Quat& b);

Quat quat_from_axis_angle(const Vec3& axis, double angle);

// Shepperd extraction; input assumed orthonormal.
Quat rotmat_to_quat(const Mat3& r);

// Relative-rotation angle in radians, in [0, pi].
double quat_angle_between(const Quat& a, const Quat& b);

// --- backward helpers (hand-derived VJPs) ---

// y = v/||v||; given dL/dy returns dL/dv.
Vec4 normalize_backward_vec4(const Vec4& v, const Vec4& dy);
Vec3 normalize_backward_vec3(const Vec3& v, const Vec3& dy);

// R = quat_to_rotmat(q) including the internal normalize; returns dL/dq.
Quat quat_to_rotmat_backward(const Quat& q, const Mat3& dR);

// c_raw = a (x) b (un-normalized Hamilton product). Given dL/dc_raw,
// returns the grads on a and b.
Quat quat_compose_backward_a(const Quat& b, const Quat& dc);
Quat quat_compose_backward_b(const Quat& a, const Quat& dc);

// Nearest rotation (det +1) to M in the Frobenius sense.
Mat3 polar_rotation(const Mat3& m);

// VJP of polar_rotation: given P = polar_rotation(M) and dL/dP, returns
// dL/dM (zero if the problem is degenerate).
Mat3 polar_rotation_backward(const Mat3& m, const Mat3& p, const Mat3& dP);

// --- transforms ---

Transform make_transform(const Mat3& r, const Vec3& t);

// Closed-form inverse for rigid transforms: [R^T | -R^T t].
Transform rigid_inverse(const Transform& t);

Vec3 transform_point(const Transform& t, const Vec3& p);
Vec3 transform_direction(const Transform& t, const Vec3& d);

}  // namespace gsav
