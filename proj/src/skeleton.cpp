// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#include "gsavatar/rig/skeleton.hpp"

namespace gsav {

void Skeleton::validate() const {
    if (joint_count < 1) throw DataError("skeleton needs at least one joint");
    if (static_cast<int>(parent.size()) != joint_count ||
        static_cast<int>(rest_local.size()) != joint_count || bone_scale.size() != joint_count)
        throw DataError("skeleton field sizes disagree");
    if (parent[0] != -1) throw DataError("joint 0 must be the root");
    for (int j = 1; j < joint_count; ++j) {
        if (parent[j] < 0 || parent[j] >= j)
            throw DataError("skeleton parents must form a tree with parents before children");
    }
}

Pose Pose::rest(Index joints) {
    Pose p;
    p.joint_rot = QuatMat::Zero(joints, 4);
    p.joint_rot.col(0).setOnes();
    return p;
}

namespace {

// Scaled local transform: rotation R_rest * R(q), translation s * t_rest.
Mat4 local_at(const Skeleton& skel, int j, const Quat& q) {
    const Mat3 r = skel.rest_local[j].topLeftCorner<3, 3>() * quat_to_rotmat(q);
    const Vec3 t = skel.bone_scale[j] * skel.rest_local[j].topRightCorner<3, 1>();
    return make_transform(r, t);
}

}  // namespace

BoneTransforms fk_forward(const Skeleton& skel, const Pose& pose, FkTape* tape) {
    skel.validate();
    const int j_count = skel.joint_count;
    if (pose.joint_rot.rows() != j_count)
        throw DataError("pose has wrong joint count");

    std::vector<Mat4> local(j_count), world(j_count), rest_world(j_count), rest_world_inv(j_count);
    for (int j = 0; j < j_count; ++j) {
        local[j] = local_at(skel, j, pose.joint_rot.row(j).transpose());
        const Mat4 rest_local_scaled = local_at(skel, j, quat_identity());
        world[j] = j == 0 ? local[j] : world[skel.parent[j]] * local[j];
        rest_world[j] = j == 0 ? rest_local_scaled : rest_world[skel.parent[j]] * rest_local_scaled;
        rest_world_inv[j] = rigid_inverse(rest_world[j]);
    }

    BoneTransforms out;
    out.bones.resize(j_count);
    for (int j = 0; j < j_count; ++j) {
        out.bones[j] = world[j] * rest_world_inv[j];
        out.bones[j].topRightCorner<3, 1>() += pose.root_translation;
    }

    if (tape) {
        tape->local = std::move(local);
        tape->world = std::move(world);
        tape->rest_world_inv = std::move(rest_world_inv);
        tape->pose_quats = pose.joint_rot;
    }
    return out;
}

BoneTransforms compute_bone_transforms(const Skeleton& skel, const Pose& pose) {
    return fk_forward(skel, pose, nullptr);
}

FkGrads fk_backward(const Skeleton& skel, const FkTape& tape, const std::vector<Mat4>& d_bones) {
    const int j_count = skel.joint_count;
    FkGrads g;
    g.d_joint_rot = QuatMat::Zero(j_count, 4);
    g.d_bone_scale = VecX::Zero(j_count);

    // B_j = W_j * A_j (+ root translation), W_j = W_parent * L_j.
    std::vector<Mat4> d_world(j_count, Mat4::Zero());
    for (int j = 0; j < j_count; ++j) {
        g.d_root_translation += d_bones[j].topRightCorner<3, 1>();
        d_world[j] += d_bones[j] * tape.rest_world_inv[j].transpose();
    }
    for (int j = j_count - 1; j >= 1; --j) {
        const int p = skel.parent[j];
        d_world[p] += d_world[j] * tape.local[j].transpose();
    }
    for (int j = 0; j < j_count; ++j) {
        const Mat4 d_local = j == 0
            ? d_world[0]
            : Mat4(tape.world[skel.parent[j]].transpose() * d_world[j]);
        // local rotation block is R_rest * R(q); translation is s * t_rest.
        const Mat3 d_rq = skel.rest_local[j].topLeftCorner<3, 3>().transpose() *
                          d_local.topLeftCorner<3, 3>();
        g.d_joint_rot.row(j) =
            quat_to_rotmat_backward(tape.pose_quats.row(j).transpose(), d_rq).transpose();
        g.d_bone_scale[j] =
            skel.rest_local[j].topRightCorner<3, 1>().dot(d_local.topRightCorner<3, 1>());
    }
    return g;
}

Transform lbs_apply(const VecX& weights_row, const BoneTransforms& bones) {
    if (weights_row.size() != bones.size())
        throw DataError("weight row length does not match joint count");
    double sum = 0.0;
    for (Index j = 0; j < weights_row.size(); ++j) {
        if (weights_row[j] < -1e-9) throw DataError("negative skinning weight");
        sum += weights_row[j];
    }
    if (std::abs(sum - 1.0) > 1e-6) throw DataError("skinning weights must sum to 1");
    Transform t = Transform::Zero();
    for (Index j = 0; j < weights_row.size(); ++j) t += weights_row[j] * bones.bones[j];
    return t;
}

}  // namespace gsav
