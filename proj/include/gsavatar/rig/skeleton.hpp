// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "gsavatar/core/rotation.hpp"
#include "gsavatar/core/types.hpp"

namespace gsav {

// Kinematic tree rooted at joint 0; parents precede children.
struct Skeleton {
    int joint_count = 0;
    std::vector<int> parent;          // parent[0] == -1
    std::vector<Transform> rest_local;  // rigid bind transforms
    VecX bone_scale;                  // per-joint, default 1; scales local translation

    void validate() const;
};

struct Pose {
    Vec3 root_translation = Vec3::Zero();
    QuatMat joint_rot;  // J x 4, rows (w,x,y,z); row 0 is the global orientation

    Index joints() const { return joint_rot.rows(); }
    static Pose rest(Index joints);
};

// Canonical -> posed maps per joint, world frame. Rest pose gives identity.
struct BoneTransforms {
    std::vector<Transform> bones;
    Index size() const { return static_cast<Index>(bones.size()); }
};

// Saved intermediates for fk_backward.
struct FkTape {
    std::vector<Mat4> local;       // scaled local transforms at the pose
    std::vector<Mat4> world;
    std::vector<Mat4> rest_world_inv;
    QuatMat pose_quats;            // raw inputs (pre-normalization)
};

BoneTransforms compute_bone_transforms(const Skeleton& skel, const Pose& pose);
BoneTransforms fk_forward(const Skeleton& skel, const Pose& pose, FkTape* tape);

struct FkGrads {
    QuatMat d_joint_rot;      // J x 4
    Vec3 d_root_translation = Vec3::Zero();
    VecX d_bone_scale;        // J
};

// VJP of fk_forward given per-bone 4x4 grads.
FkGrads fk_backward(const Skeleton& skel, const FkTape& tape, const std::vector<Mat4>& d_bones);

// Blended transform sum_j w_j B_j. Generally affine, not rigid.
Transform lbs_apply(const VecX& weights_row, const BoneTransforms& bones);

}  // namespace gsav
