#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace gale {

/// Column map naming which indices of an action matrix carry each channel
/// group. Index -1 marks a channel the robot does not expose; operations
/// that need an absent channel throw.
///
/// The default instance is the canonical 19-D humanoid layout: per-arm
/// end-effector position (xyz) and quaternion (wxyz), three head joints
/// (roll, pitch, yaw in radians), and one normalized gripper scalar per arm.
struct ActionLayout {
  std::array<int, 3> left_ee_pos{0, 1, 2};
  std::array<int, 4> left_ee_quat{3, 4, 5, 6};
  std::array<int, 3> right_ee_pos{7, 8, 9};
  std::array<int, 4> right_ee_quat{10, 11, 12, 13};
  std::array<int, 3> head_joints{14, 15, 16};  // roll, pitch, yaw
  int left_gripper = 17;
  int right_gripper = 18;
  int total_dims = 19;

  bool operator==(const ActionLayout&) const = default;

  bool has_head() const {
    return head_joints[0] >= 0 && head_joints[1] >= 0 && head_joints[2] >= 0;
  }
  bool has_arm_pos(bool left) const {
    const auto& p = left ? left_ee_pos : right_ee_pos;
    return p[0] >= 0 && p[1] >= 0 && p[2] >= 0;
  }
  bool has_gripper(bool left) const { return (left ? left_gripper : right_gripper) >= 0; }

  /// Every present index must be unique and in [0, total_dims).
  void validate() const {
    std::vector<int> used;
    auto add = [&](int i) {
      if (i < 0) return;  // absent channel
      if (i >= total_dims) throw std::invalid_argument("ActionLayout: index " + std::to_string(i) + " >= total_dims");
      used.push_back(i);
    };
    for (int i : left_ee_pos) add(i);
    for (int i : left_ee_quat) add(i);
    for (int i : right_ee_pos) add(i);
    for (int i : right_ee_quat) add(i);
    for (int i : head_joints) add(i);
    add(left_gripper);
    add(right_gripper);
    for (size_t a = 0; a < used.size(); ++a)
      for (size_t b = a + 1; b < used.size(); ++b)
        if (used[a] == used[b])
          throw std::invalid_argument("ActionLayout: index " + std::to_string(used[a]) + " used twice");
  }
};

inline ActionLayout canonical_layout() { return ActionLayout{}; }

}  // namespace gale
