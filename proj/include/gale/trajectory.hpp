#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

#include "gale/layout.hpp"

namespace gale {

enum class Arm { left, right };

inline const char* to_string(Arm a) { return a == Arm::left ? "left" : "right"; }

enum class SpeedUnits { m_per_s, rad_per_s };
enum class SignalSource { left_ee, right_ee, neck };

/// Commanded-action trajectory: one row per frame, columns per ActionLayout.
/// Positions in metres, head joints in radians, grippers in [-1, 1].
template <typename Scalar>
struct ActionTrajectoryT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> data;
  double rate_hz = 0.0;
  ActionLayout layout;

  Eigen::Index frames() const { return data.rows(); }

  void validate() const {
    layout.validate();
    if (data.rows() < 2) throw std::invalid_argument("ActionTrajectory: need at least 2 frames");
    if (data.cols() != layout.total_dims)
      throw std::invalid_argument("ActionTrajectory: column count does not match layout.total_dims");
    if (!(rate_hz > 0)) throw std::invalid_argument("ActionTrajectory: rate_hz must be positive");
  }
};

using ActionTrajectory = ActionTrajectoryT<double>;

/// Per-step speed magnitudes; values[t] covers the step from frame t to t+1.
template <typename Scalar>
struct SignalTrackT {
  Eigen::Vector<Scalar, Eigen::Dynamic> values;  // length T-1, nonnegative
  SpeedUnits units = SpeedUnits::m_per_s;
  SignalSource source = SignalSource::left_ee;
};

using SignalTrack = SignalTrackT<double>;

/// Frames at which a gripper command changes sign (each index >= 1, sorted).
struct GripperEvents {
  Arm arm = Arm::left;
  std::vector<Eigen::Index> event_frames;
};

/// Euclidean norm of successive row differences scaled by the sampling rate.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> row_step_speeds(
    const Eigen::MatrixBase<Derived>& x, double rate_hz) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.rows();
  Eigen::Vector<Scalar, Eigen::Dynamic> out(n - 1);
  for (Eigen::Index t = 0; t + 1 < n; ++t)
    out[t] = (x.row(t + 1) - x.row(t)).norm() * static_cast<Scalar>(rate_hz);
  return out;
}

/// Forward-difference angular speed of the three head joints, in rad/s.
template <typename Scalar>
SignalTrackT<Scalar> neck_angular_speed(const ActionTrajectoryT<Scalar>& traj) {
  traj.validate();
  if (!traj.layout.has_head())
    throw std::invalid_argument("neck_angular_speed: layout has no head joint columns");
  const auto& h = traj.layout.head_joints;
  SignalTrackT<Scalar> track;
  track.values = row_step_speeds(traj.data(Eigen::all, std::vector<int>{h[0], h[1], h[2]}), traj.rate_hz);
  track.units = SpeedUnits::rad_per_s;
  track.source = SignalSource::neck;
  return track;
}

/// Forward-difference linear speed of one arm's commanded EE position, in m/s.
template <typename Scalar>
SignalTrackT<Scalar> ee_linear_speed(const ActionTrajectoryT<Scalar>& traj, Arm arm) {
  traj.validate();
  if (!traj.layout.has_arm_pos(arm == Arm::left))
    throw std::invalid_argument("ee_linear_speed: layout has no EE position columns for this arm");
  const auto& p = arm == Arm::left ? traj.layout.left_ee_pos : traj.layout.right_ee_pos;
  SignalTrackT<Scalar> track;
  track.values = row_step_speeds(traj.data(Eigen::all, std::vector<int>{p[0], p[1], p[2]}), traj.rate_hz);
  track.units = SpeedUnits::m_per_s;
  track.source = arm == Arm::left ? SignalSource::left_ee : SignalSource::right_ee;
  return track;
}

/// Sign-change events of a gripper command column.
///
/// Zero handling: sign(0) counts as +. With hysteresis > 0 the sign only
/// flips once the command leaves the band [-hysteresis, +hysteresis]; values
/// inside the band keep the previous classification.
template <typename Scalar>
GripperEvents gripper_events(const ActionTrajectoryT<Scalar>& traj, Arm arm,
                             double hysteresis = 0.0) {
  traj.validate();
  if (hysteresis < 0) throw std::invalid_argument("gripper_events: hysteresis must be >= 0");
  if (!traj.layout.has_gripper(arm == Arm::left))
    throw std::invalid_argument("gripper_events: layout has no gripper column for this arm");
  const int col = arm == Arm::left ? traj.layout.left_gripper : traj.layout.right_gripper;

  GripperEvents ev;
  ev.arm = arm;
  int sign = traj.data(0, col) >= Scalar(0) ? +1 : -1;
  for (Eigen::Index t = 1; t < traj.frames(); ++t) {
    const Scalar g = traj.data(t, col);
    int next = sign;
    if (hysteresis == 0.0) {
      next = g >= Scalar(0) ? +1 : -1;
    } else if (g > Scalar(hysteresis)) {
      next = +1;
    } else if (g < Scalar(-hysteresis)) {
      next = -1;
    }
    if (next != sign) ev.event_frames.push_back(t);
    sign = next;
  }
  return ev;
}

/// Keep frames 0, factor, 2*factor, ...; the sampling rate divides by factor.
template <typename Scalar>
ActionTrajectoryT<Scalar> downsample_stride(const ActionTrajectoryT<Scalar>& traj, int factor) {
  traj.validate();
  if (factor < 1) throw std::invalid_argument("downsample_stride: factor must be >= 1");
  const Eigen::Index kept = (traj.frames() + factor - 1) / factor;
  ActionTrajectoryT<Scalar> out;
  out.data = traj.data(Eigen::seqN(0, kept, factor), Eigen::all);
  out.rate_hz = traj.rate_hz / factor;
  out.layout = traj.layout;
  return out;
}

}  // namespace gale
