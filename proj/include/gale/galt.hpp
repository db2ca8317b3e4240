#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gale/trajectory.hpp"

namespace gale::galt {

/// Detector hyperparameters. Defaults are the values calibrated on the
/// teleoperation reference episodes; they are applied unchanged to policy
/// rollouts so distribution differences reflect behaviour, not tuning.
struct GaltConfig {
  double v_hand_thresh = 0.05;           // m/s, EE moving/holding floor
  double v_sac_thresh = 0.10;            // rad/s, neck moving/holding floor
  double k_fix_s = 0.080;                // min fixation duration
  double min_stable_for_onset_s = 0.300; // min stillness before a hand onset
  double lookback_s = 3.0;               // search window behind the anchor
  double forward_slack_s = 0.5;          // search window past the anchor
  double arrival_margin_rad = 0.05;      // L-inf joint margin for arrival refinement
  double outlier_min_s = -0.5;
  double outlier_max_s = 4.0;
  double gripper_hysteresis = 0.0;

  void validate() const;
};

enum class ArmStatus {
  ok,
  no_gripper_event,
  no_hand_onset,
  no_fixation,
  outlier_low,
  outlier_high,
};

enum class SkipCode {
  no_gripper_event,
  no_hand_onset,
  no_fixation,
  outlier_low,
  outlier_high,
  ambiguous_arms,
};

const char* to_string(ArmStatus s);
const char* to_string(SkipCode c);
std::optional<SkipCode> skip_code_from_string(std::string_view s);

/// Per-arm detection trace. status == ok iff galt_s and t_head are present.
struct ArmDetection {
  Arm arm = Arm::left;
  std::optional<Eigen::Index> t_hand;   // anchor: last gripper sign change
  std::optional<Eigen::Index> t_onset;  // end of last long-enough stable run
  std::optional<Eigen::Index> t_head;   // refined fixation arrival frame
  std::optional<double> galt_s;
  ArmStatus status = ArmStatus::no_gripper_event;
};

/// Episode-level result: a value iff exactly one arm validated, otherwise a
/// skip code (ambiguous_arms when both validated). Input errors are recorded
/// per episode so batches never abort.
struct GaltOutcome {
  std::string episode_id;
  std::optional<double> galt_s;
  std::optional<Arm> arm;
  std::optional<SkipCode> skip;
  std::optional<std::string> error;
  std::array<ArmDetection, 2> per_arm{};  // [left, right]

  bool ok() const { return galt_s.has_value(); }
};

/// Number of consecutive below-threshold steps a run must span: ceil(seconds
/// * rate), with a tiny guard so products like 0.3*20 quantize to their exact
/// frame counts. Never less than 1.
int required_steps(double seconds, double rate_hz);

/// End frame of the latest run of >= ceil(min_stable_for_onset_s * f) steps
/// with speed < v_hand_thresh, restricted to steps strictly before `anchor`.
/// Absence means the gripper event was not preceded by a real reach.
std::optional<Eigen::Index> detect_hand_onset(const SignalTrack& speed, Eigen::Index anchor,
                                              const GaltConfig& cfg, double rate_hz);

/// Fixation arrival frame near `anchor`: pick the below-threshold neck run
/// (>= ceil(k_fix_s * f) steps) inside [anchor - ceil(L*f), anchor + ceil(S*f)]
/// whose start is nearest the anchor (ties toward the earlier run), then walk
/// the start backward while the head pose stays within arrival_margin_rad
/// (L-inf) of the run's mean pose. The walk may leave the window; it only
/// moves the arrival earlier.
std::optional<Eigen::Index> detect_head_fixation(const SignalTrack& neck_speed,
                                                 const Eigen::MatrixXd& head_joints,
                                                 Eigen::Index anchor, const GaltConfig& cfg,
                                                 double rate_hz);

/// Full detector over one episode's commanded-action trajectory.
GaltOutcome detect_galt(const ActionTrajectory& traj, const GaltConfig& cfg,
                        std::string episode_id = {});

/// Batch form: outcomes in input order, one per episode, independent and
/// deterministic for any worker count. workers == 0 picks a hardware default.
std::vector<GaltOutcome> detect_galt_batch(
    const std::vector<std::pair<std::string, ActionTrajectory>>& episodes, const GaltConfig& cfg,
    int workers = 0);

}  // namespace gale::galt
