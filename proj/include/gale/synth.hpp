#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gale/galt.hpp"
#include "gale/trajectory.hpp"

namespace gale::synth {

/// Minimum-jerk position fraction p(tau) on [0, 1]; p(0)=0, p(1)=1,
/// zero velocity and acceleration at both ends.
double min_jerk_pos(double tau);
/// d p / d tau; peak 1.875 at tau = 0.5.
double min_jerk_vel(double tau);

/// One arm's plan: hold at start_pos, minimum-jerk reach of reach_distance_m
/// along reach_dir over [reach_start_s, reach_end_s], hold at the target, and
/// optionally flip the gripper command sign at grasp_time_s.
struct ArmPlan {
  double reach_start_s = 1.0;
  double reach_end_s = 2.0;
  double reach_distance_m = 0.30;
  std::optional<double> grasp_time_s;
  Eigen::Vector3d start_pos{0.30, 0.0, 1.05};
  Eigen::Vector3d reach_dir{1.0, 0.0, 0.0};  // normalized internally
};

/// Neck plan. The head holds start_pose, saccades toward fixation_pose, and
/// arrives through an explicit slow tail: the main minimum-jerk phase ends
/// 2*margin_rad (L-inf) short of the target at fixation_arrival_s -
/// deceleration_tail_s/2, and a second minimum-jerk segment covers the rest,
/// so the pose enters the margin exactly at fixation_arrival_s while the
/// angular speed stays above the saccade floor until later in the tail.
/// With wander set the head instead circles at constant angular speed for
/// the whole episode and never fixates.
struct NeckPlan {
  double saccade_start_s = 1.0;
  double fixation_arrival_s = 2.0;
  double deceleration_tail_s = 0.5;
  Eigen::Vector3d start_pose{0.0, -0.1, -0.4};
  Eigen::Vector3d fixation_pose{0.0, -0.35, 0.3};
  double margin_rad = 0.05;  // mirrors the detector's arrival margin
  bool wander = false;
  /// Circle at constant speed before the saccade instead of holding still,
  /// so no fixation run exists anywhere before the arrival.
  bool wander_until_saccade = false;
};

struct NoiseSpec {
  double pos_sigma_m = 0.0;
  double neck_sigma_rad = 0.0;
};

/// Optional gripper chatter: `cycles` alternating +/- amplitude frames
/// starting at time_s, for hysteresis testing.
struct GripperChatter {
  double time_s = 0.0;
  int cycles = 4;
  double amplitude = 0.05;
};

struct PlantSpec {
  double rate_hz = 60.0;
  double duration_s = 10.0;
  std::optional<ArmPlan> left;
  std::optional<ArmPlan> right;
  NeckPlan neck;
  NoiseSpec noise;
  std::uint64_t seed = 0;
  std::optional<GripperChatter> chatter_left;
  std::optional<GripperChatter> chatter_right;
};

/// Ground truth derived from the plan's closed-form profiles alone (frame
/// quantization included); the detector never participates.
struct PlantedTruth {
  std::optional<Eigen::Index> t_hand_left;
  std::optional<Eigen::Index> t_hand_right;
  std::optional<Eigen::Index> t_head;     // analytic margin-entry frame
  std::optional<double> galt_s;           // continuous: grasp time - arrival time
  std::optional<Arm> arm;
  std::optional<galt::SkipCode> skip;
};

/// First sampled frame at/after continuous time t (guarded ceil).
Eigen::Index frame_of(double t_s, double rate_hz);

/// Analytic margin-entry time of a (non-wander) neck plan for margin r:
/// the earliest t with max_i |q_i(t) - fixation_pose_i| <= r, found by
/// bisection on the piecewise closed-form profile.
double margin_entry_time(const NeckPlan& neck, double r);

/// Analytic time at which the continuous neck angular speed last drops below
/// v_thresh on the deceleration side of the tail.
double speed_floor_crossing_time(const NeckPlan& neck, double v_thresh);

/// Generate one episode and its analytic truth. Truth outcome codes are
/// evaluated against `cfg` (windows, outlier bounds, run quantization at the
/// plan's native rate). Throws on plans whose truth would sit on a
/// quantization boundary (inconsistent spec).
std::pair<ActionTrajectory, PlantedTruth> generate_episode(const PlantSpec& spec,
                                                           const galt::GaltConfig& cfg = {});

/// Parameter ranges for corpus generation. Event times snap to the native
/// frame grid so the analytic truth stays exact under sampling; stride
/// evaluation at a coarser rate still sees real quantization.
struct CorpusSpec {
  int n = 0;
  double rate_hz = 60.0;
  std::uint64_t seed = 0;
  double galt_min_s = 0.0;
  double galt_max_s = 3.0;
  NoiseSpec noise;
  /// Fraction of episodes with no grasp on either arm (skip: no_gripper_event).
  double no_grasp_fraction = 0.0;
  /// Each plan's truth is also validated at rate_hz / validate_stride so
  /// stride evaluation cannot land on a quantization boundary; plans that
  /// would are nudged deterministically. 1 disables the extra check.
  int validate_stride = 3;
};

struct Corpus {
  std::vector<std::pair<std::string, ActionTrajectory>> episodes;  // id, trajectory
  std::vector<PlantedTruth> truths;
  std::vector<PlantSpec> specs;
};

/// n seeded episodes; element (seed, index) is reproducible in isolation.
Corpus generate_corpus(const CorpusSpec& spec, const galt::GaltConfig& cfg = {});

}  // namespace gale::synth
