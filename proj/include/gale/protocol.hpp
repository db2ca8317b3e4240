#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gale::protocol {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// One placeable entity: a rectangular x/y range in metres, an optional yaw
/// range in degrees, and optionally a parent whose sampled pose this one is
/// placed relative to (e.g. an object jittered inside a container).
struct ObjectRange {
  std::string name;
  Interval x;
  Interval y;
  std::optional<Interval> yaw_deg;
  std::optional<int> relative_to;  // index into RegionSpec::objects
};

struct RegionSpec {
  std::vector<ObjectRange> objects;
  std::optional<double> min_separation_m;  // pairwise, between absolute-placed object centers
  std::optional<Interval> cue_delay_s;
};

enum class Axis { x, z };
enum class Comparator { greater, less };

/// Success: the target coordinate satisfies the threshold while both EE
/// speeds stay under ee_speed_max for hold_s seconds. Tasks with a status
/// light additionally require the light-green channel when the track has one.
struct SuccessSpec {
  std::string target;
  Axis axis = Axis::z;
  Comparator cmp = Comparator::greater;
  double threshold_m = 1.2;
  double ee_speed_max = 1.0;  // m/s
  double hold_s = 0.25;
  bool require_light = false;
};

struct TaskSpec {
  std::string name;
  RegionSpec id_region;
  RegionSpec ood_region;
  SuccessSpec success;
  std::vector<std::string> prompts;  // selectable by prompt_index
};

/// The eight built-in tasks with their randomization ranges and success
/// thresholds.
const std::vector<TaskSpec>& builtin_tasks();
const TaskSpec* find_task(const std::vector<TaskSpec>& tasks, std::string_view name);

enum class Split { id, ood_spatial, ood_init_pose };

const char* to_string(Split s);
std::optional<Split> split_from_string(std::string_view s);

struct ObjectPose {
  std::string name;
  double x = 0.0;
  double y = 0.0;
  double yaw_deg = 0.0;
};

/// Gaussian reset-pose perturbation: per-axis sigma 0.10 m on both EE
/// positions, 0.175 rad on neck yaw and pitch; roll untouched.
struct ResetPerturbation {
  Eigen::Vector3d ee_left_delta{0, 0, 0};   // metres
  Eigen::Vector3d ee_right_delta{0, 0, 0};  // metres
  double neck_yaw_delta_rad = 0.0;
  double neck_pitch_delta_rad = 0.0;
};

inline constexpr double kResetPosSigmaM = 0.10;
inline constexpr double kResetHeadSigmaRad = 0.175;
inline constexpr int kMaxSampleAttempts = 1000;

struct SplitSample {
  std::string task;
  Split split = Split::id;
  std::uint64_t seed = 0;
  std::vector<ObjectPose> object_poses;
  std::optional<ResetPerturbation> reset_perturbation;  // present iff ood-init-pose
  std::optional<double> cue_delay_s;
  std::optional<int> prompt_index;
};

/// Deterministic sample for (task, split, seed). Object poses are drawn
/// uniformly inside the split's region (the id region for ood-init-pose,
/// which only perturbs the robot) with rejection until min_separation holds;
/// exhausting the attempt budget throws. Draw streams are split per object
/// (see docs/FORMATS.md) so samples are reproducible element-wise.
SplitSample sample_split(const TaskSpec& task, Split split, std::uint64_t seed);

/// Logged scene-state stream used for success checking.
struct SceneStateTrack {
  double rate_hz = 0.0;
  std::map<std::string, Eigen::Matrix<double, Eigen::Dynamic, 3>> object_positions;  // metres
  Eigen::VectorXd ee_speed_left;   // m/s, length T
  Eigen::VectorXd ee_speed_right;  // m/s, length T
  std::optional<std::vector<std::uint8_t>> light_green;  // per-frame flag

  Eigen::Index frames() const { return ee_speed_left.size(); }
};

struct SuccessResult {
  bool success = false;
  std::optional<double> first_success_s;  // start of the earliest qualifying window
};

SuccessResult check_success(const TaskSpec& task, const SceneStateTrack& track);

}  // namespace gale::protocol
