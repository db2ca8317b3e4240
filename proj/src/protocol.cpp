#include "gale/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "gale/galt.hpp"
#include "gale/rng.hpp"

namespace gale::protocol {

namespace {

// Randomization geometry. Range widths and success thresholds follow the
// benchmark's published task cards; workspace centers are tool defaults and
// can be overridden through a task file.
constexpr double kWorkX = 0.55;   // nominal workspace center, metres from base
constexpr double kLightX = 0.65;  // status-light column
constexpr double kShelfX = 0.60;

Interval around(double center, double width) { return {center - width / 2, center + width / 2}; }

std::vector<TaskSpec> make_builtin_tasks() {
  std::vector<TaskSpec> tasks;

  {
    TaskSpec t;
    t.name = "conditional-pick";
    t.id_region.objects = {
        {"object_left", around(kWorkX, 0.10), around(0.20, 0.10), std::nullopt, std::nullopt},
        {"object_right", around(kWorkX, 0.10), around(-0.20, 0.10), std::nullopt, std::nullopt},
        {"cue_card", around(kWorkX, 0.10), around(0.0, 0.10), std::nullopt, std::nullopt},
    };
    t.ood_region.objects = {
        {"object_left", around(kWorkX, 0.20), around(0.22, 0.25), std::nullopt, std::nullopt},
        {"object_right", around(kWorkX, 0.20), around(-0.22, 0.25), std::nullopt, std::nullopt},
        {"cue_card", around(kWorkX, 0.20), around(0.0, 0.16), std::nullopt, std::nullopt},
    };
    t.success = {"target", Axis::z, Comparator::greater, 1.20, 1.0, 0.25, false};
    t.prompts = {"Look at the card. If it is red, pick the object on the left. If it is green, "
                 "pick the object on the right."};
    tasks.push_back(std::move(t));
  }

  {
    TaskSpec t;
    t.name = "wait-then-act";
    t.id_region.objects = {
        {"object", around(kWorkX, 0.10), around(0.0, 0.24), std::nullopt, std::nullopt},
        {"status_light", around(kLightX, 0.10), around(0.0, 0.20), std::nullopt, std::nullopt},
    };
    t.id_region.cue_delay_s = Interval{2.0, 5.0};
    t.ood_region.objects = {
        {"object", around(kWorkX, 0.20), around(0.0, 0.40), std::nullopt, std::nullopt},
        {"status_light", around(kLightX, 0.20), around(0.0, 0.30), std::nullopt, std::nullopt},
    };
    t.ood_region.cue_delay_s = Interval{2.0, 8.0};
    t.success = {"object", Axis::z, Comparator::greater, 1.20, 1.0, 0.25, true};
    t.prompts = {"Watch the red light. When it turns green, pick up the object."};
    tasks.push_back(std::move(t));
  }

  auto clutter_region = [&](double wx, double wy, double sep) {
    RegionSpec r;
    r.objects.push_back({"red_cube", around(kWorkX, wx), around(0.0, wy), std::nullopt, std::nullopt});
    for (int i = 0; i < 4; ++i)
      r.objects.push_back({"distractor_" + std::to_string(i), around(kWorkX, wx), around(0.0, wy),
                           std::nullopt, std::nullopt});
    r.min_separation_m = sep;
    return r;
  };

  {
    TaskSpec t;
    t.name = "clutter-pick-cube";
    t.id_region = clutter_region(0.10, 0.50, 0.10);
    t.ood_region = clutter_region(0.20, 0.70, 0.05);
    t.success = {"red_cube", Axis::z, Comparator::greater, 1.20, 1.0, 0.25, false};
    t.prompts = {"Find the red cube and pick it up."};
    tasks.push_back(std::move(t));
  }

  {
    TaskSpec t;
    t.name = "clutter-pick-lift";
    t.id_region = clutter_region(0.10, 0.50, 0.10);
    t.ood_region = clutter_region(0.20, 0.70, 0.05);
    t.id_region.objects[0].name = "target";
    t.ood_region.objects[0].name = "target";
    t.success = {"target", Axis::z, Comparator::greater, 1.20, 1.0, 0.25, false};
    t.prompts = {
        "Pick up the tomato soup can and lift it.",
        "Grasp the soup can and hold it up.",
        "Lift the red soup can off the table.",
        "Pick up the potted meat can and lift it.",
        "Grasp the can of spam and hold it up.",
        "Lift the meat can off the table.",
        "Pick up the tuna fish can and lift it.",
        "Grasp the tuna can and hold it up.",
        "Lift the tuna fish can off the table.",
        "Pick up the gelatin box and lift it.",
        "Grasp the gelatin box and hold it up.",
        "Lift the gelatin box off the table.",
        "Pick up the pudding box and lift it.",
        "Grasp the pudding box and hold it up.",
        "Lift the pudding box off the table.",
    };
    tasks.push_back(std::move(t));
  }

  {
    TaskSpec t;
    t.name = "multi-shelf-scan";
    // Five shelf slots (two low, two mid, one top); per-slot jitter.
    const double slot_y[5] = {-0.20, 0.20, -0.20, 0.20, 0.0};
    for (int i = 0; i < 5; ++i) {
      const std::string name = "shelf_obj_" + std::to_string(i);
      t.id_region.objects.push_back(
          {name, around(kShelfX, 0.06), around(slot_y[i], 0.06), std::nullopt, std::nullopt});
      t.ood_region.objects.push_back(
          {name, around(kShelfX, 0.06), around(slot_y[i], 0.20), std::nullopt, std::nullopt});
    }
    t.success = {"target", Axis::x, Comparator::less, 0.46, 1.0, 0.25, false};
    t.prompts = {
        "Find the tomato soup can on the shelf and bring it to me.",
        "Retrieve the soup can from the shelves.",
        "Look through the shelves, find the red soup can, and take it.",
        "Find the potted meat can on the shelf and bring it to me.",
        "Retrieve the spam can from the shelves.",
        "Look through the shelves, find the meat can, and take it.",
        "Find the tuna fish can on the shelf and bring it to me.",
        "Retrieve the tuna can from the shelves.",
        "Look through the shelves, find the tuna can, and take it.",
        "Find the gelatin box on the shelf and bring it to me.",
        "Retrieve the gelatin box from the shelves.",
        "Look through the shelves, find the gelatin box, and take it.",
        "Find the pudding box on the shelf and bring it to me.",
        "Retrieve the pudding box from the shelves.",
        "Look through the shelves, find the pudding box, and take it.",
    };
    tasks.push_back(std::move(t));
  }

  {
    TaskSpec t;
    t.name = "peeking-box";
    t.id_region.objects = {
        {"box", around(kWorkX, 0.04), around(0.0, 0.08), Interval{-5.0, 5.0}, std::nullopt},
        {"object", around(0.0, 0.08), around(0.0, 0.04), std::nullopt, 0},  // jitter inside box
    };
    t.ood_region.objects = {
        {"box", around(kWorkX, 0.08), around(0.0, 0.08), Interval{-10.0, 10.0}, std::nullopt},
        {"object", around(0.0, 0.08), around(0.0, 0.08), std::nullopt, 0},
    };
    t.success = {"object", Axis::z, Comparator::greater, 1.25, 1.0, 0.25, false};
    t.prompts = {"Retrieve the object from inside the box."};
    tasks.push_back(std::move(t));
  }

  {
    TaskSpec t;
    t.name = "occluded-reach";
    t.id_region.objects = {
        {"object", around(kWorkX, 0.10), around(0.0, 0.40), std::nullopt, std::nullopt}};
    t.ood_region.objects = {
        {"object", around(kWorkX, 0.17), around(0.0, 0.60), std::nullopt, std::nullopt}};
    t.success = {"object", Axis::z, Comparator::greater, 1.25, 1.0, 0.25, false};
    t.prompts = {"Reach around the screen and pick up the object behind it."};
    tasks.push_back(std::move(t));
  }

  {
    TaskSpec t;
    t.name = "blocked-clutter-pick-cube";
    t.id_region = clutter_region(0.10, 0.50, 0.10);
    t.ood_region = clutter_region(0.20, 0.70, 0.05);
    t.success = {"red_cube", Axis::z, Comparator::greater, 1.20, 1.0, 0.25, false};
    t.prompts = {"Find the red cube and pick it up."};
    tasks.push_back(std::move(t));
  }

  return tasks;
}

}  // namespace

const std::vector<TaskSpec>& builtin_tasks() {
  static const std::vector<TaskSpec> tasks = make_builtin_tasks();
  return tasks;
}

const TaskSpec* find_task(const std::vector<TaskSpec>& tasks, std::string_view name) {
  for (const auto& t : tasks)
    if (t.name == name) return &t;
  return nullptr;
}

const char* to_string(Split s) {
  switch (s) {
    case Split::id: return "id";
    case Split::ood_spatial: return "ood-spatial";
    case Split::ood_init_pose: return "ood-init-pose";
  }
  return "?";
}

std::optional<Split> split_from_string(std::string_view s) {
  if (s == "id") return Split::id;
  if (s == "ood-spatial") return Split::ood_spatial;
  if (s == "ood-init-pose") return Split::ood_init_pose;
  return std::nullopt;
}

SplitSample sample_split(const TaskSpec& task, Split split, std::uint64_t seed) {
  // ood-init-pose perturbs only the robot; objects come from the id region.
  const RegionSpec& region = split == Split::ood_spatial ? task.ood_region : task.id_region;
  if (region.objects.empty()) throw std::invalid_argument("sample_split: task has no objects");

  SplitSample sample;
  sample.task = task.name;
  sample.split = split;
  sample.seed = seed;

  // One stream per object; a rejection round consumes the next triple from
  // every stream, so the k-th accepted configuration is reproducible.
  std::vector<StreamRng> streams;
  streams.reserve(region.objects.size());
  for (const auto& obj : region.objects)
    streams.emplace_back(seed, "task/" + task.name + "/obj/" + obj.name);

  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    std::vector<ObjectPose> poses(region.objects.size());
    for (size_t i = 0; i < region.objects.size(); ++i) {
      const ObjectRange& obj = region.objects[i];
      ObjectPose p;
      p.name = obj.name;
      p.x = streams[i].uniform(obj.x.lo, obj.x.hi);
      p.y = streams[i].uniform(obj.y.lo, obj.y.hi);
      p.yaw_deg = obj.yaw_deg ? streams[i].uniform(obj.yaw_deg->lo, obj.yaw_deg->hi) : 0.0;
      if (obj.relative_to) {
        const int parent = *obj.relative_to;
        if (parent < 0 || static_cast<size_t>(parent) >= i)
          throw std::invalid_argument("sample_split: relative_to must name an earlier object");
        p.x += poses[static_cast<size_t>(parent)].x;
        p.y += poses[static_cast<size_t>(parent)].y;
      }
      poses[i] = p;
    }

    bool ok = true;
    if (region.min_separation_m) {
      const double min_sep = *region.min_separation_m;
      for (size_t a = 0; a < poses.size() && ok; ++a) {
        if (region.objects[a].relative_to) continue;
        for (size_t b = a + 1; b < poses.size() && ok; ++b) {
          if (region.objects[b].relative_to) continue;
          const double dx = poses[a].x - poses[b].x;
          const double dy = poses[a].y - poses[b].y;
          if (std::sqrt(dx * dx + dy * dy) < min_sep) ok = false;
        }
      }
    }
    if (!ok) continue;

    sample.object_poses = std::move(poses);
    if (region.cue_delay_s) {
      StreamRng rng(seed, "task/" + task.name + "/cue_delay");
      sample.cue_delay_s = rng.uniform(region.cue_delay_s->lo, region.cue_delay_s->hi);
    }
    if (task.prompts.size() > 1) {
      StreamRng rng(seed, "task/" + task.name + "/prompt");
      sample.prompt_index = static_cast<int>(rng.uniform_index(task.prompts.size()));
    }
    if (split == Split::ood_init_pose) {
      StreamRng rng(seed, "task/" + task.name + "/reset");
      ResetPerturbation pert;
      for (int a = 0; a < 3; ++a) pert.ee_left_delta[a] = rng.gaussian(0.0, kResetPosSigmaM);
      for (int a = 0; a < 3; ++a) pert.ee_right_delta[a] = rng.gaussian(0.0, kResetPosSigmaM);
      pert.neck_yaw_delta_rad = rng.gaussian(0.0, kResetHeadSigmaRad);
      pert.neck_pitch_delta_rad = rng.gaussian(0.0, kResetHeadSigmaRad);
      sample.reset_perturbation = pert;
    }
    return sample;
  }
  throw std::runtime_error("sample_split: no separation-feasible placement in " +
                           std::to_string(kMaxSampleAttempts) + " attempts");
}

SuccessResult check_success(const TaskSpec& task, const SceneStateTrack& track) {
  if (!(track.rate_hz > 0)) throw std::invalid_argument("check_success: rate_hz must be positive");
  const Eigen::Index n = track.frames();
  if (track.ee_speed_right.size() != n)
    throw std::invalid_argument("check_success: ee speed tracks differ in length");
  if (track.light_green && static_cast<Eigen::Index>(track.light_green->size()) != n)
    throw std::invalid_argument("check_success: light channel length mismatch");

  const auto it = track.object_positions.find(task.success.target);
  if (it == track.object_positions.end())
    throw std::invalid_argument("check_success: track has no channel for target object '" +
                                task.success.target + "'");
  if (it->second.rows() != n)
    throw std::invalid_argument("check_success: target channel length mismatch");

  const int coord = task.success.axis == Axis::x ? 0 : 2;
  const auto hold_steps = static_cast<Eigen::Index>(
      std::ceil(task.success.hold_s * track.rate_hz - 1e-9));
  if (n - 1 < hold_steps)
    throw std::invalid_argument("check_success: track shorter than the hold window");

  const bool gate_light = task.success.require_light && track.light_green.has_value();

  auto frame_ok = [&](Eigen::Index k) {
    const double v = it->second(k, coord);
    const bool pos_ok =
        task.success.cmp == Comparator::greater ? v > task.success.threshold_m
                                                : v < task.success.threshold_m;
    if (!pos_ok) return false;
    if (track.ee_speed_left[k] >= task.success.ee_speed_max) return false;
    if (track.ee_speed_right[k] >= task.success.ee_speed_max) return false;
    if (gate_light && !(*track.light_green)[static_cast<size_t>(k)]) return false;
    return true;
  };

  Eigen::Index good = 0;  // trailing count of consecutive qualifying frames
  for (Eigen::Index k = 0; k < n; ++k) {
    good = frame_ok(k) ? good + 1 : 0;
    if (good >= hold_steps + 1) {
      SuccessResult r;
      r.success = true;
      r.first_success_s = static_cast<double>(k - hold_steps) / track.rate_hz;
      return r;
    }
  }
  return {};
}

}  // namespace gale::protocol
