#include "gale/galt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace gale::galt {

namespace {

// Maximal contiguous runs of v[t] < thresh over step indices [lo, hi],
// inclusive bounds. begin/end are step indices.
struct Run {
  Eigen::Index begin;
  Eigen::Index end;
  Eigen::Index length() const { return end - begin + 1; }
};

std::vector<Run> below_threshold_runs(const Eigen::VectorXd& v, double thresh, Eigen::Index lo,
                                      Eigen::Index hi) {
  std::vector<Run> runs;
  lo = std::max<Eigen::Index>(lo, 0);
  hi = std::min<Eigen::Index>(hi, v.size() - 1);
  Eigen::Index start = -1;
  for (Eigen::Index t = lo; t <= hi; ++t) {
    if (v[t] < thresh) {
      if (start < 0) start = t;
    } else if (start >= 0) {
      runs.push_back({start, t - 1});
      start = -1;
    }
  }
  if (start >= 0) runs.push_back({start, hi});
  return runs;
}

int priority(ArmStatus s) {
  switch (s) {
    case ArmStatus::outlier_high: return 5;
    case ArmStatus::outlier_low: return 4;
    case ArmStatus::no_fixation: return 3;
    case ArmStatus::no_hand_onset: return 2;
    case ArmStatus::no_gripper_event: return 1;
    case ArmStatus::ok: return 6;
  }
  return 0;
}

SkipCode to_skip(ArmStatus s) {
  switch (s) {
    case ArmStatus::no_gripper_event: return SkipCode::no_gripper_event;
    case ArmStatus::no_hand_onset: return SkipCode::no_hand_onset;
    case ArmStatus::no_fixation: return SkipCode::no_fixation;
    case ArmStatus::outlier_low: return SkipCode::outlier_low;
    case ArmStatus::outlier_high: return SkipCode::outlier_high;
    case ArmStatus::ok: break;
  }
  throw std::logic_error("to_skip: ok is not a skip status");
}

ArmDetection detect_arm(const ActionTrajectory& traj, Arm arm, const SignalTrack& neck,
                        const Eigen::MatrixXd& head, const GaltConfig& cfg) {
  ArmDetection det;
  det.arm = arm;

  const GripperEvents events = gripper_events(traj, arm, cfg.gripper_hysteresis);
  if (events.event_frames.empty()) {
    det.status = ArmStatus::no_gripper_event;
    return det;
  }
  const Eigen::Index anchor = events.event_frames.back();
  det.t_hand = anchor;

  const SignalTrack speed = ee_linear_speed(traj, arm);
  det.t_onset = detect_hand_onset(speed, anchor, cfg, traj.rate_hz);
  if (!det.t_onset) {
    det.status = ArmStatus::no_hand_onset;
    return det;
  }

  det.t_head = detect_head_fixation(neck, head, anchor, cfg, traj.rate_hz);
  if (!det.t_head) {
    det.status = ArmStatus::no_fixation;
    return det;
  }

  const double g = static_cast<double>(anchor - *det.t_head) / traj.rate_hz;
  if (g < cfg.outlier_min_s) {
    det.status = ArmStatus::outlier_low;
    det.t_head.reset();
    return det;
  }
  if (g > cfg.outlier_max_s) {
    det.status = ArmStatus::outlier_high;
    det.t_head.reset();
    return det;
  }
  det.galt_s = g;
  det.status = ArmStatus::ok;
  return det;
}

}  // namespace

void GaltConfig::validate() const {
  if (!(v_hand_thresh > 0) || !(v_sac_thresh > 0) || !(k_fix_s > 0) ||
      !(min_stable_for_onset_s > 0) || !(lookback_s > 0) || !(forward_slack_s > 0) ||
      !(arrival_margin_rad > 0))
    throw std::invalid_argument("GaltConfig: thresholds and windows must be positive");
  if (gripper_hysteresis < 0)
    throw std::invalid_argument("GaltConfig: gripper_hysteresis must be >= 0");
  if (!(outlier_min_s < outlier_max_s))
    throw std::invalid_argument("GaltConfig: outlier_min_s must be < outlier_max_s");
}

const char* to_string(ArmStatus s) {
  switch (s) {
    case ArmStatus::ok: return "ok";
    case ArmStatus::no_gripper_event: return "no_gripper_event";
    case ArmStatus::no_hand_onset: return "no_hand_onset";
    case ArmStatus::no_fixation: return "no_fixation";
    case ArmStatus::outlier_low: return "outlier_low";
    case ArmStatus::outlier_high: return "outlier_high";
  }
  return "?";
}

const char* to_string(SkipCode c) {
  switch (c) {
    case SkipCode::no_gripper_event: return "no_gripper_event";
    case SkipCode::no_hand_onset: return "no_hand_onset";
    case SkipCode::no_fixation: return "no_fixation";
    case SkipCode::outlier_low: return "outlier_low";
    case SkipCode::outlier_high: return "outlier_high";
    case SkipCode::ambiguous_arms: return "ambiguous_arms";
  }
  return "?";
}

std::optional<SkipCode> skip_code_from_string(std::string_view s) {
  for (SkipCode c : {SkipCode::no_gripper_event, SkipCode::no_hand_onset, SkipCode::no_fixation,
                     SkipCode::outlier_low, SkipCode::outlier_high, SkipCode::ambiguous_arms})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

int required_steps(double seconds, double rate_hz) {
  // Guarded ceil: 0.3 * 20 must quantize to 6 steps, not 7.
  const double x = seconds * rate_hz;
  return std::max(1, static_cast<int>(std::ceil(x - 1e-9)));
}

std::optional<Eigen::Index> detect_hand_onset(const SignalTrack& speed, Eigen::Index anchor,
                                              const GaltConfig& cfg, double rate_hz) {
  if (anchor < 0 || anchor > speed.values.size())
    throw std::invalid_argument("detect_hand_onset: anchor outside track range");
  const int need = required_steps(cfg.min_stable_for_onset_s, rate_hz);
  const auto runs = below_threshold_runs(speed.values, cfg.v_hand_thresh, 0, anchor - 1);
  for (auto it = runs.rbegin(); it != runs.rend(); ++it)
    if (it->length() >= need) return it->end;
  return std::nullopt;
}

std::optional<Eigen::Index> detect_head_fixation(const SignalTrack& neck_speed,
                                                 const Eigen::MatrixXd& head_joints,
                                                 Eigen::Index anchor, const GaltConfig& cfg,
                                                 double rate_hz) {
  const Eigen::Index n_frames = head_joints.rows();
  if (anchor < 0 || anchor >= n_frames)
    throw std::invalid_argument("detect_head_fixation: anchor outside track range");
  const int need = required_steps(cfg.k_fix_s, rate_hz);
  const auto lookback = static_cast<Eigen::Index>(std::ceil(cfg.lookback_s * rate_hz - 1e-9));
  const auto slack = static_cast<Eigen::Index>(std::ceil(cfg.forward_slack_s * rate_hz - 1e-9));
  const Eigen::Index w_lo = std::max<Eigen::Index>(0, anchor - lookback);
  const Eigen::Index w_hi = std::min<Eigen::Index>(n_frames - 1, anchor + slack);

  // Runs of steps lying fully inside the frame window [w_lo, w_hi].
  const auto runs = below_threshold_runs(neck_speed.values, cfg.v_sac_thresh, w_lo, w_hi - 1);
  const Run* best = nullptr;
  for (const auto& r : runs) {
    if (r.length() < need) continue;
    if (!best) {
      best = &r;
      continue;
    }
    const Eigen::Index d = std::abs(r.begin - anchor);
    const Eigen::Index d_best = std::abs(best->begin - anchor);
    if (d < d_best || (d == d_best && r.begin < best->begin)) best = &r;
  }
  if (!best) return std::nullopt;

  // Held pose: mean over all frames the run touches (steps begin..end cover
  // frames begin..end+1).
  const Eigen::Vector3d held =
      head_joints.middleRows(best->begin, best->length() + 1).colwise().mean();

  // Arrival refinement: walk back while the pose stays inside the L-inf
  // margin, recovering smooth decelerations that dip under the speed floor
  // only after reaching the fixation direction.
  Eigen::Index t = best->begin;
  while (t > 0 &&
         (head_joints.row(t - 1).transpose() - held).cwiseAbs().maxCoeff() <= cfg.arrival_margin_rad)
    --t;
  return t;
}

GaltOutcome detect_galt(const ActionTrajectory& traj, const GaltConfig& cfg,
                        std::string episode_id) {
  cfg.validate();
  traj.validate();

  GaltOutcome out;
  out.episode_id = std::move(episode_id);

  const SignalTrack neck = neck_angular_speed(traj);
  const auto& h = traj.layout.head_joints;
  const Eigen::MatrixXd head = traj.data(Eigen::all, std::vector<int>{h[0], h[1], h[2]});

  out.per_arm[0] = detect_arm(traj, Arm::left, neck, head, cfg);
  out.per_arm[1] = detect_arm(traj, Arm::right, neck, head, cfg);

  const bool left_ok = out.per_arm[0].status == ArmStatus::ok;
  const bool right_ok = out.per_arm[1].status == ArmStatus::ok;
  if (left_ok && right_ok) {
    out.skip = SkipCode::ambiguous_arms;
  } else if (left_ok || right_ok) {
    const ArmDetection& d = left_ok ? out.per_arm[0] : out.per_arm[1];
    out.galt_s = d.galt_s;
    out.arm = d.arm;
  } else {
    // Most informative skip reason: the arm that progressed furthest wins.
    const ArmDetection& d = priority(out.per_arm[0].status) >= priority(out.per_arm[1].status)
                                ? out.per_arm[0]
                                : out.per_arm[1];
    out.skip = to_skip(d.status);
  }
  return out;
}

std::vector<GaltOutcome> detect_galt_batch(
    const std::vector<std::pair<std::string, ActionTrajectory>>& episodes, const GaltConfig& cfg,
    int workers) {
  std::vector<GaltOutcome> out(episodes.size());
  if (episodes.empty()) return out;

  auto run_one = [&](size_t i) {
    try {
      out[i] = detect_galt(episodes[i].second, cfg, episodes[i].first);
    } catch (const std::exception& e) {
      out[i] = GaltOutcome{};
      out[i].episode_id = episodes[i].first;
      out[i].error = e.what();
    }
  };

  unsigned n_workers = workers > 0 ? static_cast<unsigned>(workers)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(episodes.size()));
  if (n_workers <= 1) {
    for (size_t i = 0; i < episodes.size(); ++i) run_one(i);
    return out;
  }

  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < episodes.size(); i = next.fetch_add(1)) run_one(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace gale::galt
