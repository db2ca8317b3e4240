#include <doctest.h>

#include <random>

#include "gale/normalization.hpp"
#include "gale/trajectory.hpp"

using namespace gale;

namespace {

ActionTrajectory blank_traj(Eigen::Index frames, double rate) {
  ActionTrajectory t;
  t.layout = canonical_layout();
  t.rate_hz = rate;
  t.data.setZero(frames, t.layout.total_dims);
  t.data.col(t.layout.left_gripper).setConstant(-1.0);
  t.data.col(t.layout.right_gripper).setConstant(-1.0);
  return t;
}

ActionTrajectory random_traj(std::mt19937& gen, Eigen::Index frames = 40, double rate = 60.0) {
  ActionTrajectory t = blank_traj(frames, rate);
  std::normal_distribution<double> d(0.0, 0.1);
  for (Eigen::Index r = 0; r < t.data.rows(); ++r)
    for (Eigen::Index c = 0; c < t.data.cols(); ++c) t.data(r, c) = d(gen);
  return t;
}

}  // namespace

TEST_CASE("layout: canonical is valid, overlaps rejected") {
  CHECK_NOTHROW(canonical_layout().validate());
  ActionLayout bad = canonical_layout();
  bad.right_gripper = 0;  // collides with left_ee_pos x
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = canonical_layout();
  bad.left_gripper = 19;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("neck_angular_speed: constant head pose gives all zeros") {
  auto t = blank_traj(50, 60.0);
  t.data.col(t.layout.head_joints[0]).setConstant(0.2);
  const auto track = neck_angular_speed(t);
  CHECK(track.values.size() == 49);
  CHECK(track.values.maxCoeff() == 0.0);
  CHECK(track.units == SpeedUnits::rad_per_s);
}

TEST_CASE("neck_angular_speed: single yaw step of 0.02 rad at 60 Hz reads 1.2 rad/s") {
  auto t = blank_traj(10, 60.0);
  for (Eigen::Index k = 5; k < 10; ++k) t.data(k, t.layout.head_joints[2]) = 0.02;
  const auto track = neck_angular_speed(t);
  CHECK(track.values[4] == doctest::Approx(1.2));
  for (Eigen::Index i = 0; i < track.values.size(); ++i)
    if (i != 4) CHECK(track.values[i] == 0.0);
}

TEST_CASE("ee_linear_speed: stationary arm is zero, straight reach averages distance/time") {
  auto t = blank_traj(61, 60.0);
  CHECK(ee_linear_speed(t, Arm::left).values.maxCoeff() == 0.0);

  // 0.30 m along x over exactly 1.0 s, any profile: mean speed 0.30 m/s.
  for (Eigen::Index k = 0; k < 61; ++k) {
    const double tau = static_cast<double>(k) / 60.0;
    t.data(k, t.layout.right_ee_pos[0]) = 0.30 * (3 * tau * tau - 2 * tau * tau * tau);
  }
  const auto track = ee_linear_speed(t, Arm::right);
  CHECK(track.values.mean() == doctest::Approx(0.30).epsilon(1e-9));
  CHECK(track.units == SpeedUnits::m_per_s);
}

TEST_CASE("gripper_events: constant command yields no events; one flip is frame-exact") {
  auto t = blank_traj(20, 60.0);
  CHECK(gripper_events(t, Arm::left).event_frames.empty());

  // [-1, -1, +1, +1] pattern: the sign changes at frame 2.
  auto t2 = blank_traj(4, 60.0);
  t2.data.col(t2.layout.left_gripper) << -1, -1, 1, 1;
  const auto ev = gripper_events(t2, Arm::left);
  REQUIRE(ev.event_frames.size() == 1);
  CHECK(ev.event_frames[0] == 2);
}

TEST_CASE("gripper_events: sign(0) counts as positive") {
  auto t = blank_traj(5, 60.0);
  t.data.col(t.layout.right_gripper) << -1, 0, -1, 0, 0;
  const auto ev = gripper_events(t, Arm::right);
  REQUIRE(ev.event_frames.size() == 3);
  CHECK(ev.event_frames[0] == 1);
  CHECK(ev.event_frames[1] == 2);
  CHECK(ev.event_frames[2] == 3);
}

TEST_CASE("gripper_events: hysteresis band suppresses chatter around zero") {
  auto t = blank_traj(8, 60.0);
  t.data.col(t.layout.left_gripper) << -1, -0.02, 0.03, -0.04, 0.02, -1, 1, 1;
  CHECK(gripper_events(t, Arm::left, 0.0).event_frames.size() > 2);
  const auto ev = gripper_events(t, Arm::left, 0.05);
  REQUIRE(ev.event_frames.size() == 1);
  CHECK(ev.event_frames[0] == 6);
}

TEST_CASE("downsample_stride: rate scaling, identity, and frame-count arithmetic") {
  auto t = blank_traj(601, 60.0);
  const auto d3 = downsample_stride(t, 3);
  CHECK(d3.rate_hz == doctest::Approx(20.0));
  CHECK(d3.frames() == 201);

  const auto d1 = downsample_stride(t, 1);
  CHECK(d1.frames() == t.frames());
  CHECK(d1.rate_hz == t.rate_hz);
  CHECK(d1.data == t.data);

  CHECK_THROWS_AS(downsample_stride(t, 0), std::invalid_argument);
}

TEST_CASE("property: speed tracks are translation invariant") {
  std::mt19937 gen(7);
  for (int rep = 0; rep < 25; ++rep) {
    auto t = random_traj(gen);
    auto shifted = t;
    for (int c : t.layout.left_ee_pos) shifted.data.col(c).array() += 1.75;
    for (int c : t.layout.head_joints) shifted.data.col(c).array() += -0.4;
    CHECK((ee_linear_speed(t, Arm::left).values - ee_linear_speed(shifted, Arm::left).values)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((neck_angular_speed(t).values - neck_angular_speed(shifted).values)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("property: downsample composition equals composite stride") {
  std::mt19937 gen(11);
  for (int rep = 0; rep < 10; ++rep) {
    auto t = random_traj(gen, 120);
    const auto ab = downsample_stride(downsample_stride(t, 2), 3);
    const auto composite = downsample_stride(t, 6);
    CHECK(ab.frames() == composite.frames());
    CHECK(ab.rate_hz == doctest::Approx(composite.rate_hz));
    CHECK(ab.data == composite.data);
  }
}

TEST_CASE("property: gripper events invariant under positive rescaling") {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> scale(0.1, 8.0);
  for (int rep = 0; rep < 25; ++rep) {
    auto t = random_traj(gen);
    auto scaled = t;
    scaled.data.col(t.layout.left_gripper) *= scale(gen);
    CHECK(gripper_events(t, Arm::left).event_frames ==
          gripper_events(scaled, Arm::left).event_frames);
  }
}

TEST_CASE("property: speed outputs are nonnegative with length T-1") {
  std::mt19937 gen(17);
  for (int rep = 0; rep < 25; ++rep) {
    auto t = random_traj(gen, 30 + rep);
    for (const auto& track : {ee_linear_speed(t, Arm::left), ee_linear_speed(t, Arm::right)}) {
      CHECK(track.values.size() == t.frames() - 1);
      CHECK(track.values.minCoeff() >= 0.0);
    }
    const auto neck = neck_angular_speed(t);
    CHECK(neck.values.size() == t.frames() - 1);
    CHECK(neck.values.minCoeff() >= 0.0);
  }
}

TEST_CASE("trajectory validation rejects short or mismatched inputs") {
  auto t = blank_traj(1, 60.0);
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t = blank_traj(5, 60.0);
  t.rate_hz = 0.0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t = blank_traj(5, 60.0);
  t.data.conservativeResize(5, 18);
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("fix_constant_dims: locked dimensions get identity normalization") {
  std::vector<DimStats> stats(19, DimStats{0.5, 0.2});
  stats[3] = {1.0, 0.0};
  stats[7] = {0.0, 0.0};
  stats[14] = {-2.0, 1e-12};
  stats[18] = {0.3, 5e-9};
  const auto spec = fix_constant_dims(stats, 1e-8);
  REQUIRE(spec.dims.size() == 19);
  int flagged = 0;
  for (size_t i = 0; i < spec.dims.size(); ++i) {
    if (spec.dims[i].identity) {
      ++flagged;
      CHECK(spec.dims[i].mean == 0.0);
      CHECK(spec.dims[i].std == 1.0);
      CHECK((i == 3 || i == 7 || i == 14 || i == 18));
    } else {
      CHECK(spec.dims[i].mean == stats[i].mean);
      CHECK(spec.dims[i].std == stats[i].std);
    }
  }
  CHECK(flagged == 4);
}

TEST_CASE("fix_constant_dims: passthrough above epsilon, negative std rejected") {
  const auto spec = fix_constant_dims({{0.4, 0.2}}, 1e-6);
  CHECK_FALSE(spec.dims[0].identity);
  CHECK(spec.dims[0].mean == 0.4);
  CHECK_THROWS_AS(fix_constant_dims({{0.0, -1.0}}), std::invalid_argument);
}

TEST_CASE("column_stats matches direct computation") {
  Eigen::MatrixXd m(4, 2);
  m << 1, 5, 2, 5, 3, 5, 4, 5;
  const auto stats = column_stats(m);
  CHECK(stats[0].mean == doctest::Approx(2.5));
  CHECK(stats[0].std == doctest::Approx(std::sqrt(1.25)));
  CHECK(stats[1].std == 0.0);
}
