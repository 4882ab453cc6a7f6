#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace uavpath;

namespace {

DroneParams hand_params() {
  DroneParams p;
  p.weight_kg = 1.0;
  p.gravity = 10.0;
  p.blade_disc_area_m2 = 1.0;
  p.rotor_count = 2;
  p.speed_mps = 5.0;
  return p;
}

}  // namespace

TEST(AirDensity, SeaLevelIsReferenceDensity) {
  const DroneParams p;
  EXPECT_EQ(air_density(0.0, p), 1.225);
}

TEST(AirDensity, KnownAltitudes) {
  const DroneParams p;
  // Hand evaluation of 1.225 * (1 - 2.2558e-5 H)^4.2577.
  EXPECT_NEAR(air_density(100.0, p) / 1.225, 0.99043, 5e-6);
  EXPECT_NEAR(air_density(100.0, p), 1.2133, 5e-5);
  EXPECT_NEAR(air_density(1000.0, p) / 1.225, 0.90742, 5e-6);
  EXPECT_NEAR(air_density(1000.0, p), 1.1116, 5e-5);
}

TEST(AirDensity, OutOfRangeThrows) {
  const DroneParams p;
  EXPECT_THROW(air_density(-1.0, p), std::domain_error);
  EXPECT_THROW(air_density(1.0 / 2.2558e-5, p), std::domain_error);
  EXPECT_THROW(air_density(std::nan(""), p), std::domain_error);
}

TEST(AirDensity, StrictlyDecreasing) {
  const DroneParams p;
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    double a = rng.uniform(0.0, 40000.0), b = rng.uniform(0.0, 40000.0);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    EXPECT_GT(air_density(a, p), air_density(b, p));
  }
}

TEST(AverageDensity, MeanOfEndpoints) {
  const DroneParams p;
  EXPECT_EQ(average_density(0.0, 0.0, p), 1.225);
  EXPECT_NEAR(average_density(0.0, 1000.0, p), 1.1683, 5e-5);
  EXPECT_EQ(average_density(30.0, 700.0, p), average_density(700.0, 30.0, p));
}

TEST(SegmentEnergy, HandEvaluatedExample) {
  const DroneParams p = hand_params();
  EXPECT_EQ(segment_energy(0.0, 0.0, 2.0, p), 0.0);
  // sqrt(1000/8) * 5/5 + 1*10*4
  EXPECT_NEAR(segment_energy(3.0, 4.0, 2.0, p), std::sqrt(125.0) + 40.0, 1e-12);
  EXPECT_NEAR(segment_energy(3.0, 4.0, 2.0, p), 51.18034, 1e-5);
  EXPECT_NEAR(segment_energy(3.0, -4.0, 2.0, p), 11.18034, 1e-5);
}

TEST(SegmentEnergy, InvalidInputsThrow) {
  const DroneParams p;
  EXPECT_THROW(segment_energy(1.0, 0.0, 0.0, p), std::domain_error);
  EXPECT_THROW(segment_energy(-1.0, 0.0, 1.0, p), std::domain_error);
}

TEST(SegmentEnergy, ClimbAsymmetryIsWeightTimesGravity) {
  const DroneParams p;
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double d = rng.uniform(0.0, 50.0), dh = rng.uniform(0.0, 40.0), rho = rng.uniform(0.9, 1.3);
    const double diff = segment_energy(d, dh, rho, p) - segment_energy(d, -dh, rho, p);
    EXPECT_NEAR(diff, p.weight_kg * p.gravity * dh, 1e-12 * std::max(1.0, diff));
  }
}

TEST(SegmentEnergy, FlatSegmentMatchesThetaForm) {
  const DroneParams p;
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double d = rng.uniform(0.1, 50.0), rho = rng.uniform(0.9, 1.3);
    const double expected = p.theta() / std::sqrt(rho) * d / p.speed_mps;
    EXPECT_LT(testing_support::rel_err(segment_energy(d, 0.0, rho, p), expected), 1e-12);
  }
}

TEST(SegmentEnergy, MonotoneInDistanceAndClimb) {
  const DroneParams p;
  EXPECT_LT(segment_energy(5.0, 3.0, 1.2, p), segment_energy(6.0, 3.0, 1.2, p));
  EXPECT_LT(segment_energy(5.0, 3.0, 1.2, p), segment_energy(5.0, 4.0, 1.2, p));
}

TEST(DroneParamsTest, ThetaAndValidation) {
  const DroneParams p = hand_params();
  EXPECT_NEAR(p.theta(), std::sqrt(1000.0 / 4.0), 1e-12);
  DroneParams bad;
  bad.rotor_count = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = DroneParams{};
  bad.speed_mps = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_NO_THROW(DroneParams{}.validate());
}
