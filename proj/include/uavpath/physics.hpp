#ifndef UAVPATH_PHYSICS_HPP_
#define UAVPATH_PHYSICS_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uavpath {

// Air-density lapse constants of the standard-atmosphere relative density
// (1 - c*H)^e.
inline constexpr double kDensityLapse = 2.2558e-5;
inline constexpr double kDensityExponent = 4.2577;

struct DroneParams {
  double weight_kg = 1.5;               // drone plus battery
  double gravity = 9.81;                // m/s^2
  double blade_disc_area_m2 = 0.2;      // area of one spinning blade disc
  int rotor_count = 4;
  double speed_mps = 10.0;              // constant cruise speed
  double sea_level_density = 1.225;     // kg/m^3

  /// Density-free energy scalar: W^{3/2} * sqrt(g^3 / (2 * zeta * n)).
  double theta() const {
    return std::pow(weight_kg, 1.5) * std::sqrt(gravity * gravity * gravity / (2.0 * blade_disc_area_m2 * rotor_count));
  }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string("drone parameter ") + name + " must be positive");
    };
    positive(weight_kg, "weight_kg");
    positive(gravity, "gravity");
    positive(blade_disc_area_m2, "blade_disc_area_m2");
    if (rotor_count < 1) throw std::invalid_argument("drone parameter rotor_count must be positive");
    positive(speed_mps, "speed_mps");
    positive(sea_level_density, "sea_level_density");
  }

  friend bool operator==(const DroneParams&, const DroneParams&) = default;
};

/// Absolute air density (kg/m^3) at altitude H meters.
inline double air_density(double altitude_m, const DroneParams& params) {
  if (!(altitude_m >= 0.0) || !(altitude_m < 1.0 / kDensityLapse)) {
    throw std::domain_error("air_density: altitude " + std::to_string(altitude_m) + " m out of range");
  }
  return params.sea_level_density * std::pow(1.0 - kDensityLapse * altitude_m, kDensityExponent);
}

/// Arithmetic mean of the endpoint densities of a segment.
inline double average_density(double altitude_a, double altitude_b, const DroneParams& params) {
  return (air_density(altitude_a, params) + air_density(altitude_b, params)) / 2.0;
}

/// Energy (J) to fly a segment with horizontal length `horizontal_m` and
/// signed altitude change `climb_m` through air of density `density`:
/// translation over the 3D length plus W*g per meter climbed. Descents
/// add nothing beyond translation.
inline double segment_energy(double horizontal_m, double climb_m, double density, const DroneParams& params) {
  if (!(density > 0.0)) throw std::domain_error("segment_energy: density must be positive");
  if (horizontal_m < 0.0) throw std::domain_error("segment_energy: negative horizontal distance");
  const double w = params.weight_kg;
  const double g = params.gravity;
  const double translation = std::pow(w, 1.5) *
                             std::sqrt(g * g * g / (2.0 * density * params.blade_disc_area_m2 * params.rotor_count)) *
                             std::hypot(horizontal_m, climb_m) / params.speed_mps;
  return translation + w * g * std::max(climb_m, 0.0);
}

}  // namespace uavpath

#endif  // UAVPATH_PHYSICS_HPP_
