#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "elastoscat/inverse_phaseless.hpp"

namespace elastoscat {

struct GridConfig {
  /// Forward grid for synthetic data (differs from the inversion grid).
  int n_forward = 100;
  /// Forward grid inside the iteration.
  int n_inverse = 64;
  /// Grid on the reference ball; 0 means the grid of the other body.
  int n_ball = 0;
  int observations_phased = 128;
  int observations_phaseless = 64;
};

struct NoiseConfig {
  double level = 0.01;
  NoiseModel model = NoiseModel::Uniform;
};

/// Everything one CLI run needs. Sections: material, wave, obstacle, ball,
/// grids, inversion, noise, seed.
struct RunConfig {
  MaterialParams material;
  IncidentWave wave;
  std::optional<StarlikeCurve> obstacle;
  std::optional<ReferenceBallSpec> ball;
  GridConfig grids;
  InverseConfig inversion;
  NoiseConfig noise;
  std::uint64_t seed = 1;

  void validate() const;
  /// Inversion settings with the iteration grid filled in from `grids`.
  InverseConfig inverse_config() const;
};

/// Numbers or strings such as "pi/8", "13pi/8", "-2*pi/3", "0.25".
double parse_angle(const std::string& text);

/// Throws ParseError on malformed JSON, unknown keys or wrong types, and
/// InvalidArgument on out-of-range values.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
/// Canonical JSON; parse_config(dump_config(c)) reproduces c.
std::string dump_config(const RunConfig& config);

}  // namespace elastoscat
