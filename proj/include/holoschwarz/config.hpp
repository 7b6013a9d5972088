#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holoschwarz/criterion.hpp"
#include "holoschwarz/curve.hpp"
#include "holoschwarz/nehari.hpp"

namespace holoschwarz {

enum class Command {
  CheckCriterion,
  ExtremalProfile,
  Covering,
  VerifyIdentities,
  Injectivity,
  ReproduceExample,
  Boundary,
};

std::string to_string(Command c);
/// Throws ConfigError("invalid-value") for an unknown name.
Command parse_command(const std::string& name);

struct CurveConfig {
  /// identity | polynomial | exponential | mobius | tan | example1 | example2
  std::string kind = "identity";
  double c = 0.0;  // 0 = fixture default
  /// polynomial: components separated by ';', coefficients by ','.
  /// exponential, tan: scale, rate.  mobius: a, b, c, d.  Complex values as re:im.
  std::vector<std::vector<cplx>> coeffs;
  bool explicit_kind = false;
};

struct NehariConfig {
  /// constant | inverse_square | half_strip | tabulated
  std::string kind = "constant";
  double value = kPi * kPi / 4.0;
  double scale = 1.0;
  std::vector<double> table_x, table_p;
};

struct RunConfig {
  Command command = Command::CheckCriterion;
  std::uint64_t seed = 0;
  CurveConfig curve;
  NehariConfig nehari;
  GridSpec grid;
  std::string output_dir;  // empty: no CSV artifacts

  double profile_eps = 1e-6;

  std::size_t injectivity_samples = 10000;
  double injectivity_delta = 0.05;
  double injectivity_r_min = 0.0;

  std::vector<double> covering_radii{0.3, 0.5, 0.7, 0.9};
  int covering_resolution = 200;
  double covering_tolerance = 2e-3;

  double boundary_eps = 1e-3;
  int boundary_samples = 2048;
  int boundary_rays = 32;
  int boundary_s_points = 100;

  int example = 1;
  double example_c = 0.0;  // 0 = fixture default

  std::size_t suite_points = 16;
  /// Identity-suite tolerance overrides, by identity name.
  std::optional<double> tol_second_form, tol_lemma2, tol_precomposition, tol_s1_range_mobius;
};

/// Flat `section.key = value` lines; '#' starts a comment. The first problem is
/// reported as ConfigError with kind "syntax", "unknown-key" or "invalid-value"
/// and its line number.
RunConfig parse_config(const std::string& text);

/// Lists every accepted key with its default, one per line.
std::string config_reference();

HoloCurve build_curve(const CurveConfig& c);
NehariFunction build_nehari(const NehariConfig& n);

}  // namespace holoschwarz
