#pragma once

#include <string_view>

namespace orfd {

/// Material data for one layer of the three-layer beam.
///
/// Moduli are carried in GPa: the coefficient formulas below reproduce the
/// reference PZT/rubber/aluminium values only in that unit (B and C are
/// invariant under a common modulus scaling, P is not). Lengths are in m.
struct LayerSpec {
  double rho = 0.0;        ///< mass density, kg/m^3
  double thickness = 0.0;  ///< m
  double youngs_gpa = 0.0;
  double shear_gpa = 0.0;
  double poisson = 0.0;    ///< 0 <= nu < 0.5

  bool operator==(const LayerSpec&) const = default;
};

inline constexpr double kDefaultTimeScale = 0.1;

/// Scalars of  z_tt + z'''' - B phi' = 0,  -C phi'' + P phi = -B z'''.
struct BeamCoefficients {
  double B = 0.0;
  double C = 0.0;
  double P = 0.0;
  /// t* = time_scale * t; only used when reporting physical times.
  double time_scale = kDefaultTimeScale;

  bool operator==(const BeamCoefficients&) const = default;
};

/// Throws ValidationError naming `name`.<field> on the first violated invariant.
void validate(const LayerSpec& layer, std::string_view name = "layer");
void validate(const BeamCoefficients& coeffs);

/// Flexural modulus D = E / (12 (1 - nu^2)).
double flexural_modulus(const LayerSpec& layer);

/// Closed-form B, C, P of the Mead-Marcus three-layer model.  Only the
/// thicknesses, Young's moduli and Poisson ratios of the faces and the core
/// thickness and shear modulus enter.
BeamCoefficients derive_coefficients(const LayerSpec& top, const LayerSpec& core,
                                     const LayerSpec& bottom,
                                     double time_scale = kDefaultTimeScale);

struct ShearCondition {
  bool holds = false;
  double margin = 0.0;
};

/// margin = (C/P - h^2/4) - 2.5 B^2/P.  A negative margin withholds the
/// discrete observability certificate but does not stop a simulation.
ShearCondition large_shear_condition(const BeamCoefficients& coeffs, double h);

/// (2/L)(T - 2c) with c = max(L, L^3/pi^2).  Non-positive means no bound.
double pde_observability_bound(double T, double L);

}  // namespace orfd
