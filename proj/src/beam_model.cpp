#include "orfd/beam_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "orfd/errors.hpp"

namespace orfd {

namespace {

void require(bool ok, std::string_view name, std::string_view field, std::string_view what) {
  if (!ok) {
    throw ValidationError(std::string(name) + "." + std::string(field) + " " + std::string(what));
  }
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const LayerSpec& layer, std::string_view name) {
  require(positive(layer.rho), name, "rho", "must be positive");
  require(positive(layer.thickness), name, "thickness", "must be positive");
  require(positive(layer.youngs_gpa), name, "youngs", "must be positive");
  require(positive(layer.shear_gpa), name, "shear", "must be positive");
  require(std::isfinite(layer.poisson) && layer.poisson >= 0.0 && layer.poisson < 0.5, name,
          "poisson", "must lie in [0, 0.5)");
}

void validate(const BeamCoefficients& coeffs) {
  require(positive(coeffs.C), "coefficients", "C", "must be positive");
  require(positive(coeffs.P), "coefficients", "P", "must be positive");
  // B = 0 is the decoupled Euler-Bernoulli limit and is accepted.
  require(std::isfinite(coeffs.B) && coeffs.B >= 0.0, "coefficients", "B",
          "must be non-negative");
  require(positive(coeffs.time_scale), "coefficients", "time_scale", "must be positive");
}

double flexural_modulus(const LayerSpec& layer) {
  return layer.youngs_gpa / (12.0 * (1.0 - layer.poisson * layer.poisson));
}

BeamCoefficients derive_coefficients(const LayerSpec& top, const LayerSpec& core,
                                     const LayerSpec& bottom, double time_scale) {
  validate(top, "top");
  validate(core, "core");
  validate(bottom, "bottom");
  require(positive(time_scale), "coefficients", "time_scale", "must be positive");

  const double h1 = top.thickness;
  const double h2 = core.thickness;
  const double h3 = bottom.thickness;
  const double d1 = flexural_modulus(top);
  const double d3 = flexural_modulus(bottom);
  const double g2 = core.shear_gpa;
  const double rigidity = d1 * h1 * h1 * h1 + d3 * h3 * h3 * h3;

  BeamCoefficients c;
  c.B = g2 * (h1 + 2.0 * h2 + h3) / (2.0 * h2 * rigidity);
  c.C = g2 / (h2 * rigidity);
  c.P = g2 * (d1 * h1 + d3 * h3) / (12.0 * h2 * h2 * d1 * d3 * h1 * h3 * rigidity);
  c.time_scale = time_scale;
  return c;
}

ShearCondition large_shear_condition(const BeamCoefficients& coeffs, double h) {
  validate(coeffs);
  if (!(h > 0.0 && h < 1.0)) throw ValidationError("mesh size h must lie in (0, 1)");
  const double margin =
      (coeffs.C / coeffs.P - 0.25 * h * h) - 2.5 * coeffs.B * coeffs.B / coeffs.P;
  return {margin >= 0.0, margin};
}

double pde_observability_bound(double T, double L) {
  if (!(T > 0.0) || !(L > 0.0)) throw ValidationError("T and L must be positive");
  const double c = std::max(L, L * L * L / (std::numbers::pi * std::numbers::pi));
  return (2.0 / L) * (T - 2.0 * c);
}

}  // namespace orfd
