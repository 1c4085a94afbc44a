#pragma once

// Free-space constants, the TM1 equivalent circuit of a Chu antenna, and the
// Hertz-dipole / TM1 field expressions used to cross-check the circuit model.
//
// Time convention throughout: e^{+jωt}, outgoing waves e^{-jkr}.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace chulink {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double c = 2.998e8;             // [m/s]
inline constexpr double k_b = 1.38e-23;          // [J/K]
inline constexpr double mu = 1.25663706e-6;      // [H/m]
inline constexpr double epsilon = 8.8541878e-12; // [F/m]
/// Wave impedance sqrt(mu/epsilon), ~376.73 Ω.
double eta();
}  // namespace constants

/// Complex impedance in ohms. Construction rejects NaN and infinities.
class ComplexOhm {
 public:
  ComplexOhm() = default;
  ComplexOhm(double re, double im);
  explicit ComplexOhm(cplx z);

  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  cplx value() const { return z_; }

  friend bool operator==(const ComplexOhm&, const ComplexOhm&) = default;

 private:
  cplx z_{0.0, 0.0};
};

/// One Chu antenna: sphere radius and the resistance R of its TM1 ladder
/// (series C = a/(cR), then L = aR/c in parallel with R).
struct AntennaSpec {
  double radius_a;      // [m]
  double resistance_R;  // [Ω]

  void validate() const;
};

struct FieldPoint {
  cplx E_r;      // [V/m]
  cplx E_theta;  // [V/m]
  cplx H_phi;    // [A/m]
};

struct ModeCoefficient {
  cplx a1;
  bool degenerate = false;  // set when the drive current is zero
};

/// Non-fatal diagnostics collected by a few functions.
using Warnings = std::vector<std::string>;

double wavenumber(double f);
double wavelength(double f);

/// Input impedance of the TM1 ladder:
///   Z = R (1 + j ka - (ka)^2) / (j ka - (ka)^2),   ka = 2π f a / c.
/// Re[Z] = R (ka)^2 / (1 + (ka)^2) > 0 for every f > 0.
ComplexOhm chu_self_impedance(double f, const AntennaSpec& ant);

/// Closed form of Re[Z_Chu]; same value as chu_self_impedance(f, ant).re().
double chu_radiation_resistance(double f, const AntennaSpec& ant);

/// (2π/3) η (dl/λ)^2. Dipoles with dl >= λ/10 get a warning appended to
/// `warnings` (the formula is still evaluated).
double hertz_radiation_resistance(double dl, double f, Warnings* warnings = nullptr);

/// TM1 coefficient that makes a Chu antenna radiate like a Hertz dipole of
/// radiation resistance r_rad driven by current I:
///   A1 = j I k^2 c / (4π f) * sqrt(3 r_rad / (2π η)).
ModeCoefficient tm1_coefficient(double current_I, double f, double r_rad);

/// A1 = j k^2 I dl / (4π): equal tangential H on any enclosing sphere.
ModeCoefficient tm1_coefficient_from_dipole(double current_I, double dl, double f);

FieldPoint chu_tm1_fields(const ModeCoefficient& a1, double f, double r, double theta);
FieldPoint hertz_fields(double current_I, double dl, double f, double r, double theta);

/// Real power through a sphere of radius sphere_r, by Gauss-Legendre
/// quadrature in θ (φ integrates analytically to 2π). Equals
/// (4π/3)(η/k^2)|A1|^2 for every radius. Throws NumericalError if doubling
/// the node count moves the result by more than 1e-9 relative.
double radiated_power_sphere(const ModeCoefficient& a1, double f, double sphere_r,
                             std::size_t nodes = 64);

/// Closed form (4π/3)(η/k^2)|A1|^2.
double radiated_power_closed_form(const ModeCoefficient& a1, double f);

}  // namespace chulink
