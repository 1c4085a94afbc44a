#pragma once

#include <string>

#include "chulink/em_core.hpp"

namespace chulink {

/// Center-to-center separation and the tilt of each antenna relative to the
/// connecting axis. Both antennas lie in one plane.
struct LinkGeometry {
  double distance_d;  // [m]
  double beta;        // transmit tilt [rad]
  double gamma;       // receive tilt [rad]

  void validate() const;
  /// Also rejects overlapping Chu spheres (d < a_T + a_R).
  void validate(const AntennaSpec& ant_t, const AntennaSpec& ant_r) const;
};

class OrientationPreset {
 public:
  enum class Tag { colinear, parallel, custom };

  static OrientationPreset colinear() { return OrientationPreset(Tag::colinear, 0.0, 0.0); }
  static OrientationPreset parallel() { return OrientationPreset(Tag::parallel, 0.0, 0.0); }
  static OrientationPreset custom(double beta, double gamma) {
    return OrientationPreset(Tag::custom, beta, gamma);
  }
  /// Accepts "colinear", "parallel", or "custom" (with the given angles).
  static OrientationPreset parse(const std::string& name, double beta = 0.0, double gamma = 0.0);

  Tag tag() const { return tag_; }
  std::string name() const;
  double beta() const;
  double gamma() const;
  LinkGeometry at_distance(double d) const { return {d, beta(), gamma()}; }

 private:
  OrientationPreset(Tag tag, double beta, double gamma) : tag_(tag), beta_(beta), gamma_(gamma) {}
  Tag tag_;
  double beta_;
  double gamma_;
};

enum class Regime { near_field, far_field };
enum class RegimeChoice { near_field, far_field, automatic };

std::string to_string(Regime r);
std::string to_string(RegimeChoice r);
RegimeChoice parse_regime(const std::string& s);  // "nf" | "ff" | "auto" (and long names)

struct FarFieldGains {
  double g_t = 1.5;
  double g_r = 1.5;
};

/// Z_SISO at one frequency:  [V_T; V_R] = [[z_t, z_tr]; [z_rt, z_r]] [I_T; I_R].
struct TwoPortZ {
  double freq_hz = 0.0;
  ComplexOhm z_t;
  ComplexOhm z_r;
  ComplexOhm z_rt;
  ComplexOhm z_tr;
  Regime regime = Regime::near_field;
  double d_over_lambda = 0.0;
};

/// Induced-EMF mutual impedance of two coplanar Hertz dipoles, written in
/// terms of their radiation resistances (Z_RT = Z_TR). With u = j k d:
///   Z = -3 sqrt(r_t r_r) [ ½ sinβ sinγ (1/u + 1/u² + 1/u³)
///                          + cosβ cosγ (1/u² + 1/u³) ] e^{-jkd}
ComplexOhm hertz_mutual_impedance(double f, const LinkGeometry& geom, double r_rad_t,
                                  double r_rad_r);

/// Open-circuit voltage induced on an infinitesimal receive dipole of length
/// dl_r by a transmit dipole (i_t, dl_t):  V = -dl_r [E_r cosγ + E_θ sinγ]
/// evaluated from hertz_fields at (r = d, θ = β).
///
/// This is the field-projection route to the mutual impedance. With the
/// standard induced-EMF sign it gives V/i_t = -hertz_mutual_impedance; the
/// closed form above carries the opposite receive-port polarity.
cplx oc_voltage_projection(double f, const LinkGeometry& geom, double i_t, double dl_t,
                           double dl_r);

/// Near-field mutual impedance of two Chu antennas: the Hertz formula with
/// the Chu radiation resistances Re[z_t], Re[z_r].
ComplexOhm chu_nf_mutual_impedance(double f, const LinkGeometry& geom, const ComplexOhm& z_t,
                                   const ComplexOhm& z_r);

/// Friis-based far-field mutual impedance:
///   [jωa_T/(c + jωa_T)] · c/(2πfd) · sqrt(G_T G_R R_1/R_2) · jωR_2/(jω + c/a_R)
ComplexOhm chu_ff_mutual_impedance(double f, double d, const AntennaSpec& ant_t,
                                   const AntennaSpec& ant_r, const FarFieldGains& gains = {});

/// Full impedance matrix. near_field: z_rt = z_tr from the EMF formula.
/// far_field: Friis z_rt, z_tr = 0 (unilateral). automatic: near-field
/// formula at every distance.
TwoPortZ assemble_two_port(double f, const AntennaSpec& ant_t, const AntennaSpec& ant_r,
                           const LinkGeometry& geom, RegimeChoice regime,
                           const FarFieldGains& gains = {});

}  // namespace chulink
