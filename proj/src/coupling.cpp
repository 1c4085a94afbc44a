#include "chulink/coupling.hpp"

#include <cmath>
#include <sstream>

#include "chulink/errors.hpp"

namespace chulink {

namespace {

constexpr cplx j{0.0, 1.0};

void require_separation(double d, const char* who) {
  if (!std::isfinite(d) || d < 0.0) {
    throw DomainError(std::string(who) + ": distance must be non-negative");
  }
  if (d == 0.0) throw SingularityError(std::string(who) + ": singular at d = 0");
}

// sin/cos with the rounding residue at multiples of π/2 (e.g. cos(π/2) =
// 6e-17) flushed to zero, so orthogonal dipoles decouple exactly.
double snap(double v) { return std::abs(v) < 1e-15 ? 0.0 : v; }

}  // namespace

void LinkGeometry::validate() const {
  require_separation(distance_d, "LinkGeometry");
  if (!std::isfinite(beta) || !std::isfinite(gamma)) {
    throw DomainError("LinkGeometry: angles must be finite");
  }
}

void LinkGeometry::validate(const AntennaSpec& ant_t, const AntennaSpec& ant_r) const {
  validate();
  ant_t.validate();
  ant_r.validate();
  // Touching spheres are allowed; the slack absorbs rounding in d = k·λ.
  if (distance_d < (ant_t.radius_a + ant_r.radius_a) * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "LinkGeometry: Chu spheres overlap (d = " << distance_d
       << " m < a_T + a_R = " << ant_t.radius_a + ant_r.radius_a << " m)";
    throw GeometryError(os.str());
  }
}

OrientationPreset OrientationPreset::parse(const std::string& name, double beta, double gamma) {
  if (name == "colinear") return colinear();
  if (name == "parallel") return parallel();
  if (name == "custom") return custom(beta, gamma);
  throw ConfigError("unknown orientation '" + name + "' (expected colinear|parallel|custom)");
}

std::string OrientationPreset::name() const {
  switch (tag_) {
    case Tag::colinear: return "colinear";
    case Tag::parallel: return "parallel";
    case Tag::custom: return "custom";
  }
  return "custom";
}

double OrientationPreset::beta() const {
  switch (tag_) {
    case Tag::colinear: return 0.0;
    case Tag::parallel: return constants::pi / 2.0;
    case Tag::custom: return beta_;
  }
  return beta_;
}

double OrientationPreset::gamma() const {
  switch (tag_) {
    case Tag::colinear: return constants::pi;
    case Tag::parallel: return 3.0 * constants::pi / 2.0;
    case Tag::custom: return gamma_;
  }
  return gamma_;
}

std::string to_string(Regime r) { return r == Regime::near_field ? "nf" : "ff"; }

std::string to_string(RegimeChoice r) {
  switch (r) {
    case RegimeChoice::near_field: return "nf";
    case RegimeChoice::far_field: return "ff";
    case RegimeChoice::automatic: return "auto";
  }
  return "auto";
}

RegimeChoice parse_regime(const std::string& s) {
  if (s == "nf" || s == "near_field") return RegimeChoice::near_field;
  if (s == "ff" || s == "far_field") return RegimeChoice::far_field;
  if (s == "auto" || s == "automatic") return RegimeChoice::automatic;
  throw ConfigError("unknown regime '" + s + "' (expected nf|ff|auto)");
}

ComplexOhm hertz_mutual_impedance(double f, const LinkGeometry& geom, double r_rad_t,
                                  double r_rad_r) {
  geom.validate();
  if (!(r_rad_t > 0.0) || !(r_rad_r > 0.0)) {
    throw DomainError("hertz_mutual_impedance: radiation resistances must be positive");
  }
  const double k0 = wavenumber(f);
  const double kd = k0 * geom.distance_d;
  const cplx u = j * kd;
  const cplx inv1 = 1.0 / u;
  const cplx inv2 = inv1 * inv1;
  const cplx inv3 = inv2 * inv1;

  const double ss = snap(std::sin(geom.beta)) * snap(std::sin(geom.gamma));
  const double cc = snap(std::cos(geom.beta)) * snap(std::cos(geom.gamma));
  const cplx bracket = 0.5 * ss * (inv1 + inv2 + inv3) + cc * (inv2 + inv3);

  // k0^2 c^2 / (4π^2 f^2) == 1, leaving -3 sqrt(r_t r_r) as the prefactor.
  return ComplexOhm(-3.0 * std::sqrt(r_rad_t * r_rad_r) * bracket * std::exp(-j * kd));
}

cplx oc_voltage_projection(double f, const LinkGeometry& geom, double i_t, double dl_t,
                           double dl_r) {
  geom.validate();
  const FieldPoint fp = hertz_fields(i_t, dl_t, f, geom.distance_d, geom.beta);
  return -dl_r * (fp.E_r * std::cos(geom.gamma) + fp.E_theta * std::sin(geom.gamma));
}

ComplexOhm chu_nf_mutual_impedance(double f, const LinkGeometry& geom, const ComplexOhm& z_t,
                                   const ComplexOhm& z_r) {
  if (!(z_t.re() > 0.0) || !(z_r.re() > 0.0)) {
    throw DomainError("chu_nf_mutual_impedance: self-impedances must have positive real part");
  }
  return hertz_mutual_impedance(f, geom, z_t.re(), z_r.re());
}

ComplexOhm chu_ff_mutual_impedance(double f, double d, const AntennaSpec& ant_t,
                                   const AntennaSpec& ant_r, const FarFieldGains& gains) {
  if (!(f > 0.0)) throw DomainError("chu_ff_mutual_impedance: frequency must be positive");
  require_separation(d, "chu_ff_mutual_impedance");
  ant_t.validate();
  ant_r.validate();
  if (!(gains.g_t > 0.0) || !(gains.g_r > 0.0)) {
    throw DomainError("chu_ff_mutual_impedance: antenna gains must be positive");
  }

  const double omega = 2.0 * constants::pi * f;
  const double c = constants::c;
  const double r1 = ant_t.resistance_R;
  const double r2 = ant_r.resistance_R;

  // Share of the transmit port current that flows through R_1.
  const cplx divider = (j * omega * ant_t.radius_a) / (c + j * omega * ant_t.radius_a);
  const double friis = c / (2.0 * constants::pi * f * d) * std::sqrt(gains.g_t * gains.g_r * r1 / r2);
  // R_2 || L at the receiver.
  const cplx load = (j * omega * r2) / (j * omega + c / ant_r.radius_a);
  return ComplexOhm(divider * friis * load);
}

TwoPortZ assemble_two_port(double f, const AntennaSpec& ant_t, const AntennaSpec& ant_r,
                           const LinkGeometry& geom, RegimeChoice regime,
                           const FarFieldGains& gains) {
  geom.validate(ant_t, ant_r);

  TwoPortZ z;
  z.freq_hz = f;
  z.z_t = chu_self_impedance(f, ant_t);
  z.z_r = chu_self_impedance(f, ant_r);
  z.d_over_lambda = geom.distance_d / wavelength(f);

  if (regime == RegimeChoice::far_field) {
    z.regime = Regime::far_field;
    z.z_rt = chu_ff_mutual_impedance(f, geom.distance_d, ant_t, ant_r, gains);
    z.z_tr = ComplexOhm(0.0, 0.0);
  } else {
    z.regime = Regime::near_field;
    z.z_rt = chu_nf_mutual_impedance(f, geom, z.z_t, z.z_r);
    z.z_tr = z.z_rt;
  }
  return z;
}

}  // namespace chulink
