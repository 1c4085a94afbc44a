#include "chulink/em_core.hpp"

#include <cmath>
#include <sstream>

#include "chulink/errors.hpp"
#include "chulink/quadrature.hpp"

namespace chulink {

namespace {

constexpr cplx j{0.0, 1.0};

void require_positive_frequency(double f, const char* who) {
  if (!(f > 0.0) || !std::isfinite(f)) {
    std::ostringstream os;
    os << who << ": frequency must be positive, got " << f;
    throw DomainError(os.str());
  }
}

void require_positive_radius(double r, const char* who) {
  if (!std::isfinite(r) || r < 0.0) {
    throw DomainError(std::string(who) + ": radius must be non-negative");
  }
  if (r == 0.0) throw SingularityError(std::string(who) + ": fields are singular at r = 0");
}

}  // namespace

double constants::eta() { return std::sqrt(mu / epsilon); }

ComplexOhm::ComplexOhm(double re, double im) : ComplexOhm(cplx{re, im}) {}

ComplexOhm::ComplexOhm(cplx z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("ComplexOhm: impedance must be finite");
  }
}

void AntennaSpec::validate() const {
  if (!(radius_a > 0.0) || !std::isfinite(radius_a)) {
    throw DomainError("AntennaSpec: radius must be positive");
  }
  if (!(resistance_R > 0.0) || !std::isfinite(resistance_R)) {
    throw DomainError("AntennaSpec: resistance must be positive");
  }
}

double wavenumber(double f) {
  require_positive_frequency(f, "wavenumber");
  return 2.0 * constants::pi * f / constants::c;
}

double wavelength(double f) {
  require_positive_frequency(f, "wavelength");
  return constants::c / f;
}

ComplexOhm chu_self_impedance(double f, const AntennaSpec& ant) {
  require_positive_frequency(f, "chu_self_impedance");
  ant.validate();
  const double ka = wavenumber(f) * ant.radius_a;
  // R (1 + jx - x²) / (jx - x²) with x = ka, rationalized so that the small
  // real part is not lost to the 1/x reactance.
  const double s = ant.resistance_R / (1.0 + ka * ka);
  return ComplexOhm(s * ka * ka, -s / ka);
}

double chu_radiation_resistance(double f, const AntennaSpec& ant) {
  require_positive_frequency(f, "chu_radiation_resistance");
  ant.validate();
  const double ka = wavenumber(f) * ant.radius_a;
  return ant.resistance_R * ka * ka / (1.0 + ka * ka);
}

double hertz_radiation_resistance(double dl, double f, Warnings* warnings) {
  require_positive_frequency(f, "hertz_radiation_resistance");
  if (!(dl > 0.0)) throw DomainError("hertz_radiation_resistance: dipole length must be positive");
  const double lambda = wavelength(f);
  if (dl >= lambda / 10.0 && warnings != nullptr) {
    std::ostringstream os;
    os << "dipole length " << dl << " m is not electrically small (>= lambda/10 = "
       << lambda / 10.0 << " m)";
    warnings->push_back(os.str());
  }
  const double ratio = dl / lambda;
  return (2.0 * constants::pi / 3.0) * constants::eta() * ratio * ratio;
}

ModeCoefficient tm1_coefficient(double current_I, double f, double r_rad) {
  require_positive_frequency(f, "tm1_coefficient");
  if (!(r_rad > 0.0)) throw DomainError("tm1_coefficient: radiation resistance must be positive");
  if (current_I == 0.0) return {cplx{0.0, 0.0}, true};
  const double k = wavenumber(f);
  const double scale = std::sqrt(3.0 * r_rad / (2.0 * constants::pi * constants::eta()));
  return {j * (current_I * k * k * constants::c / (4.0 * constants::pi * f)) * scale, false};
}

ModeCoefficient tm1_coefficient_from_dipole(double current_I, double dl, double f) {
  const double k = wavenumber(f);
  return {j * k * k * current_I * dl / (4.0 * constants::pi), current_I == 0.0};
}

FieldPoint chu_tm1_fields(const ModeCoefficient& a1, double f, double r, double theta) {
  require_positive_radius(r, "chu_tm1_fields");
  const double k = wavenumber(f);
  const double kr = k * r;
  const cplx radial = std::exp(-j * kr) / r;
  const cplx amp = a1.a1 / k;
  const double eta = constants::eta();

  FieldPoint out;
  out.H_phi = amp * std::sin(theta) * radial * (1.0 + 1.0 / (j * kr));
  out.E_theta = eta * amp * std::sin(theta) * radial * (1.0 + 1.0 / (j * kr) - 1.0 / (kr * kr));
  // Sign fixed by Ampère's law from H_phi: E_r = curl(H)_r / (jωε).
  out.E_r = -2.0 * j * eta * amp * std::cos(theta) * radial * (1.0 / kr + 1.0 / (j * kr * kr));
  return out;
}

FieldPoint hertz_fields(double current_I, double dl, double f, double r, double theta) {
  require_positive_radius(r, "hertz_fields");
  const double k = wavenumber(f);
  const double kr = k * r;
  const cplx radial = std::exp(-j * kr) / r;
  const double moment = current_I * dl;
  const double eta = constants::eta();

  FieldPoint out;
  out.H_phi = j * k * moment / (4.0 * constants::pi) * std::sin(theta) * radial *
              (1.0 + 1.0 / (j * kr));
  out.E_theta = j * k * eta * moment / (4.0 * constants::pi) * std::sin(theta) * radial *
                (1.0 + 1.0 / (j * kr) - 1.0 / (kr * kr));
  out.E_r = k * eta * moment / (2.0 * constants::pi) * std::cos(theta) * radial *
            (1.0 / kr + 1.0 / (j * kr * kr));
  return out;
}

namespace {

double poynting_flux(const ModeCoefficient& a1, double f, double sphere_r, std::size_t nodes) {
  const auto rule = quadrature::gauss_legendre(nodes, 0.0, constants::pi);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double theta = rule.nodes[i];
    const FieldPoint fp = chu_tm1_fields(a1, f, sphere_r, theta);
    // Radial component of E x conj(H) for (E_r, E_theta, 0) x (0, 0, H_phi).
    const double s_r = 0.5 * std::real(fp.E_theta * std::conj(fp.H_phi));
    sum += rule.weights[i] * s_r * sphere_r * sphere_r * std::sin(theta);
  }
  return 2.0 * constants::pi * sum;
}

}  // namespace

double radiated_power_sphere(const ModeCoefficient& a1, double f, double sphere_r,
                             std::size_t nodes) {
  require_positive_frequency(f, "radiated_power_sphere");
  require_positive_radius(sphere_r, "radiated_power_sphere");
  const double coarse = poynting_flux(a1, f, sphere_r, nodes);
  const double fine = poynting_flux(a1, f, sphere_r, 2 * nodes);
  const double scale = std::max(std::abs(fine), 1e-300);
  const double residual = std::abs(fine - coarse) / scale;
  if (fine != 0.0 && residual > 1e-9) {
    throw NumericalError("radiated_power_sphere: quadrature did not converge", residual);
  }
  return coarse;
}

double radiated_power_closed_form(const ModeCoefficient& a1, double f) {
  const double k = wavenumber(f);
  return (4.0 * constants::pi / 3.0) * (constants::eta() / (k * k)) * std::norm(a1.a1);
}

}  // namespace chulink
