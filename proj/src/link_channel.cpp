#include "chulink/link_channel.hpp"

#include <cmath>
#include <sstream>

#include "chulink/errors.hpp"

namespace chulink {

void RfChain::validate() const {
  if (!(generator_R > 0.0)) throw DomainError("RfChain: generator resistance must be positive");
  if (!(lna_Rin > 0.0)) throw DomainError("RfChain: LNA input resistance must be positive");
  if (!(lna_gain_beta > 0.0)) throw DomainError("RfChain: LNA gain must be positive");
  if (!(noise_figure_Nf >= 1.0)) throw DomainError("RfChain: noise figure must be >= 1 (linear)");
  if (!(temperature_T > 0.0)) throw DomainError("RfChain: temperature must be positive");
}

NoisePsdSet noise_sources(const TwoPortZ& z, const RfChain& rf) {
  rf.validate();
  const double four_kt = 4.0 * constants::k_b * rf.temperature_T;
  NoisePsdSet n;
  n.s_vt = four_kt * z.z_t.re();
  n.s_vr = four_kt * z.z_r.re();
  n.s_cross = z.regime == Regime::far_field ? 0.0 : four_kt * z.z_tr.re();
  n.s_lna = four_kt * rf.lna_Rin * (rf.noise_figure_Nf - 1.0);
  return n;
}

XYTerms xy_terms(const TwoPortZ& z, const RfChain& rf) {
  rf.validate();
  const double r = rf.generator_R;
  const cplx zt = z.z_t.value();
  const cplx zr = z.z_r.value();
  const cplx zrt = z.z_rt.value();
  const cplx ztr = z.z_tr.value();

  const cplx x = std::norm(zrt) * zt.real() + (r + std::conj(zt)) * ztr * zrt.real() +
                 (r + zt) * std::conj(ztr) * ztr.real() + std::norm(r + zt) * zr.real();
  const double y = std::norm((rf.lna_Rin + zr) * (r + zt) - ztr * ztr);

  if (!(y > 0.0)) {
    std::ostringstream os;
    os << "two-port determinant vanishes at f = " << z.freq_hz << " Hz";
    throw SingularityError(os.str());
  }
  return {x.real(), y};
}

double channel_gain_sq(const TwoPortZ& z, const RfChain& rf) {
  const XYTerms xy = xy_terms(z, rf);
  const double b = rf.lna_gain_beta;
  return b * b * rf.lna_Rin * rf.lna_Rin * std::norm(z.z_rt.value()) / xy.y;
}

double noise_psd(const TwoPortZ& z, const RfChain& rf) {
  const XYTerms xy = xy_terms(z, rf);
  if (xy.x < 0.0) {
    std::ostringstream os;
    os << "noise_psd: negative X term at f = " << z.freq_hz << " Hz (non-passive impedances)";
    throw DomainError(os.str());
  }
  const double b = rf.lna_gain_beta;
  return constants::k_b * rf.temperature_T * (rf.lna_Rin / rf.generator_R) *
         ((rf.noise_figure_Nf - 1.0) + b * b * rf.lna_Rin * xy.x / xy.y);
}

void SpectralCurve::validate() const {
  if (freq_hz.size() != values.size()) {
    throw ShapeError("SpectralCurve: frequency and value arrays differ in length");
  }
}

void LinkModel::validate() const {
  geom.validate(ant_t, ant_r);
  rf.validate();
}

TwoPortZ LinkModel::two_port(double f) const {
  return assemble_two_port(f, ant_t, ant_r, geom, regime, gains);
}

LinkPoint LinkModel::evaluate(double f, double pt) const {
  const TwoPortZ z = two_port(f);
  LinkPoint p;
  p.h_gain_sq = channel_gain_sq(z, rf);
  p.noise_psd = noise_psd(z, rf);
  p.snr = pt * p.h_gain_sq / p.noise_psd;
  return p;
}

double LinkModel::gamma(double f) const {
  const TwoPortZ z = two_port(f);
  return channel_gain_sq(z, rf) / noise_psd(z, rf);
}

SpectralCurve snr_curve(const LinkModel& model, std::span<const double> band_freqs,
                        const SpectralCurve& pt) {
  pt.validate();
  if (pt.size() != band_freqs.size()) {
    throw ShapeError("snr_curve: transmit PSD is not sampled on the band grid");
  }
  SpectralCurve out;
  out.freq_hz.assign(band_freqs.begin(), band_freqs.end());
  out.values.resize(band_freqs.size());
  for (std::size_t i = 0; i < band_freqs.size(); ++i) {
    if (pt.freq_hz[i] != band_freqs[i]) {
      throw ShapeError("snr_curve: transmit PSD grid does not match the band grid");
    }
    if (pt.values[i] < 0.0) throw DomainError("snr_curve: transmit PSD must be non-negative");
    out.values[i] = model.evaluate(band_freqs[i], pt.values[i]).snr;
  }
  return out;
}

SpectralCurve gamma_curve(const LinkModel& model, std::span<const double> band_freqs) {
  SpectralCurve out;
  out.freq_hz.assign(band_freqs.begin(), band_freqs.end());
  out.values.resize(band_freqs.size());
  for (std::size_t i = 0; i < band_freqs.size(); ++i) out.values[i] = model.gamma(band_freqs[i]);
  return out;
}

}  // namespace chulink
