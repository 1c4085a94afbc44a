#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chulink/errors.hpp"
#include "chulink/rate_engine.hpp"
#include "chulink/sweep.hpp"

namespace py = pybind11;
using namespace chulink;

namespace {

py::dict two_port_dict(const TwoPortZ& z) {
  py::dict d;
  d["freq_hz"] = z.freq_hz;
  d["z_t"] = z.z_t.value();
  d["z_r"] = z.z_r.value();
  d["z_rt"] = z.z_rt.value();
  d["z_tr"] = z.z_tr.value();
  d["regime"] = to_string(z.regime);
  d["d_over_lambda"] = z.d_over_lambda;
  return d;
}

py::dict estimate_dict(const RateEstimate& r) {
  py::dict d;
  d["bits_per_s"] = r.bits_per_s;
  d["grid_points"] = r.grid_points;
  d["relative_change"] = r.relative_change;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chu-sphere antenna coupling and link-rate models";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<AntennaSpec>(m, "AntennaSpec")
      .def(py::init([](double radius_a, double resistance_R) { return AntennaSpec{radius_a, resistance_R}; }),
           py::arg("radius_a"), py::arg("resistance_R") = 50.0)
      .def_readwrite("radius_a", &AntennaSpec::radius_a)
      .def_readwrite("resistance_R", &AntennaSpec::resistance_R);

  py::class_<RfChain>(m, "RfChain")
      .def(py::init([](double r, double r_in, double beta, double nf, double t) {
             RfChain rf{r, r_in, beta, nf, t};
             rf.validate();
             return rf;
           }),
           py::arg("generator_R") = 50.0, py::arg("lna_Rin") = 50.0, py::arg("lna_gain_beta") = 10.0,
           py::arg("noise_figure") = RfChain{}.noise_figure_Nf, py::arg("temperature_K") = 300.0)
      .def_readwrite("generator_R", &RfChain::generator_R)
      .def_readwrite("lna_Rin", &RfChain::lna_Rin)
      .def_readwrite("lna_gain_beta", &RfChain::lna_gain_beta)
      .def_readwrite("noise_figure", &RfChain::noise_figure_Nf)
      .def_readwrite("temperature_K", &RfChain::temperature_T);

  m.def("wavelength", &wavelength, py::arg("f"));
  m.def("wavenumber", &wavenumber, py::arg("f"));
  m.def("chu_self_impedance",
        [](double f, const AntennaSpec& a) { return chu_self_impedance(f, a).value(); }, py::arg("f"),
        py::arg("antenna"));
  m.def("hertz_radiation_resistance", [](double dl, double f) { return hertz_radiation_resistance(dl, f); },
        py::arg("dl"), py::arg("f"));
  m.def("hertz_mutual_impedance",
        [](double f, double d, double beta, double gamma, double r_t, double r_r) {
          return hertz_mutual_impedance(f, {d, beta, gamma}, r_t, r_r).value();
        },
        py::arg("f"), py::arg("d"), py::arg("beta"), py::arg("gamma"), py::arg("r_rad_t"), py::arg("r_rad_r"));
  m.def("orientation",
        [](const std::string& name, double beta, double gamma) {
          const auto o = OrientationPreset::parse(name, beta, gamma);
          return std::make_pair(o.beta(), o.gamma());
        },
        py::arg("name"), py::arg("beta") = 0.0, py::arg("gamma") = 0.0);

  m.def("two_port",
        [](double f, const AntennaSpec& at, const AntennaSpec& ar, double d, double beta, double gamma,
           const std::string& regime) {
          return two_port_dict(assemble_two_port(f, at, ar, {d, beta, gamma}, parse_regime(regime)));
        },
        py::arg("f"), py::arg("ant_t"), py::arg("ant_r"), py::arg("d"), py::arg("beta"), py::arg("gamma"),
        py::arg("regime") = "auto");

  py::class_<LinkModel>(m, "LinkModel")
      .def(py::init([](const AntennaSpec& at, const AntennaSpec& ar, double d, double beta, double gamma,
                       const RfChain& rf, const std::string& regime) {
             LinkModel link{at, ar, {d, beta, gamma}, rf, parse_regime(regime), {}};
             link.validate();
             return link;
           }),
           py::arg("ant_t"), py::arg("ant_r"), py::arg("d"), py::arg("beta"), py::arg("gamma"),
           py::arg("rf") = RfChain{}, py::arg("regime") = "auto")
      .def("two_port", [](const LinkModel& l, double f) { return two_port_dict(l.two_port(f)); }, py::arg("f"))
      .def("gamma", &LinkModel::gamma, py::arg("f"))
      .def("channel_gain_sq", [](const LinkModel& l, double f) { return channel_gain_sq(l.two_port(f), l.rf); },
           py::arg("f"))
      .def("noise_psd", [](const LinkModel& l, double f) { return noise_psd(l.two_port(f), l.rf); },
           py::arg("f"))
      .def("snr", [](const LinkModel& l, double f, double pt) { return l.evaluate(f, pt).snr; }, py::arg("f"),
           py::arg("pt"));

  py::class_<Band>(m, "Band")
      .def(py::init([](double f_lo, double f_hi, std::size_t n) {
             Band b{f_lo, f_hi, n};
             b.validate();
             return b;
           }),
           py::arg("f_lo"), py::arg("f_hi"), py::arg("grid_points") = 2001)
      .def_static("centered", &Band::centered, py::arg("f_c"), py::arg("width"), py::arg("grid_points") = 2001)
      .def_readonly("f_lo", &Band::f_lo)
      .def_readonly("f_hi", &Band::f_hi)
      .def_readonly("grid_points", &Band::grid_points)
      .def("grid", &Band::grid);

  m.def("rate_uniform",
        [](const Band& b, double p_max, const LinkModel& l) { return estimate_dict(rate_uniform(b, {p_max}, l)); },
        py::arg("band"), py::arg("p_max"), py::arg("link"));
  m.def("rate_uniform",
        [](const Band& b, double p_max, const GammaFn& g) { return estimate_dict(rate_uniform(b, {p_max}, g)); },
        py::arg("band"), py::arg("p_max"), py::arg("gamma"));
  m.def("rate_opa",
        [](const Band& b, double p_max, const LinkModel& l) { return estimate_dict(rate_opa(b, {p_max}, l)); },
        py::arg("band"), py::arg("p_max"), py::arg("link"));
  m.def("rate_opa",
        [](const Band& b, double p_max, const GammaFn& g) { return estimate_dict(rate_opa(b, {p_max}, g)); },
        py::arg("band"), py::arg("p_max"), py::arg("gamma"));
  m.def("waterfill",
        [](const std::vector<double>& weights, const std::vector<double>& gamma, double p_max) {
          const WaterfillSolution s = waterfill_weighted(weights, gamma, p_max);
          py::dict d;
          d["water_level"] = s.water_level;
          d["gamma0"] = s.gamma0;
          d["pt"] = s.pt_star.values;
          d["rate_bits_s"] = s.rate_bits_s;
          d["allocated_power"] = s.allocated_power;
          d["active_points"] = s.active_points;
          return d;
        },
        py::arg("weights"), py::arg("gamma"), py::arg("p_max"));

  m.def("default_config", [](const std::string& e) { return ExperimentConfig::defaults(parse_experiment(e)).to_json().dump(); },
        py::arg("experiment"));
  m.def("run_experiment_csv",
        [](const std::string& config_json) {
          const ExperimentConfig cfg = ExperimentConfig::from_json(nlohmann::json::parse(config_json));
          SweepTable t;
          {
            py::gil_scoped_release release;
            t = run_experiment(cfg);
          }
          std::ostringstream os;
          emit_csv(t, os);
          return os.str();
        },
        py::arg("config_json"));
}
