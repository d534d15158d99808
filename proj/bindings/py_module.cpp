#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "innerfun/diagnostics.hpp"
#include "innerfun/entropy.hpp"
#include "innerfun/io.hpp"
#include "innerfun/zoo.hpp"

namespace py = pybind11;
using namespace innerfun;

namespace {

ZeroSet zeroset_from_json_str(const std::string& s) {
  return zeroset_from_json(Json::parse(s));
}

py::dict eval_to_dict(const EvalResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["modulus_lower"] = r.modulus_lower;
  d["modulus_upper"] = r.modulus_upper;
  d["tail_lower_widened"] = r.tail_lower_widened;
  return d;
}

}  // namespace

PYBIND11_MODULE(_innerfun, m) {
  m.doc() = "inner function evaluation and SIP diagnostics";
  m.attr("__version__") = kToolVersion;

  py::class_<DiscPoint>(m, "DiscPoint")
      .def(py::init<double, double>(), py::arg("re"), py::arg("im"))
      .def_static("from_polar_gap", &DiscPoint::from_polar_gap, py::arg("angle"), py::arg("gap"))
      .def_property_readonly("re", &DiscPoint::re)
      .def_property_readonly("im", &DiscPoint::im)
      .def_property_readonly("angle", &DiscPoint::angle)
      .def_property_readonly("boundary_gap", &DiscPoint::boundary_gap)
      .def("__repr__", [](const DiscPoint& p) {
        return "DiscPoint(" + std::to_string(p.re()) + ", " + std::to_string(p.im()) + ")";
      });

  py::class_<HalfPlanePoint>(m, "HalfPlanePoint")
      .def(py::init<double, double>(), py::arg("re"), py::arg("im"))
      .def_property_readonly("re", &HalfPlanePoint::re)
      .def_property_readonly("im", &HalfPlanePoint::im);

  m.def("pseudo_dist",
        py::overload_cast<const DiscPoint&, const DiscPoint&>(&pseudo_dist), "rho(z, w)");
  m.def("pseudo_dist_half_plane",
        py::overload_cast<const HalfPlanePoint&, const HalfPlanePoint&>(&pseudo_dist));
  m.def("hyp_dist", &hyp_dist, "atanh rho(z, w)");
  m.def("mobius", &mobius, py::arg("a"), py::arg("w"));
  m.def("cayley", &cayley);
  m.def("cayley_inverse", &cayley_inverse);

  py::class_<ZeroSet>(m, "ZeroSet")
      .def(py::init([](const std::string& json_text) { return zeroset_from_json_str(json_text); }),
           py::arg("json_text"))
      .def_static("from_disc_zeros",
                  [](const std::vector<std::pair<std::complex<double>, int>>& zeros) {
                    ZeroSet zs(Model::disc);
                    for (const auto& [p, mult] : zeros)
                      zs.add_disc(DiscPoint(p.real(), p.imag()), mult);
                    return zs;
                  })
      .def("__len__", &ZeroSet::size)
      .def("blaschke_sum", &ZeroSet::blaschke_sum)
      .def("to_json", [](const ZeroSet& zs) { return zeroset_to_json(zs).dump(); });
  m.def("to_disc", &to_disc);
  m.def("to_half_plane", &to_half_plane);

  py::class_<SingularMeasure>(m, "SingularMeasure")
      .def(py::init([](const std::vector<std::pair<double, double>>& atoms) {
             std::vector<MeasureAtom> a;
             for (const auto& [angle, mass] : atoms) a.push_back({angle, mass});
             return SingularMeasure(std::move(a));
           }),
           py::arg("atoms"))
      .def("total_mass", &SingularMeasure::total_mass);

  m.def("blaschke_factor", &blaschke_factor);
  m.def(
      "eval_blaschke",
      [](const ZeroSet& zs, const DiscPoint& z) { return eval_to_dict(eval_blaschke(zs, z)); },
      py::arg("zeros"), py::arg("z"));
  m.def("eval_singular", &eval_singular);
  m.def("poisson", &poisson);
  m.def(
      "eval_inner",
      [](const ZeroSet& zs, const SingularMeasure& mu, const DiscPoint& z) {
        return eval_to_dict(eval_inner(InnerFunction{zs, mu}, z));
      },
      py::arg("zeros"), py::arg("measure"), py::arg("z"));
  m.def("zero_derivative_product", &zero_derivative_product);
  m.def(
      "jensen_mean",
      [](const ZeroSet& zs, const DiscPoint& z, double r, int n) {
        const JensenPair p = jensen_mean(zs, z, r, n);
        return std::make_pair(p.lhs, p.rhs);
      },
      py::arg("zeros"), py::arg("z"), py::arg("r"), py::arg("n_quad"));

  m.def("gen_exponential", &gen_exponential, py::arg("q"), py::arg("n"), py::arg("angle") = 0.0);
  m.def("gen_treil_grid", &gen_treil_grid, py::arg("n_max"), py::arg("half_width"));
  m.def("gen_stolz_mult", &gen_stolz_mult, py::arg("n"));
  m.def("gen_finite_cross", &gen_finite_cross, py::arg("r"));
  m.def(
      "gen_thin",
      [](int n, const std::string& angles, std::uint64_t seed, double fixed_angle) {
        return gen_thin(n, RadiusRule::double_exp,
                        angles == "spread" ? AngleMode::spread : AngleMode::fixed, seed,
                        fixed_angle);
      },
      py::arg("n"), py::arg("angles") = "fixed", py::arg("seed") = 0, py::arg("fixed_angle") = 0.0);
  m.def("perturb_zeros", &perturb_zeros, py::arg("zeros"), py::arg("max_rho"), py::arg("seed"));
  m.def("remove_in_discs", &remove_in_discs, py::arg("zeros"), py::arg("centers"),
        py::arg("r_hyp"));

  m.def(
      "eta_curve",
      [](const ZeroSet& zs, const SingularMeasure& mu, const std::vector<double>& ts,
         double r_max, double mesh, int workers) {
        EtaConfig cfg{ts, r_max, mesh, workers};
        const EtaCurve c = eta_curve(InnerFunction{zs, mu}, cfg);
        py::list out;
        for (const auto& s : c.samples) {
          py::dict d;
          d["t"] = s.t;
          d["estimate"] = s.estimate ? py::object(py::float_(*s.estimate)) : py::none();
          d["n_probes"] = s.n_probes;
          if (s.argmin) d["argmin"] = std::complex<double>(s.argmin->re(), s.argmin->im());
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("zeros"), py::arg("measure"), py::arg("t_values"),
      py::arg("r_max") = 1.0 - 0x1p-12, py::arg("mesh") = 0.05, py::arg("workers") = 1);
  m.def(
      "kappa",
      [](const std::vector<std::pair<double, py::object>>& samples, double lam) {
        EtaCurve curve;
        for (const auto& [t, est] : samples) {
          EtaSample s;
          s.t = t;
          if (!est.is_none()) s.estimate = est.cast<double>();
          curve.samples.push_back(std::move(s));
        }
        return kappa(curve, lam);
      },
      py::arg("samples"), py::arg("lam"),
      "pseudo-inverse of a sampled eta curve given as (t, estimate|None) pairs");
  m.def(
      "narrowness_probe",
      [](const ZeroSet& zs, const SingularMeasure& mu, double eps, const std::string& mode,
         double center_hyp_max, double center_mesh, double r_min, double r_max, double r_step,
         double disc_mesh) {
        NarrowMode m_;
        if (mode == "sip") m_ = NarrowMode::sip;
        else if (mode == "m_class") m_ = NarrowMode::m_class;
        else if (mode == "p_class") m_ = NarrowMode::p_class;
        else throw std::invalid_argument("mode must be sip|m_class|p_class");
        NarrowSearch search{center_hyp_max, center_mesh, r_min, r_max, r_step, disc_mesh};
        const NarrowResult res = narrowness_probe(InnerFunction{zs, mu}, eps, m_, search);
        py::dict d;
        d["r_found"] = res.r_found;
        if (res.center)
          d["center"] = std::complex<double>(res.center->re(), res.center->im());
        return d;
      },
      py::arg("zeros"), py::arg("measure"), py::arg("eps"), py::arg("mode"),
      py::arg("center_hyp_max") = 2.5, py::arg("center_mesh") = 0.35, py::arg("r_min") = 0.25,
      py::arg("r_max") = 2.0, py::arg("r_step") = 0.25, py::arg("disc_mesh") = 0.25);
  m.def("s_t_sum", &s_t_sum, py::arg("zeros"), py::arg("z"), py::arg("t"));
  m.def("cn_constant", &cn_constant);
  m.def("box_sup", &box_sup, py::arg("zeros"), py::arg("delta"));
  m.def("thin_profile", [](const ZeroSet& zs) {
    py::list out;
    for (const auto& e : thin_profile(zs))
      out.append(py::make_tuple(e.k, e.derivative_product, e.tail_sum));
    return out;
  });
  m.def("separation_profile", [](const ZeroSet& zs) {
    py::list out;
    for (const auto& e : separation_profile(zs)) out.append(py::make_tuple(e.n_from, e.tail_inf));
    return out;
  });
  m.def(
      "classify",
      [](const ZeroSet& zs, const SingularMeasure& mu, bool narrowness) {
        ClassifyConfig cfg;
        cfg.run_narrowness = narrowness;
        const Report rep = classify(InnerFunction{zs, mu}, cfg);
        return report_to_json(rep).dump();
      },
      py::arg("zeros"), py::arg("measure"), py::arg("narrowness") = false,
      "JSON text of the diagnostics report");

  m.def("gen_cantor_like", [](int depth, double ratio) {
    const BoundarySet e = BoundarySet::from_radian_arcs(gen_cantor_like(depth, ratio));
    std::vector<std::pair<double, double>> arcs;
    for (const auto& a : e.arcs()) arcs.emplace_back(a.lo, a.hi());
    return arcs;
  });
  m.def(
      "entropy_integral",
      [](const std::vector<std::pair<double, double>>& arcs_turns) {
        std::vector<BoundaryArc> arcs;
        for (const auto& [lo, hi] : arcs_turns) arcs.push_back({lo, hi - lo});
        return entropy_integral(BoundarySet(std::move(arcs)));
      },
      py::arg("arcs_turns"));
  m.def(
      "build_sipification",
      [](const SingularMeasure& mu, const std::vector<std::pair<double, double>>& arcs_turns,
         int max_level) {
        std::vector<BoundaryArc> arcs;
        for (const auto& [lo, hi] : arcs_turns) arcs.push_back({lo, hi - lo});
        Sipification s = build_sipification(mu, BoundarySet(std::move(arcs)), max_level);
        return py::make_tuple(s.b1, s.b2, s.metadata.dump());
      },
      py::arg("measure"), py::arg("arcs_turns"), py::arg("max_level"));
}
