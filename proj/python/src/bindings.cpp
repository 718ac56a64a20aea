#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "dcov/beta2.hpp"
#include "dcov/charfn.hpp"
#include "dcov/charrv.hpp"
#include "dcov/error.hpp"
#include "dcov/estimators.hpp"
#include "dcov/inference.hpp"
#include "dcov/parallel.hpp"
#include "dcov/population.hpp"

namespace py = pybind11;
using namespace dcov;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a, const char* name) {
  if (a.ndim() == 1) {
    Matrix m(static_cast<std::size_t>(a.shape(0)), 1);
    for (py::ssize_t i = 0; i < a.shape(0); ++i) m(i, 0) = a.at(i);
    return m;
  }
  if (a.ndim() != 2) throw InputError(std::string(name) + " must be a 1-D or 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  const auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = r(i, j);
  return m;
}

PairedSample sample_of(const Array& x, const Array& y, double beta) {
  return euclidean_sample(to_matrix(x, "x"), to_matrix(y, "y"), beta);
}

DiscreteJoint joint_of(const Array& x, const Array& y, const std::vector<double>& probs, double beta) {
  const Matrix mx = to_matrix(x, "x"), my = to_matrix(y, "y");
  return DiscreteJoint(points_from_rows(mx), points_from_rows(my), probs, MetricSpec::euclidean(mx.cols(), beta),
                       MetricSpec::euclidean(my.cols(), beta));
}

py::dict report(const DcovEstimate& e) {
  py::dict d;
  d["method"] = e.method;
  d["beta"] = e.beta;
  d["n"] = e.n;
  d["value"] = e.value;
  d["stderr"] = e.std_error ? py::cast(*e.std_error) : py::none();
  d["aux"] = e.aux;
  return d;
}

QuadConfig quad(int panels) {
  QuadConfig q;
  q.panels_per_decade = panels;
  return q;
}

DcovEstimate estimate(const PairedSample& s, const std::string& method, std::optional<std::uint64_t> seed,
                      std::size_t draws, std::optional<double> trunc_m, int panels) {
  if (method == "d1") return dcov_plugin_d1(s);
  if (method == "centered") return dcov_centered(s);
  if (method == "exact") return dcov_exact(empirical_joint(s), ExactMethod::d3);
  if (method == "beta2") return dcov2_closed(s);
  if (method == "hm") {
    if (!trunc_m) throw InputError("method hm needs trunc_M");
    return dcov_hm(s, *trunc_m);
  }
  if (method == "charrv") {
    if (!seed) throw InputError("method charrv is stochastic: seed is required");
    return dcov_charrv_mc(s, CharRVConfig{draws, *seed, quad(panels)});
  }
  if (method == "charfn") return dcov_charfn_1d(empirical_joint(s), quad(panels));
  throw InputError("unknown method '" + method + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distance covariance with a general exponent";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);

  m.def(
      "dcov",
      [](const Array& x, const Array& y, double beta, const std::string& method, std::optional<std::uint64_t> seed,
         std::size_t draws, std::optional<double> trunc_m, int panels) {
        return report(estimate(sample_of(x, y, beta), method, seed, draws, trunc_m, panels));
      },
      py::arg("x"), py::arg("y"), py::arg("beta") = 1.0, py::arg("method") = "centered", py::arg("seed") = py::none(),
      py::arg("draws") = 2000, py::arg("trunc_M") = py::none(), py::arg("grid_panels") = 8,
      "Sample estimate; rows are observations.");

  m.def(
      "dcov_exact",
      [](const Array& x, const Array& y, const std::vector<double>& probs, double beta, const std::string& form) {
        const auto j = joint_of(x, y, probs, beta);
        const ExactMethod how = form == "d1" ? ExactMethod::d1 : form == "d2" ? ExactMethod::d2 : ExactMethod::d3;
        if (form != "d1" && form != "d2" && form != "d3") throw InputError("form must be d1, d2 or d3");
        return dcov_exact(j, how).value;
      },
      py::arg("x"), py::arg("y"), py::arg("probs"), py::arg("beta") = 1.0, py::arg("form") = "d1",
      "Population value of a finitely supported joint law.");

  m.def(
      "dcor", [](const Array& x, const Array& y, double beta) { return dcor(sample_of(x, y, beta)); }, py::arg("x"),
      py::arg("y"), py::arg("beta") = 1.0);

  m.def(
      "perm_test",
      [](const Array& x, const Array& y, double beta, std::size_t B, std::uint64_t seed) {
        const auto r = perm_test(sample_of(x, y, beta), B, seed);
        py::dict d;
        d["observed"] = r.observed;
        d["p_value"] = r.p_value;
        d["B"] = r.B;
        d["seed"] = r.seed;
        return d;
      },
      py::arg("x"), py::arg("y"), py::arg("beta") = 1.0, py::arg("B") = 999, py::arg("seed"));

  m.def(
      "consistency_sweep",
      [](const Array& x, const Array& y, const std::vector<double>& probs, double beta,
         const std::vector<std::size_t>& sizes, const std::vector<std::uint64_t>& seeds) {
        const auto t = consistency_sweep(joint_of(x, y, probs, beta), sizes, seeds);
        py::list rows;
        for (const auto& r : t.rows) {
          py::dict d;
          d["n"] = r.n;
          d["estimate"] = r.estimate;
          d["abs_error"] = r.abs_error;
          rows.append(d);
        }
        py::dict out;
        out["population"] = t.population;
        out["rows"] = rows;
        return out;
      },
      py::arg("x"), py::arg("y"), py::arg("probs"), py::arg("beta") = 1.0, py::arg("sizes"), py::arg("seeds"));

  m.def(
      "tail_diagnostic",
      [](const Array& x, double beta) {
        const Matrix mx = to_matrix(x, "x");
        return tail_diagnostic(points_from_rows(mx), MetricSpec::euclidean(mx.cols(), beta));
      },
      py::arg("x"), py::arg("beta") = 1.0);

  m.def("c_const", &c_const, py::arg("ell"), py::arg("beta"));
  m.def("c_gauss", &c_gauss, py::arg("beta"));

  m.def(
      "classify",
      [](const py::dict& flags) {
        MomentFlags f;
        for (const auto& [k, v] : flags) {
          const auto key = k.cast<std::string>();
          if (key == "beta") f.beta = v.cast<double>();
          else if (key == "x_beta") f.x_beta = v.cast<bool>();
          else if (key == "y_beta") f.y_beta = v.cast<bool>();
          else if (key == "xy_product") f.xy_product = v.cast<bool>();
          else if (key == "x_2beta") f.x_2beta = v.cast<bool>();
          else if (key == "y_2beta") f.y_2beta = v.cast<bool>();
          else if (key == "hx_L1") f.hx_L1 = v.cast<bool>();
          else if (key == "hx_L2") f.hx_L2 = v.cast<bool>();
          else if (key == "hy_L1") f.hy_L1 = v.cast<bool>();
          else if (key == "hy_L2") f.hy_L2 = v.cast<bool>();
          else if (key == "identical") f.identical = v.cast<bool>();
          else throw InputError("unknown flag '" + key + "'");
        }
        const auto r = regime_classify(f);
        const auto verdict = [](const DefinitionVerdict& d) {
          py::dict o;
          o["status"] = to_string(d.status);
          o["reason"] = d.reason;
          return o;
        };
        py::dict out;
        out["pairwise"] = verdict(r.def1);
        out["four_point"] = verdict(r.def2);
        out["centered"] = verdict(r.def3);
        out["finite_values_agree"] = r.finite_values_agree;
        return out;
      },
      py::arg("flags"));

  m.def("set_num_threads", &set_num_threads, py::arg("n"));
  m.def("num_threads", &num_threads);
}
