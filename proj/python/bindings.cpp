// pybind11 surface over the core operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mesgencov/covariance.hpp"
#include "mesgencov/fit.hpp"
#include "mesgencov/gaussianize.hpp"
#include "mesgencov/matio.hpp"
#include "mesgencov/mespcheck.hpp"
#include "mesgencov/pipeline.hpp"
#include "mesgencov/siteselect.hpp"
#include "mesgencov/stattests.hpp"
#include "mesgencov/synth.hpp"

namespace py = pybind11;
using namespace mesgencov;

namespace {

FitResult fit_series(const std::vector<double>& values, int r, int k) {
  MonthlySeries s;
  s.site = SiteId("XX00");
  s.start_yrmonth = 198301;
  s.values = values;
  return fit_ols(s, ModelSpec{r, k});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Precipitation-chemistry covariance pipeline core";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("lambert_w0", &lambert_w0, py::arg("x"));
  m.def("haversine",
        [](double lat1, double lon1, double lat2, double lon2) {
          SiteMeta a{SiteId("AA00"), lat1, lon1}, b{SiteId("AA01"), lat2, lon2};
          return haversine(a, b);
        },
        py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"));

  py::class_<ShapiroWilkResult>(m, "ShapiroWilkResult")
      .def_readonly("W", &ShapiroWilkResult::W)
      .def_readonly("p_value", &ShapiroWilkResult::p_value);
  m.def("shapiro_wilk", &shapiro_wilk, py::arg("x"));

  py::class_<MardiaResult>(m, "MardiaResult")
      .def_readonly("b1p", &MardiaResult::b1p)
      .def_readonly("b2p", &MardiaResult::b2p)
      .def_readonly("skew_stat", &MardiaResult::skew_stat)
      .def_readonly("skew_p", &MardiaResult::skew_p)
      .def_readonly("kurt_stat", &MardiaResult::kurt_stat)
      .def_readonly("kurt_p", &MardiaResult::kurt_p)
      .def_readonly("skew_normal", &MardiaResult::skew_normal)
      .def_readonly("kurt_normal", &MardiaResult::kurt_normal)
      .def_readonly("mvn", &MardiaResult::mvn);
  m.def("mardia", &mardia, py::arg("X"));

  py::class_<RosnerRow>(m, "RosnerRow")
      .def_readonly("i", &RosnerRow::i)
      .def_readonly("mean_i", &RosnerRow::mean_i)
      .def_readonly("sd_i", &RosnerRow::sd_i)
      .def_readonly("value", &RosnerRow::value)
      .def_readonly("obs_index", &RosnerRow::obs_index)
      .def_readonly("R", &RosnerRow::R)
      .def_readonly("lam", &RosnerRow::lambda)
      .def_readonly("outlier", &RosnerRow::outlier);
  py::class_<RosnerReport>(m, "RosnerReport")
      .def_readonly("rows", &RosnerReport::rows)
      .def_readonly("warnings", &RosnerReport::warnings);
  m.def("rosner", &rosner, py::arg("x"), py::arg("max_outliers"), py::arg("alpha") = 0.05);
  m.def("rosner_lambda", &rosner_lambda, py::arg("n"), py::arg("i"), py::arg("alpha"));

  py::class_<IndependenceReport>(m, "IndependenceReport")
      .def_readonly("u", &IndependenceReport::u)
      .def_readonly("threshold", &IndependenceReport::threshold)
      .def_readonly("independent", &IndependenceReport::independent)
      .def_readonly("m", &IndependenceReport::m);
  m.def("independence_test", &independence_test, py::arg("residuals"), py::arg("alpha") = 0.05);

  py::class_<LambertWParams>(m, "LambertWParams")
      .def_readonly("mu", &LambertWParams::mu)
      .def_readonly("sigma", &LambertWParams::sigma)
      .def_readonly("delta", &LambertWParams::delta)
      .def_readonly("converged", &LambertWParams::converged)
      .def_readonly("iterations", &LambertWParams::iterations);
  py::class_<GaussianizeResult>(m, "GaussianizeResult")
      .def_readonly("transformed", &GaussianizeResult::transformed)
      .def_readonly("params", &GaussianizeResult::params);
  m.def("gaussianize_h", &gaussianize_h, py::arg("column"));

  py::class_<CoeffStat>(m, "CoeffStat")
      .def_readonly("name", &CoeffStat::name)
      .def_readonly("estimate", &CoeffStat::estimate)
      .def_readonly("std_error", &CoeffStat::std_error)
      .def_readonly("t_value", &CoeffStat::t_value)
      .def_readonly("p_value", &CoeffStat::p_value);
  py::class_<FitResult>(m, "FitResult")
      .def_property_readonly("coeffs",
                             [](const FitResult& f) { return f.coeffs; })
      .def_readonly("residuals", &FitResult::residuals)
      .def_readonly("fitted", &FitResult::fitted)
      .def_readonly("residual_std_error", &FitResult::residual_std_error)
      .def_readonly("coeff_table", &FitResult::coeff_table)
      .def_readonly("r_squared", &FitResult::r_squared)
      .def_readonly("adj_r_squared", &FitResult::adj_r_squared)
      .def_readonly("f_statistic", &FitResult::f_statistic)
      .def_readonly("f_p_value", &FitResult::f_p_value)
      .def_readonly("n_obs", &FitResult::n_obs)
      .def_readonly("dof", &FitResult::dof);
  m.def("design_matrix",
        [](int T, int r, int k) { return design_matrix(T, ModelSpec{r, k}); },
        py::arg("T"), py::arg("r"), py::arg("k"));
  m.def("fit_series", &fit_series, py::arg("values"), py::arg("r") = 1, py::arg("k") = 1,
        "OLS fit of log values against the trend + seasonal model; NaN = missing");
  m.def("impute_residuals", &impute_residuals, py::arg("fit"), py::arg("rng_seed"));

  m.def("sample_covariance",
        [](const Eigen::MatrixXd& X) { return sample_covariance(X); }, py::arg("X"));

  m.def("logdet_subset", &logdet_subset, py::arg("C"), py::arg("S"));
  m.def("greedy_interchange",
        [](const Eigen::MatrixXd& C, int s) {
          const auto sol = greedy_interchange(MespInstance{C, s});
          return py::make_tuple(sol.subset, sol.value);
        },
        py::arg("C"), py::arg("s"));
  m.def("psd_repair", &psd_repair, py::arg("C"));

  m.def("write_mat",
        [](const Eigen::MatrixXd& C, const std::string& path) { write_mat(C, path); },
        py::arg("C"), py::arg("path"));
  m.def("read_mat",
        [](const std::string& path) { return read_mat(path).values; }, py::arg("path"));

  m.def("lambertw_transform",
        [](const Eigen::MatrixXd& X, const std::vector<std::string>& names) {
          const auto out = lambertw_transform(X, names);
          py::dict d;
          d["new_residuals"] = out.new_residuals;
          d["cov"] = out.cov;
          d["mvn"] = out.mvn.multivariate.mvn;
          d["column_params"] = out.column_params;
          d["warnings"] = out.warnings;
          return d;
        },
        py::arg("X"), py::arg("names"));

  m.def("gen_cov",
        [](const std::string& config_json, const std::string& data_dir) {
          const GetCovConfig cfg = config_from_json_string(config_json);
          const LoadedData data = load_data_dir(data_dir);
          const CovOutput out = get_cov(cfg, data, "");
          py::dict d;
          d["cov"] = out.cov;
          d["labels"] = out.residual_data.column_names;
          d["residual_data"] = out.residual_data.values;
          d["residual_data_na"] = out.residual_data_na.values;
          d["mvn"] = out.mvn.multivariate.mvn;
          d["report"] = report_json(out, cfg);
          d["warnings"] = out.warnings;
          return d;
        },
        py::arg("config_json"), py::arg("data_dir"),
        "Full pipeline: returns cov, residual matrices and the JSON report");

  m.def("generate_synthetic",
        [](std::uint64_t seed, int n_sites, int months, double missing_rate, double sigma,
           double delta, int r, int k, const std::string& out_dir) {
          SynthSpec spec;
          spec.seed = seed;
          spec.n_sites = n_sites;
          spec.months = months;
          spec.missing_rate = missing_rate;
          spec.noise_sigma = sigma;
          spec.heavy_tail_delta = delta;
          spec.model = ModelSpec{r, k};
          write_synthetic(generate_synthetic(spec), out_dir);
        },
        py::arg("seed"), py::arg("n_sites"), py::arg("months"), py::arg("missing_rate"),
        py::arg("sigma"), py::arg("delta"), py::arg("r"), py::arg("k"), py::arg("out_dir"));
}
