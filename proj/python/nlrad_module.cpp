#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "nlrad/correlation.hpp"
#include "nlrad/descriptive.hpp"
#include "nlrad/embedding.hpp"
#include "nlrad/norms.hpp"
#include "nlrad/radius.hpp"
#include "nlrad/recurrence.hpp"
#include "nlrad/stats.hpp"
#include "nlrad/systems.hpp"
#include "nlrad/types.hpp"

namespace py = pybind11;
using namespace nlrad;

namespace {

Trajectory trajectory_from_array(py::array_t<double, py::array::c_style |
                                                         py::array::forcecast>
                                     points,
                                 const std::string& norm) {
  if (points.ndim() != 2)
    throw ArgumentError("points must be a 2-D array (n x d)");
  Trajectory trajectory;
  trajectory.n = static_cast<std::size_t>(points.shape(0));
  trajectory.d = static_cast<std::size_t>(points.shape(1));
  trajectory.norm = norm_from_string(norm);
  trajectory.data.assign(points.data(),
                         points.data() + trajectory.n * trajectory.d);
  return trajectory;
}

TimeSeries series_from_values(const std::vector<double>& values, double dt) {
  TimeSeries series;
  series.values = values;
  series.dt = dt;
  return series;
}

py::array_t<double> trajectory_to_array(const Trajectory& trajectory) {
  py::array_t<double> out({trajectory.n, trajectory.d});
  std::copy(trajectory.data.begin(), trajectory.data.end(),
            out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_nlrad, m) {
  m.doc() =
      "Radius selection for correlation-sum nonlinear measures: "
      "reference-rule radii, correlation dimension and K2 entropy";

  py::register_exception<ArgumentError>(m, "ArgumentError",
                                        PyExc_ValueError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError",
                                               PyExc_ValueError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError",
                                                PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError",
                                          PyExc_RuntimeError);

  py::class_<RadiusSelection>(m, "RadiusSelection")
      .def_readonly("r_opt", &RadiusSelection::r_opt)
      .def_readonly("alpha", &RadiusSelection::alpha)
      .def_readonly("spread", &RadiusSelection::spread)
      .def_readonly("n", &RadiusSelection::n)
      .def_readonly("d", &RadiusSelection::d)
      .def("__repr__", [](const RadiusSelection& s) {
        return "RadiusSelection(r_opt=" + std::to_string(s.r_opt) + ")";
      });

  py::class_<CorrelationCurve>(m, "CorrelationCurve")
      .def(py::init([](std::vector<double> radii, std::vector<double> sums) {
             CorrelationCurve curve;
             curve.radii = std::move(radii);
             curve.sums = std::move(sums);
             return curve;
           }),
           py::arg("radii"), py::arg("sums"))
      .def_readonly("radii", &CorrelationCurve::radii)
      .def_readonly("sums", &CorrelationCurve::sums)
      .def_readonly("counts", &CorrelationCurve::counts)
      .def_readonly("n", &CorrelationCurve::n);

  py::class_<DimensionEstimate>(m, "DimensionEstimate")
      .def_readonly("d2", &DimensionEstimate::d2)
      .def_readonly("r_lo", &DimensionEstimate::r_lo)
      .def_readonly("r_hi", &DimensionEstimate::r_hi)
      .def_readonly("points_used", &DimensionEstimate::points_used)
      .def_readonly("residual", &DimensionEstimate::residual);

  py::class_<DiagonalHistogram>(m, "DiagonalHistogram")
      .def_readonly("counts", &DiagonalHistogram::counts)
      .def_readonly("epsilon", &DiagonalHistogram::epsilon)
      .def_readonly("series_length", &DiagonalHistogram::series_length)
      .def_readonly("self_pairs", &DiagonalHistogram::self_pairs);

  py::class_<EntropyEstimate>(m, "EntropyEstimate")
      .def_readonly("k2", &EntropyEstimate::k2)
      .def_readonly("r_used", &EntropyEstimate::r_used)
      .def_readonly("dt", &EntropyEstimate::dt);

  py::class_<DelaySelection>(m, "DelaySelection")
      .def_readonly("tau", &DelaySelection::tau)
      .def_readonly("found_minimum", &DelaySelection::found_minimum)
      .def_readonly("mi", &DelaySelection::mi);

  py::class_<SampleSummary>(m, "SampleSummary")
      .def_readonly("mean", &SampleSummary::mean)
      .def_readonly("sample_std", &SampleSummary::sample_std)
      .def_readonly("ci_low", &SampleSummary::ci_low)
      .def_readonly("ci_high", &SampleSummary::ci_high)
      .def_readonly("n_samples", &SampleSummary::n_samples);

  m.def(
      "distance",
      [](const std::vector<double>& a, const std::vector<double>& b,
         const std::string& norm) {
        return distance(a, b, norm_from_string(norm));
      },
      py::arg("a"), py::arg("b"), py::arg("norm") = "L2");

  m.def(
      "unit_ball_volume",
      [](const std::string& norm, std::size_t d) {
        return unit_ball_volume(norm_from_string(norm), d);
      },
      py::arg("norm"), py::arg("d"));

  m.def(
      "alpha_coefficient",
      [](const std::string& norm, std::size_t d) {
        return alpha_coefficient(norm_from_string(norm), d);
      },
      py::arg("norm"), py::arg("d"));

  m.def(
      "alpha_general",
      [](const std::string& norm, std::size_t d) {
        return alpha_general(norm_from_string(norm), d);
      },
      py::arg("norm"), py::arg("d"));

  m.def(
      "spread",
      [](const std::vector<double>& values) {
        return spread_estimate(series_from_values(values, 1.0));
      },
      py::arg("values"), "min(sample std, IQR/1.34) of a scalar series");

  m.def(
      "reference_radius",
      [](double spread, std::size_t n, std::size_t d,
         const std::string& norm) {
        return reference_radius(spread, n, d, norm_from_string(norm));
      },
      py::arg("spread"), py::arg("n"), py::arg("d") = 1,
      py::arg("norm") = "L2");

  m.def(
      "radius_range",
      [](const RadiusSelection& selection, double beta) {
        const RadiusRange range = radius_range(selection, beta);
        return py::make_tuple(range.lower, range.upper);
      },
      py::arg("selection"), py::arg("beta"));

  m.def(
      "delay_embed",
      [](const std::vector<double>& values, std::size_t d, std::size_t tau) {
        return trajectory_to_array(delay_embed(
            series_from_values(values, 1.0), EmbeddingSpec{d, tau}, Norm::L2));
      },
      py::arg("values"), py::arg("d"), py::arg("tau") = 1);

  m.def(
      "select_delay_mi",
      [](const std::vector<double>& values, std::size_t max_tau,
         std::size_t bins) {
        return select_delay_mi(series_from_values(values, 1.0), max_tau, bins);
      },
      py::arg("values"), py::arg("max_tau"), py::arg("bins") = 64);

  m.def(
      "mutual_information",
      [](const std::vector<double>& values, std::size_t lag,
         std::size_t bins) {
        return mutual_information(series_from_values(values, 1.0), lag, bins);
      },
      py::arg("values"), py::arg("lag"), py::arg("bins") = 64);

  m.def(
      "correlation_sum",
      [](py::array_t<double, py::array::c_style | py::array::forcecast>
             points,
         double r, const std::string& norm, bool include_self) {
        return correlation_sum(trajectory_from_array(points, norm), r,
                               include_self);
      },
      py::arg("points"), py::arg("r"), py::arg("norm") = "L2",
      py::arg("include_self") = true);

  m.def(
      "correlation_curve",
      [](py::array_t<double, py::array::c_style | py::array::forcecast>
             points,
         std::vector<double> radii, const std::string& norm,
         bool include_self) {
        return correlation_curve(trajectory_from_array(points, norm),
                                 std::move(radii), include_self);
      },
      py::arg("points"), py::arg("radii"), py::arg("norm") = "L2",
      py::arg("include_self") = true);

  m.def(
      "gp_dimension",
      [](const CorrelationCurve& curve, std::optional<double> r_lo,
         std::optional<double> r_hi) {
        std::optional<FitRange> range;
        if (r_lo && r_hi) range = FitRange{*r_lo, *r_hi};
        return gp_dimension(curve, range);
      },
      py::arg("curve"), py::arg("r_lo") = py::none(),
      py::arg("r_hi") = py::none());

  m.def("geometric_grid", &geometric_grid, py::arg("lo"), py::arg("hi"),
        py::arg("count"));

  m.def(
      "recurrence_matrix",
      [](py::array_t<double, py::array::c_style | py::array::forcecast>
             points,
         double epsilon, const std::string& norm) {
        const RecurrenceMatrix matrix =
            recurrence_matrix(trajectory_from_array(points, norm), epsilon);
        py::array_t<bool> bits({matrix.n, matrix.n});
        for (std::size_t i = 0; i < matrix.n * matrix.n; ++i)
          bits.mutable_data()[i] = matrix.bits[i] != 0;
        return py::make_tuple(bits, matrix.recurrence_rate());
      },
      py::arg("points"), py::arg("epsilon"), py::arg("norm") = "L2",
      "returns (bool matrix, recurrence rate)");

  m.def(
      "diagonal_histogram",
      [](const std::vector<double>& values, double epsilon, std::size_t m_max,
         bool include_self) {
        return diagonal_histogram(series_from_values(values, 1.0), epsilon,
                                  m_max, include_self);
      },
      py::arg("values"), py::arg("epsilon"), py::arg("m_max"),
      py::arg("include_self") = true);

  m.def("k2_estimate", &k2_estimate, py::arg("hist"), py::arg("dt") = 1.0,
        py::arg("m_lo") = 2, py::arg("m_hi") = 8,
        py::arg("count_floor") = kDefaultCountFloor);

  m.def(
      "k2_curve",
      [](const std::vector<double>& values, const std::vector<double>& radii,
         double dt, std::size_t m_lo, std::size_t m_hi,
         std::uint64_t count_floor) {
        const auto curve = k2_curve(series_from_values(values, dt), radii,
                                    m_lo, m_hi, count_floor);
        py::list out;
        for (const auto& point : curve)
          out.append(py::make_tuple(point.r,
                                    point.ok ? py::cast(point.k2) : py::none(),
                                    point.ok));
        return out;
      },
      py::arg("values"), py::arg("radii"), py::arg("dt") = 1.0,
      py::arg("m_lo") = 2, py::arg("m_hi") = 8,
      py::arg("count_floor") = kDefaultCountFloor,
      "list of (r, k2 or None, ok)");

  m.def(
      "generate",
      [](const std::string& system, std::size_t length, std::uint64_t seed,
         std::optional<std::size_t> transient) {
        SystemSpec spec = make_system_spec(system, length, seed);
        if (transient) spec.transient = *transient;
        const GeneratedSeries out = generate(spec);
        return py::make_tuple(py::cast(out.x.values),
                              trajectory_to_array(out.states), out.x.dt);
      },
      py::arg("system"), py::arg("length"), py::arg("seed") = 0,
      py::arg("transient") = py::none(),
      "returns (x values, full state array, dt)");

  m.def(
      "add_observational_noise",
      [](const std::vector<double>& values, double k, std::uint64_t seed) {
        return add_observational_noise(series_from_values(values, 1.0), k,
                                       seed)
            .values;
      },
      py::arg("values"), py::arg("k"), py::arg("seed") = 0);

  m.def(
      "baseline_radius",
      [](py::array_t<double, py::array::c_style | py::array::forcecast>
             points,
         const std::string& rule, double value, const std::string& norm) {
        BaselineRule spec{BaselineRule::Kind::FractionOfSigma, value};
        if (rule == "fraction_of_sigma")
          spec.kind = BaselineRule::Kind::FractionOfSigma;
        else if (rule == "fraction_of_max_extent")
          spec.kind = BaselineRule::Kind::FractionOfMaxExtent;
        else if (rule == "fixed_recurrence_rate")
          spec.kind = BaselineRule::Kind::FixedRecurrenceRate;
        else
          throw ArgumentError("unknown baseline rule '" + rule + "'");
        return baseline_radius(trajectory_from_array(points, norm), spec);
      },
      py::arg("points"), py::arg("rule"), py::arg("value"),
      py::arg("norm") = "L2");

  m.def(
      "amise_bias_variance",
      [](double r, std::size_t n, std::size_t d, const std::string& norm) {
        const AmiseScales scales =
            amise_bias_variance(r, n, d, norm_from_string(norm));
        return py::make_tuple(scales.bias_scale, scales.variance_scale);
      },
      py::arg("r"), py::arg("n"), py::arg("d"), py::arg("norm") = "L2",
      "data-independent (bias, variance) scale factors");

  m.def(
      "gaussian_ci",
      [](const std::vector<double>& samples) { return gaussian_ci(samples); },
      py::arg("samples"));
  m.def(
      "bootstrap_ci",
      [](const std::vector<double>& samples, std::size_t resamples,
         std::uint64_t seed) {
        return bootstrap_ci(samples, resamples, seed);
      },
      py::arg("samples"), py::arg("resamples") = 1000, py::arg("seed") = 0);
  m.def(
      "two_sample_z",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return two_sample_z(a, b);
      },
      py::arg("group_a"), py::arg("group_b"));

  m.attr("__version__") = "0.1.0";
}
