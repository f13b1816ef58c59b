// Python face of the library. Inputs are the same exact spec strings the CLI
// takes ("1/2", "surd:0,1,2,2", "dec:0.333...!irr"); outputs are plain python
// types, with 24-digit decimal strings alongside doubles where a double would
// round a certified value.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubeshift/circle.hpp"
#include "cubeshift/density.hpp"
#include "cubeshift/forms.hpp"
#include "cubeshift/reduction.hpp"
#include "cubeshift/solver.hpp"

namespace py = pybind11;
using namespace cubeshift;

namespace {

ShiftedCubeForm form_of(const std::vector<std::string>& shifts) {
  return ShiftedCubeForm::from_strings(shifts);
}

Window window_of(const std::string& tau, const std::string& eta) {
  return Window(RealSpec::parse(tau), RealSpec::parse(eta));
}

Rat rat_of(const std::string& text, const char* what) {
  FieldReal v = RealSpec::parse(text).exact();
  if (!v.is_rational()) throw SpecError(std::string(what) + " must be rational");
  return v.as_rational();
}

py::object big(const Int& z) {
  return py::module_::import("builtins").attr("int")(z.get_str());
}

py::dict exact_num(const FieldReal& v) {
  py::dict d;
  d["approx"] = v.to_double();
  d["decimal"] = v.decimal(24);
  return d;
}

py::list solution_list(const std::vector<SolutionRecord>& sols) {
  py::list out;
  for (auto& s : sols) {
    py::dict d;
    d["x"] = s.x;
    d["value"] = exact_num(s.value);
    d["deviation"] = exact_num(s.deviation);
    out.append(d);
  }
  return out;
}

SearchBox box_of(const std::vector<std::pair<int64_t, int64_t>>& ranges) {
  SearchBox b;
  b.ranges = ranges;
  return b;
}

}  // namespace

PYBIND11_MODULE(_cubeshift, m) {
  m.doc() = "shifted-cube windows: solvers, density, circle objects, reduction";

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  // -- solver ----------------------------------------------------------------
  m.def(
      "count",
      [](const std::vector<std::string>& shifts, const std::string& tau,
         const std::string& eta) { return count_window(form_of(shifts), window_of(tau, eta)); },
      py::arg("shifts"), py::arg("tau"), py::arg("eta"),
      "solutions of |F(x) - tau| < eta over the derived box");

  m.def(
      "solve",
      [](const std::vector<std::string>& shifts, const std::string& tau, const std::string& eta,
         std::optional<std::vector<std::pair<int64_t, int64_t>>> box, const std::string& method) {
        ShiftedCubeForm f = form_of(shifts);
        Window w = window_of(tau, eta);
        SearchBox b = box ? box_of(*box) : default_box(f, w);
        if (method == "brute") return solution_list(brute_force_solve(f, w, b));
        return solution_list(mitm_solve(f, w, b, true).solutions);
      },
      py::arg("shifts"), py::arg("tau"), py::arg("eta"), py::arg("box") = py::none(),
      py::arg("method") = "mitm");

  m.def(
      "histogram_count",
      [](const std::vector<std::string>& shifts, const std::string& tau, const std::string& eta,
         const std::string& bin_width) {
        CountBracket b = histogram_count(form_of(shifts), window_of(tau, eta),
                                         rat_of(bin_width, "bin_width"));
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("shifts"), py::arg("tau"), py::arg("eta"), py::arg("bin_width"),
      "certified (lower, upper) bracket via binned convolution");

  m.def("asymptotic_main_term", &asymptotic_main_term, py::arg("s"), py::arg("eta"),
        py::arg("tau"));

  m.def(
      "moment_count",
      [](const std::string& mu1, const std::string& mu2, double p, const std::string& eta) {
        MomentCount c =
            count_S4_shifted(RealSpec::parse(mu1), RealSpec::parse(mu2), p, rat_of(eta, "eta"));
        py::dict d;
        d["count"] = c.count;
        d["diagonal"] = c.diagonal;
        d["primary"] = c.ranges.primary;
        d["secondary"] = c.ranges.secondary;
        return d;
      },
      py::arg("mu1"), py::arg("mu2"), py::arg("P"), py::arg("eta"),
      "fourth-moment pair count for the shifted pair (mu1, mu2)");

  // -- density ---------------------------------------------------------------
  m.def(
      "represented_set",
      [](const std::vector<std::string>& shifts, const std::string& a, const std::string& b,
         const std::string& eta) {
        IntervalSet s = represented_set(form_of(shifts), rat_of(a, "a"), rat_of(b, "b"),
                                        RealSpec::parse(eta));
        py::list ivals;
        for (auto& iv : s.intervals) ivals.append(py::make_tuple(iv.lo, iv.hi));
        py::dict d;
        d["intervals"] = ivals;
        d["measure"] = py::make_tuple(s.measure_lo, s.measure_hi);
        d["points"] = s.points;
        return d;
      },
      py::arg("shifts"), py::arg("a"), py::arg("b"), py::arg("eta"));

  m.def(
      "unrepresented_measure",
      [](const std::vector<std::string>& shifts, const std::string& a, const std::string& b,
         const std::string& eta) {
        MeasureBracket mb = unrepresented_measure(form_of(shifts), rat_of(a, "a"),
                                                  rat_of(b, "b"), RealSpec::parse(eta));
        return py::make_tuple(mb.lo, mb.hi);
      },
      py::arg("shifts"), py::arg("a"), py::arg("b"), py::arg("eta"));

  m.def(
      "density_profile",
      [](const std::vector<std::string>& shifts, const std::string& n, const std::string& eta,
         int prefixes) {
        DensityProfile p =
            density_profile(form_of(shifts), rat_of(n, "n"), RealSpec::parse(eta), prefixes);
        py::dict d;
        d["prefixes"] = p.prefixes;
        d["rep_lo"] = p.rep_lo;
        d["rep_hi"] = p.rep_hi;
        d["unrep_fraction_lo"] = p.unrep_fraction_lo;
        d["unrep_fraction_hi"] = p.unrep_fraction_hi;
        d["truncated"] = p.truncated;
        d["n_used"] = p.n_used;
        return d;
      },
      py::arg("shifts"), py::arg("n"), py::arg("eta"), py::arg("prefixes"));

  m.def("closed_cube_volume", &closed_cube_volume, py::arg("s"));
  m.def("qmc_cube_volume", &qmc_cube_volume, py::arg("s"), py::arg("points"));
  m.def("volume_bound", &volume_bound_theorem4, py::arg("eta"), py::arg("n"),
        "upper bound 2 eta (N + 10 N^(2/3)) V3 on represented measure, s = 3");

  // -- circle ----------------------------------------------------------------
  m.def(
      "kernel",
      [](const std::string& kind, double eta, double delta, double alpha) {
        return make_kernel(parse_kernel_kind(kind), {eta, delta}).at(alpha);
      },
      py::arg("kind"), py::arg("eta"), py::arg("delta") = 0.0, py::arg("alpha") = 0.0);

  m.def(
      "kernel_fourier",
      [](double t, const std::string& kind, double eta, double delta) {
        FourierValue v = kernel_fourier(t, parse_kernel_kind(kind), {eta, delta});
        return py::make_tuple(v.value, v.err);
      },
      py::arg("t"), py::arg("kind"), py::arg("eta"), py::arg("delta") = 0.0);

  m.def(
      "weyl_sum",
      [](int j, const std::string& alpha, const std::string& mu, double x) {
        ExpSum s = weyl_sum(j, RealSpec::parse(alpha), RealSpec::parse(mu), x);
        return py::make_tuple(s.value, s.terms);
      },
      py::arg("j"), py::arg("alpha"), py::arg("mu"), py::arg("X"),
      "sum of e(alpha (x - mu)^3) over (j-1)X < x <= jX; returns (value, terms)");

  m.def(
      "complete_exp_sum",
      [](int64_t q, int64_t v1, int64_t v2, int64_t v3) {
        return complete_exp_sum(q, v1, v2, v3).value;
      },
      py::arg("q"), py::arg("v1"), py::arg("v2"), py::arg("v3"));

  m.def(
      "classify_arc",
      [](const std::string& alpha, const std::string& p, const std::string& xi,
         const std::string& t) {
        ArcParams a{rat_of(p, "p"), rat_of(xi, "xi"), rat_of(t, "t")};
        return arc_class_name(classify_arc(RealSpec::parse(alpha).exact(), a));
      },
      py::arg("alpha"), py::arg("p"), py::arg("xi") = "1/2", py::arg("t") = "1");

  m.def(
      "dirichlet_approx",
      [](const std::string& alpha, const std::string& q_cap) {
        RationalApprox r = dirichlet_approx(RealSpec::parse(alpha).exact(),
                                            rat_of(q_cap, "q_cap"));
        return py::make_tuple(big(r.a), big(r.q), r.err);
      },
      py::arg("alpha"), py::arg("q_cap"), "(a, q, |q alpha - a|) with q <= q_cap");

  m.def(
      "singular_integral",
      [](double alpha, double x) {
        ComplexQuad q = singular_integral(alpha, x);
        return py::make_tuple(q.value, q.err);
      },
      py::arg("alpha"), py::arg("X"), "integral of e(alpha x^3) over [X, 2X]");

  m.def(
      "representation_integral",
      [](const std::vector<std::string>& shifts, const std::string& tau, const std::string& eta,
         const std::string& p, const std::string& kind, double keta, double kdelta,
         double r_cap) {
        ArcParams a;
        a.p = rat_of(p, "p");
        RepresentationResult r =
            representation_integral(form_of(shifts), window_of(tau, eta), a,
                                    parse_kernel_kind(kind), {keta, kdelta}, r_cap);
        py::dict d;
        d["integral"] = r.integral;
        d["tail_err"] = r.tail_err;
        d["quad_err"] = r.quad_err;
        d["weighted_count"] = r.weighted_count;
        d["box_points"] = r.box_points;
        return d;
      },
      py::arg("shifts"), py::arg("tau"), py::arg("eta"), py::arg("p"), py::arg("kind") = "K",
      py::arg("kernel_eta") = 1.0, py::arg("kernel_delta") = 0.0, py::arg("r_cap") = 64.0);

  m.def(
      "dirichlet_volume",
      [](int s) {
        DirichletVolume v = dirichlet_volume(s);
        py::dict d;
        d["closed_form"] = v.closed_form;
        d["estimate"] = v.estimate;
        d["err"] = v.err;
        return d;
      },
      py::arg("s"));

  // -- reduction ---------------------------------------------------------------
  m.def(
      "reduce",
      [](const std::vector<std::string>& shifts, std::optional<int> a) {
        ShiftedCubeForm f = form_of(shifts);
        SixCubeReduction red;
        std::string verdict;
        if (a) {
          red = reduce_six_cubes(f, *a);
          verdict = verdict_name(check_irrationality_poly(red.quadratic));
        } else {
          ReductionChoice c = choose_reduction(f);
          red = c.certificates.front();
          verdict = verdict_name(c.verdict);
        }
        py::list c;
        for (auto& v : red.c) c.append(exact_num(v));
        py::dict d;
        d["a"] = red.a;
        d["c"] = c;
        d["f_a"] = exact_num(red.f_a);
        d["verdict"] = verdict;
        return d;
      },
      py::arg("shifts"), py::arg("a") = py::none(),
      "six shifted cubes to a ternary quadratic; verdict is the dichotomy check");

  m.def(
      "dense_search",
      [](const std::vector<std::string>& shifts, int a, const std::string& target,
         const std::string& eta, int64_t radius) {
        SixCubeReduction red = reduce_six_cubes(form_of(shifts), a);
        DenseSearchResult r = quadratic_dense_search(red.quadratic, RealSpec::parse(target),
                                                     RealSpec::parse(eta), radius);
        std::array<int64_t, 3> y{r.witness[0], r.witness[1], r.witness[2]};
        py::dict d;
        d["y"] = r.witness;
        d["x"] = substituted_point(a, y);
        d["value"] = exact_num(r.value);
        d["deviation"] = exact_num(r.deviation);
        d["within_eta"] = r.achieved;
        d["visited"] = r.visited;
        return d;
      },
      py::arg("shifts"), py::arg("a"), py::arg("target"), py::arg("eta"), py::arg("radius"));
}
