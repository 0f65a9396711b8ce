#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "emlab/capacity.hpp"
#include "emlab/geom.hpp"
#include "emlab/measure_io.hpp"
#include "emlab/reduced.hpp"
#include "emlab/semilinear.hpp"

namespace py = pybind11;
using namespace emlab;

namespace {

py::array_t<double> to_numpy(const GridFunction& u) {
  const auto v = u.values();
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

GridFunction from_numpy(const Domain& dom, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != dom.size())
    throw std::invalid_argument("expected a 1-D array with one value per interior node");
  return GridFunction(dom, std::vector<double>(a.data(), a.data() + a.shape(0)));
}

Point to_point(const std::vector<double>& x) {
  if (x.empty() || x.size() > 3) throw std::invalid_argument("points have 1 to 3 coordinates");
  Point p{0, 0, 0};
  std::copy(x.begin(), x.end(), p.begin());
  return p;
}

std::vector<Point> to_points(const std::vector<std::vector<double>>& xs) {
  std::vector<Point> out;
  for (const auto& x : xs) out.push_back(to_point(x));
  return out;
}

PointMeasure point_measure(int dim, const std::vector<std::vector<double>>& xs, const std::vector<double>& w) {
  if (xs.size() != w.size()) throw std::invalid_argument("one weight per point");
  return PointMeasure{dim, to_points(xs), w};
}

CoverMode cover_mode(const std::string& m) {
  if (m == "exact") return CoverMode::exact;
  if (m == "greedy") return CoverMode::greedy;
  throw std::invalid_argument("mode must be exact or greedy");
}

py::dict trace_dict(const SolveTrace& t) {
  py::list rows;
  for (const TraceRow& r : t.rows) rows.append(py::make_tuple(r.iter, r.residual, r.energy));
  py::dict d;
  d["u"] = to_numpy(t.u);
  d["g_u"] = to_numpy(t.g_u);
  d["converged"] = t.converged;
  d["residual"] = t.residual;
  d["trace"] = rows;
  d["note"] = t.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-difference lab for -Delta u + g(u) = mu with measure data";

  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Check>(m, "Check")
      .def_readonly("name", &Check::name)
      .def_readonly("lhs", &Check::lhs)
      .def_readonly("rhs", &Check::rhs)
      .def_readonly("passed", &Check::pass)
      .def("__repr__", [](const Check& c) {
        return "Check(" + c.name + ", lhs=" + fmt(c.lhs) + ", rhs=" + fmt(c.rhs) + ", passed=" + (c.pass ? "True" : "False") + ")";
      });

  py::class_<Domain>(m, "Domain")
      .def(py::init([](int dim, const std::vector<std::pair<double, double>>& bounds, double h, bool ball) {
             std::vector<Interval> b;
             for (const auto& [lo, hi] : bounds) b.push_back({lo, hi});
             return Domain(dim, b, h, ball ? Shape::ball : Shape::box);
           }),
           py::arg("dim"), py::arg("bounds"), py::arg("h"), py::arg("ball") = false)
      .def_static("unit_box", &Domain::unit_box, py::arg("dim"), py::arg("h"))
      .def_static("centered_ball", &Domain::centered_ball, py::arg("dim"), py::arg("radius"), py::arg("h"))
      .def_property_readonly("dim", &Domain::dim)
      .def_property_readonly("h", &Domain::h)
      .def_property_readonly("size", &Domain::size)
      .def("coords", [](const Domain& d, std::size_t i) {
        const Point p = d.coords(i);
        return std::vector<double>(p.begin(), p.begin() + d.dim());
      })
      .def("nearest_node", [](const Domain& d, const std::vector<double>& x) { return d.nearest_node(to_point(x)); });

  py::class_<DiscreteMeasure>(m, "Measure")
      .def(py::init([](const Domain& dom, const std::vector<std::tuple<std::vector<double>, double, bool>>& atoms,
                       std::optional<py::array_t<double, py::array::c_style | py::array::forcecast>> density) {
             std::vector<Atom> a;
             for (const auto& [x, w, sing] : atoms) a.push_back({to_point(x), w, sing});
             std::optional<GridFunction> dens;
             if (density) dens = from_numpy(dom, *density);
             return DiscreteMeasure(dom, std::move(a), std::move(dens));
           }),
           py::arg("domain"), py::arg("atoms") = std::vector<std::tuple<std::vector<double>, double, bool>>{},
           py::arg("density") = py::none())
      .def_static(
          "dirac",
          [](const Domain& dom, const std::vector<double>& x, double w, bool singular) {
            return DiscreteMeasure::dirac(dom, to_point(x), w, singular);
          },
          py::arg("domain"), py::arg("point"), py::arg("weight") = 1.0, py::arg("singular") = false)
      .def_static(
          "from_text", [](const std::string& text) {
            std::istringstream is(text);
            return read_measure(is);
          },
          py::arg("text"))
      .def_property_readonly("domain", &DiscreteMeasure::domain)
      .def("tv_norm", &DiscreteMeasure::tv_norm)
      .def("total_mass", &DiscreteMeasure::total_mass)
      .def("scaled", &DiscreteMeasure::scaled)
      .def("__add__", [](const DiscreteMeasure& a, const DiscreteMeasure& b) { return a + b; })
      .def("__sub__", [](const DiscreteMeasure& a, const DiscreteMeasure& b) { return a - b; });

  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def(py::init(&parse_nonlinearity), py::arg("spec"))
      .def_static("power", &Nonlinearity::power, py::arg("p"))
      .def_static("exponential", &Nonlinearity::exponential)
      .def("capped", &Nonlinearity::capped, py::arg("n"))
      .def("__call__", [](const Nonlinearity& g, double t) { return g(t); })
      .def("primitive", &Nonlinearity::primitive)
      .def_property_readonly("name", &Nonlinearity::name)
      .def_property_readonly("sign_condition", &Nonlinearity::sign_condition)
      .def_property_readonly("nondecreasing", &Nonlinearity::nondecreasing);

  m.def(
      "solve_linear",
      [](const Domain& dom, const DiscreteMeasure& mu) {
        const LinearReport r = solve_linear(dom, mu);
        py::dict d;
        d["u"] = to_numpy(r.u);
        d["residual_linf"] = r.residual_linf;
        d["estimates"] = r.estimates;
        return d;
      },
      py::arg("domain"), py::arg("mu"));

  m.def(
      "check_kato",
      [](const Domain& dom, py::array_t<double> u, py::array_t<double> f) {
        return check_kato(from_numpy(dom, u), from_numpy(dom, f));
      },
      py::arg("domain"), py::arg("u"), py::arg("f"));

  m.def(
      "solve_nonlinear",
      [](const Domain& dom, const Nonlinearity& g, const DiscreteMeasure& mu, const std::string& route, double tol) {
        SolverKnobs k;
        k.tol = tol;
        const SemilinearProblem p(dom, g, mu, k);
        if (route == "energy") return trace_dict(minimize_energy(p));
        if (route == "contraction") return trace_dict(contraction_solve(p));
        if (route != "bracket") throw std::invalid_argument("route must be energy, bracket or contraction");
        const auto [lo, hi] = default_brackets(dom, mu);
        return trace_dict(sub_super_solve(p, lo, hi));
      },
      py::arg("domain"), py::arg("g"), py::arg("mu"), py::arg("route") = "energy", py::arg("tol") = 0.0);

  m.def(
      "reduced_measure",
      [](const Domain& dom, const Nonlinearity& g, const DiscreteMeasure& mu) {
        const ReducedResult r = reduced_measure(dom, g, mu);
        py::list levels;
        for (const ReducedLevel& l : r.levels) levels.append(py::make_tuple(l.n, l.l1_u, l.tv_mu_star, l.tv_gamma));
        py::dict d;
        d["u_star"] = to_numpy(r.u_star);
        d["mu_star"] = r.mu_star;
        d["gamma"] = r.gamma;
        d["complete"] = r.complete;
        d["good"] = good_measure_test(r, mu);
        d["levels"] = levels;
        return d;
      },
      py::arg("domain"), py::arg("g"), py::arg("mu"));

  m.def("exponential_integral", &exponential_integral, py::arg("c"), py::arg("h"), py::arg("radius") = 1.0);
  m.def(
      "threshold_scan_exponential",
      [](const std::vector<double>& masses, const std::vector<double>& hs) {
        const ThresholdTable t = threshold_scan_exponential(masses, hs);
        py::list rows;
        for (const ScanRow& r : t.rows) rows.append(py::make_tuple(r.param, r.h, r.statistic, r.classification));
        return py::make_tuple(rows, t.critical);
      },
      py::arg("masses"), py::arg("hs"));
  m.def("brezis_merle_bound", &brezis_merle_bound, py::arg("m"), py::arg("d"));

  m.def("omega", &omega, py::arg("s"));
  m.def(
      "hausdorff_cover",
      [](int dim, const std::vector<std::vector<double>>& pts, double s, double delta, double rho, const std::string& mode) {
        const Cover c = hausdorff_cover(PointSet{dim, to_points(pts), rho}, s, delta, cover_mode(mode));
        py::list balls;
        for (const Ball& b : c.balls) balls.append(py::make_tuple(std::vector<double>(b.center.begin(), b.center.end()), b.r));
        return py::make_tuple(c.value, balls);
      },
      py::arg("dim"), py::arg("points"), py::arg("s"), py::arg("delta") = kInfDelta, py::arg("rho") = 0.0,
      py::arg("mode") = "exact");
  m.def(
      "frostman_check",
      [](int dim, const std::vector<std::vector<double>>& pts, const std::vector<double>& w, double alpha, double s,
         double delta) { return frostman_check(point_measure(dim, pts, w), alpha, s, delta); },
      py::arg("dim"), py::arg("points"), py::arg("weights"), py::arg("alpha"), py::arg("s"), py::arg("delta") = kInfDelta);
  m.def(
      "greedy_decompose",
      [](int dim, const std::vector<std::vector<double>>& pts, const std::vector<double>& w, double alpha, double s,
         double delta, double theta) {
        const PointMeasure mu = point_measure(dim, pts, w);
        return greedy_decompose(mu, hausdorff_oracle(mu, alpha, s, delta), theta);
      },
      py::arg("dim"), py::arg("points"), py::arg("weights"), py::arg("alpha"), py::arg("s"), py::arg("delta") = kInfDelta,
      py::arg("theta") = 0.5);

  m.def(
      "capacitary_potential",
      [](const Domain& dom, const std::vector<std::size_t>& k) {
        const CapacityResult r = capacitary_potential(dom, k);
        py::dict d;
        d["u"] = to_numpy(r.u);
        d["cap"] = r.cap;
        d["nu_mass"] = r.nu.total_mass();
        d["equivalence"] = [&] {
          py::list l;
          if (!r.K.empty())
            for (double e : {0.1, 0.25, 0.5}) l.append(cap_equivalence_check(r, e));
          return l;
        }();
        return d;
      },
      py::arg("domain"), py::arg("K"));
}
