#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>

#include "susy/aux_ode.hpp"
#include "susy/errors.hpp"
#include "susy/operators.hpp"
#include "susy/propagator.hpp"
#include "susy/solutions.hpp"
#include "susy/symbolic/suite.hpp"

namespace py = pybind11;
using namespace susy;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

// (2, N, N) array indexed [component, y, x].
ComplexArray to_array(const SpinorField& psi) {
  const int N = psi.spec().N;
  ComplexArray out({2, N, N});
  auto* dst = out.mutable_data();
  std::copy(psi.up.data().begin(), psi.up.data().end(), dst);
  std::copy(psi.down.data().begin(), psi.down.data().end(), dst + psi.spec().size());
  return out;
}

SpinorField from_array(const ComplexArray& a, const GridSpec& g, double t) {
  if (a.ndim() != 3 || a.shape(0) != 2 || a.shape(1) != g.N || a.shape(2) != g.N) {
    throw PreconditionError("spinor array must have shape (2, N, N) matching the grid");
  }
  const cplx* src = a.data();
  const std::size_t n = g.size();
  return {ScalarField(g, std::vector<cplx>(src, src + n)), ScalarField(g, std::vector<cplx>(src + n, src + 2 * n)),
          t};
}

using SolutionPtr = std::shared_ptr<AuxSolution>;

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Supersymmetric Pauli electron in nonstationary fields";

  auto base = py::register_exception<Error>(m, "SusyError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());
  py::register_exception<NormalizationError>(m, "NormalizationError", base.ptr());
  py::register_exception<BranchError>(m, "BranchError", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<InstabilityError>(m, "InstabilityError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<FieldProfile>(m, "FieldProfile")
      .def_static("constant", &FieldProfile::constant, py::arg("B0"), py::arg("D0") = 0.0)
      .def_static("linear_D", &FieldProfile::linear_D, py::arg("B0"), py::arg("D_rate"))
      .def_static("sinusoidal", &FieldProfile::sinusoidal, py::arg("B_mean"), py::arg("B_amp"), py::arg("omega"),
                  py::arg("D_mean") = 0.0, py::arg("D_amp") = 0.0)
      .def_static(
          "tabulated",
          [](std::vector<double> t, std::vector<double> B, std::vector<double> D) {
            return FieldProfile(TabulatedField(std::move(t), std::move(B), std::move(D)));
          },
          py::arg("t"), py::arg("B"), py::arg("D"))
      .def_property_readonly("kind", [](const FieldProfile& p) { return to_string(p.kind()); })
      .def("B", &FieldProfile::B, py::arg("t"))
      .def("D", &FieldProfile::D, py::arg("t"))
      .def("B_dot", &FieldProfile::B_dot, py::arg("t"))
      .def("D_dot", &FieldProfile::D_dot, py::arg("t"));

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int N, double L) {
             GridSpec g{N, L};
             g.validate();
             return g;
           }),
           py::arg("N") = 64, py::arg("L") = 20.0)
      .def_readonly("N", &GridSpec::N)
      .def_readonly("L", &GridSpec::L)
      .def_property_readonly("dx", &GridSpec::dx)
      .def("coords", [](const GridSpec& g) {
        py::array_t<double> x(g.N);
        for (int i = 0; i < g.N; ++i) x.mutable_at(i) = g.coord(i);
        return x;
      })
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(N=" + std::to_string(g.N) + ", L=" + std::to_string(g.L) + ")";
      });

  py::class_<QuantumNumbers>(m, "QuantumNumbers")
      .def(py::init([](int n, int m_, double s) {
             QuantumNumbers q{n, m_, s};
             q.validate();
             return q;
           }),
           py::arg("n"), py::arg("m"), py::arg("s"))
      .def_readonly("n", &QuantumNumbers::n)
      .def_readonly("m", &QuantumNumbers::m)
      .def_readonly("s", &QuantumNumbers::s)
      .def_property_readonly("energy", [](const QuantumNumbers& q) { return energy(q); })
      .def("__repr__", &QuantumNumbers::to_string);

  py::class_<AuxSolution, SolutionPtr>(m, "AuxSolution")
      .def("at",
           [](const AuxSolution& s, double t) {
             const AuxState a = s.at(t);
             return py::make_tuple(a.f, a.f_dot, a.omega);
           },
           py::arg("t"), "Returns (f, f_dot, Omega) at time t.")
      .def_property_readonly("t_begin", &AuxSolution::t_begin)
      .def_property_readonly("t_end", &AuxSolution::t_end)
      .def_property_readonly("wronskian", &AuxSolution::initial_wronskian)
      .def("max_wronskian_drift", &AuxSolution::max_wronskian_drift)
      .def("normalized", [](const AuxSolution& s) { return std::make_shared<AuxSolution>(normalize_wronskian(s)); });

  m.def(
      "solve_aux",
      [](const FieldProfile& profile, double t0, double t1, double e, cplx f0, cplx f0_dot, double tol) {
        SolveOptions opts;
        opts.tol = tol;
        return std::make_shared<AuxSolution>(solve(profile, PhysicalConfig{e}, t0, t1, f0, f0_dot, opts));
      },
      py::arg("profile"), py::arg("t0"), py::arg("t1"), py::arg("e") = 1.0, py::arg("f0") = kCanonicalF0,
      py::arg("f0_dot") = kCanonicalF0Dot, py::arg("tol") = 1e-12);

  m.def(
      "analytic_constant",
      [](double B, double D_rate, cplx c1, cplx c2, double e) {
        return std::make_shared<AuxSolution>(analytic_constant(PhysicalConfig{e}, B, D_rate, c1, c2));
      },
      py::arg("B"), py::arg("D_rate"), py::arg("c1"), py::arg("c2"), py::arg("e") = 1.0);

  m.def(
      "recommend_grid",
      [](const QuantumNumbers& q, const SolutionPtr& s, double t0, double t1) { return recommend_grid(q, *s, t0, t1); },
      py::arg("qn"), py::arg("sol"), py::arg("t0"), py::arg("t1"));

  m.def(
      "eigenstate",
      [](const QuantumNumbers& q, const SolutionPtr& s, double t, const GridSpec& g) {
        return to_array(eigenstate(q, *s, t, g));
      },
      py::arg("qn"), py::arg("sol"), py::arg("t"), py::arg("grid"),
      "Samples |n,m,s> at time t as a (2, N, N) array indexed [component, y, x].");

  m.def(
      "pauli_residual",
      [](const QuantumNumbers& q, const SolutionPtr& s, const GridSpec& g, double t, double dt) {
        const PauliResidual r = pauli_residual(EigenState(q, s, g), t, dt);
        return py::make_tuple(r.residual, r.residual_half_step);
      },
      py::arg("qn"), py::arg("sol"), py::arg("grid"), py::arg("t"), py::arg("dt") = 1e-3);

  m.def(
      "spinor_norm",
      [](const ComplexArray& a, const GridSpec& g) { return from_array(a, g, 0.0).norm(); }, py::arg("psi"),
      py::arg("grid"));

  m.def(
      "propagate",
      [](const ComplexArray& a, const GridSpec& g, const FieldProfile& profile, double t0, double t1, double dt,
         double e) {
        SpinorField psi = from_array(a, g, t0);
        PropagationRun spec;
        spec.initial = psi;
        spec.profile = profile;
        spec.cfg = PhysicalConfig{e};
        spec.t1 = t1;
        spec.dt = dt;
        spec.stride = std::max(1, static_cast<int>((t1 - t0) / dt));
        spec.observables = {Observable::Norm};
        PropagationResult r;
        {
          py::gil_scoped_release release;
          r = run(spec);
        }
        return to_array(r.final_state);
      },
      py::arg("psi"), py::arg("grid"), py::arg("profile"), py::arg("t0"), py::arg("t1"), py::arg("dt") = 1e-3,
      py::arg("e") = 1.0);

  m.def(
      "check_operators",
      [](const SolutionPtr& s, double t, const GridSpec& g, int probes, std::uint64_t seed, double tol_scale) {
        py::list out;
        for (const auto& row : standard_checks(probe_fields(g, t, probes, seed), context_at(*s, t), tol_scale)) {
          py::dict d;
          d["identity"] = row.identity_name;
          d["t"] = row.t;
          d["residual"] = row.residual;
          d["tolerance"] = row.tolerance;
          d["pass"] = row.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("sol"), py::arg("t"), py::arg("grid") = GridSpec{64, 20.0}, py::arg("probes") = 5,
      py::arg("seed") = 12345, py::arg("tol_scale") = 1.0);

  m.def("verify_algebra", [] {
    py::list out;
    for (const auto& r : symbolic::verify_suite()) {
      py::dict d;
      d["name"] = r.name;
      d["statement"] = r.statement;
      d["passed"] = r.passed;
      d["surviving_terms"] = r.surviving_terms;
      out.append(d);
    }
    return out;
  });
}
