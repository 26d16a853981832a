#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlbox/box.hpp"
#include "nlbox/distillation.hpp"
#include "nlbox/games.hpp"
#include "nlbox/io.hpp"
#include "nlbox/quantum.hpp"
#include "nlbox/search.hpp"
#include "nlbox/symmetry.hpp"
#include "nlbox/wiring.hpp"

namespace py = pybind11;
using namespace nlbox;

namespace {

Box box_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.size() != 4) throw BoxError("expected 4 rows");
  Table t{};
  for (std::size_t r = 0; r < 4; ++r) {
    if (rows[r].size() != 4) throw BoxError("expected 4 entries per row");
    for (std::size_t c = 0; c < 4; ++c) t[r][c] = rows[r][c];
  }
  return Box(t);
}

std::vector<std::vector<double>> rows_of(const Box& box) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : box.matrix()) rows.emplace_back(row.begin(), row.end());
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact analysis of binary-input/binary-output non-signaling boxes";
  m.attr("DEFAULT_TOL") = kDefaultTol;

  py::register_exception<BoxError>(m, "BoxError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Box>(m, "Box")
      .def(py::init(&box_from_rows), py::arg("matrix"))
      .def_property_readonly("matrix", &rows_of)
      .def("p", &Box::p, py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"))
      .def("__eq__", [](const Box& a, const Box& b) { return a == b; })
      .def("__repr__", [](const Box& b) { return "Box(" + box_to_json(b) + ")"; });

  py::class_<Correlators>(m, "Correlators")
      .def(py::init<double, double, double, double>(), py::arg("x00"), py::arg("x01"), py::arg("x10"),
           py::arg("x11"))
      .def_readonly("x00", &Correlators::x00)
      .def_readonly("x01", &Correlators::x01)
      .def_readonly("x10", &Correlators::x10)
      .def_readonly("x11", &Correlators::x11)
      .def("as_tuple", [](const Correlators& c) { return py::make_tuple(c.x00, c.x01, c.x10, c.x11); });

  m.def("pr", &pr);
  m.def("noise", &noise);
  m.def("p_eps", &p_eps, py::arg("eps"));
  m.def("p_eps_delta", &p_eps_delta, py::arg("eps"), py::arg("delta"));
  m.def("isotropic", &isotropic, py::arg("eta"));
  m.def("deterministic", &deterministic, py::arg("fa"), py::arg("fb"));
  m.def("mix", &mix, py::arg("first"), py::arg("second"), py::arg("weight"));

  m.def(
      "validate",
      [](const Box& box, double tol) {
        std::vector<std::string> out;
        for (const auto& v : validate(box, tol).violations) out.push_back(v.describe());
        return out;
      },
      py::arg("box"), py::arg("tol") = kDefaultTol, "Violations as strings; empty when the box is valid.");
  m.def(
      "is_non_signaling",
      [](const Box& box, double tol) {
        const auto r = is_non_signaling(box, tol);
        return py::make_tuple(r.non_signaling, r.max_discrepancy);
      },
      py::arg("box"), py::arg("tol") = kDefaultTol);
  m.def("correlators", &correlators, py::arg("box"));
  m.def(
      "chsh_values",
      [](const Correlators& c) {
        py::list out;
        for (const auto& v : chsh_values(c)) out.append(py::make_tuple(v.x, v.y, v.sign, v.value));
        return out;
      },
      py::arg("correlators"));
  m.def("nl", py::overload_cast<const Box&>(&nl), py::arg("box"));
  m.def("is_local", &is_local, py::arg("box"), py::arg("tol") = kDefaultTol);

  m.def(
      "is_quantum_correlators",
      [](const Correlators& c, double tol) {
        const auto v = is_quantum_correlators(c, tol);
        return py::make_tuple(v.quantum, v.worst_slack);
      },
      py::arg("correlators"), py::arg("tol") = kDefaultTol);
  m.def(
      "is_quantum_box",
      [](const Box& box, double tol) {
        const auto v = is_quantum_box(box, tol);
        return py::dict(py::arg("quantum") = v.quantum, py::arg("worst_slack") = v.worst_slack,
                        py::arg("full_box") = v.full_box);
      },
      py::arg("box"), py::arg("tol") = kDefaultTol);
  m.def("tsirelson_check", &tsirelson_check, py::arg("correlators"), py::arg("tol") = kDefaultTol);

  m.def("compose_xor", &compose_xor, py::arg("box"), py::arg("n"), py::arg("tol") = kDefaultTol);
  m.def("xor_correlator_law", py::overload_cast<const Box&, int>(&xor_correlator_law), py::arg("box"), py::arg("n"));

  m.def("nl_closed_eps", &nl_closed_eps, py::arg("eps"), py::arg("n"));
  m.def("nl_closed_eps_delta", &nl_closed_eps_delta, py::arg("eps"), py::arg("delta"), py::arg("n"));
  m.def("is_distillable_at", &is_distillable_at, py::arg("eps"), py::arg("delta"), py::arg("n"),
        py::arg("tol") = kDefaultTol);
  m.def(
      "optimize_quantum_distillation",
      [](int n_max, double coarse_step, double resolution) -> py::object {
        OptimizerSettings s;
        s.n_max = n_max;
        s.coarse_step = coarse_step;
        s.resolution = resolution;
        const auto o = find_quantum_distillation_optimum(s);
        if (!o) return py::none();
        return py::dict(py::arg("n") = o->n, py::arg("eps") = o->eps, py::arg("delta") = o->delta,
                        py::arg("nl_in") = o->nl_in, py::arg("nl_out") = o->nl_out);
      },
      py::arg("n_max") = 20, py::arg("coarse_step") = 1e-3, py::arg("resolution") = 1e-6,
      "Best quantum resource for XOR distillation, or None if nothing is feasible.");

  m.def("depolarize", &depolarize, py::arg("box"), py::arg("tol") = kDefaultTol);
  m.def("canonical_form", py::overload_cast<const Box&>(&canonical_form), py::arg("box"));

  m.def(
      "search_2copy",
      [](const Box& box, int jobs) {
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = search_2copy(box, jobs);
        }
        return py::dict(py::arg("nl_in") = r.nl_in, py::arg("nl_out") = r.nl_out,
                        py::arg("alice") = r.best.alice.code(), py::arg("bob") = r.best.bob.code(),
                        py::arg("canonical_classes") = r.canonical_classes,
                        py::arg("pairs_evaluated") = r.pairs_evaluated);
      },
      py::arg("box"), py::arg("jobs") = 1);

  m.def(
      "and_game_success",
      [](const Box& resource, int depth) { return and_game_success({resource, depth}); }, py::arg("resource"),
      py::arg("depth") = 1);
  m.def("classical_and_optimum", &classical_and_optimum);

  m.def("box_from_json", [](const std::string& text) { return box_from_json(text); }, py::arg("text"));
  m.def("box_to_json", &box_to_json, py::arg("box"));
}
