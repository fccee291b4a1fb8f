#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jetvar/cli.hpp"
#include "jetvar/eh.hpp"
#include "jetvar/jacobi.hpp"
#include "jetvar/torus.hpp"

namespace py = pybind11;

namespace {

py::dict run_problem(const std::string& text, std::optional<std::uint64_t> seed, int jobs) {
    jv::RunOptions opt;
    opt.seed = seed;
    opt.jobs = jobs;
    auto spec = jv::parse_problem(text);
    jv::Report rep;
    {
        py::gil_scoped_release release;
        rep = jv::run(spec, opt);
    }
    py::dict out;
    out["ok"] = rep.ok();
    out["seed"] = rep.seed;
    out["report"] = rep.render();
    out["csv"] = rep.csv_files();
    return out;
}

py::dict mode_solve(const std::array<int, 4>& k) {
    auto s = jv::mode_solve(k);
    py::dict out;
    out["class"] = jv::mode_class_name(s.cls);
    out["dimension"] = s.dimension;
    py::list basis;
    for (const auto& v : s.basis) {
        py::list row;
        for (const auto& q : v) row.append(jv::qstr(q));
        basis.append(row);
    }
    out["basis"] = basis;
    return out;
}

double regularity_determinant(const std::vector<double>& diag) {
    return jv::regularity_determinant(jv::constant_metric_jet(diag, 0));
}

int quadratic_dimension(int degree) {
    return jv::polynomial_solution_space(jv::flat_operator_matrix(jv::torus_signature()), degree).dimension;
}

}  // namespace

PYBIND11_MODULE(_jetvar, m) {
    py::register_exception<jv::SpecError>(m, "SpecError", PyExc_ValueError);
    m.def("list_tasks", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& t : jv::list_tasks()) out.emplace_back(t.name, t.description);
        return out;
    });
    m.def("run", &run_problem, py::arg("problem"), py::arg("seed") = py::none(), py::arg("jobs") = 1);
    m.def("mode_solve", &mode_solve, py::arg("k"));
    m.def("regularity_determinant", &regularity_determinant, py::arg("diagonal"));
    m.def("quadratic_dimension", &quadratic_dimension, py::arg("degree"));
    m.def("upsilon_determinant", [] { return jv::qstr(jv::upsilon_determinant()); });
}
