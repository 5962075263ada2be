#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "etakit/chain.hpp"
#include "etakit/io.hpp"
#include "etakit/metric.hpp"
#include "etakit/perturbation.hpp"
#include "etakit/quasi.hpp"
#include "etakit/weyl.hpp"

namespace py = pybind11;
using namespace etakit;

namespace {

py::list residual_terms(const WeylPolynomial& poly) {
    py::list out;
    for (const auto& [key, c] : poly.terms()) {
        py::dict term;
        term["a"] = key.first;
        term["b"] = key.second;
        term["re"] = c.re.get_str();
        term["im"] = c.im.get_str();
        out.append(term);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_etakit, m) {
    m.doc() = "Metric operators for pseudo-Hermitian Hamiltonians";

    auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", input_error.ptr());

    m.attr("DEFAULT_TOL") = kDefaultTol;

    py::class_<MetricClass>(m, "MetricClass")
        .def_readonly("hermitian", &MetricClass::hermitian)
        .def_readonly("invertible", &MetricClass::invertible)
        .def_readonly("positive", &MetricClass::positive)
        .def_readonly("min_singular_value", &MetricClass::min_singular_value)
        .def_readonly("min_eigenvalue_of_hermitian_part", &MetricClass::min_eigenvalue_of_hermitian_part)
        .def_readonly("hermiticity_defect", &MetricClass::hermiticity_defect);

    py::class_<MetricBasis>(m, "MetricBasis")
        .def_readonly("hamiltonian", &MetricBasis::hamiltonian)
        .def_readonly("basis", &MetricBasis::basis)
        .def_readonly("classifications", &MetricBasis::classifications)
        .def_property_readonly("dimension", &MetricBasis::dimension);

    m.def("residual", &residual, py::arg("H"), py::arg("eta"));
    m.def("classify_metric", &classify_metric, py::arg("eta"), py::arg("tol") = kDefaultTol);
    m.def("solve_metric_space", &solve_metric_space, py::arg("H"), py::arg("tol") = kDefaultTol);
    m.def("projection_defect", &projection_defect, py::arg("basis"), py::arg("eta"));
    m.def("find_metric", &find_metric, py::arg("basis"), py::arg("want_positive") = false,
          py::arg("tol") = kDefaultTol, py::arg("seed") = 0);
    m.def("catalog_two_point", [](Complex x, Complex y) {
        auto p = catalog_two_point(x, y);
        return py::make_tuple(p.hamiltonian, p.eta);
    }, py::arg("x"), py::arg("y"));
    m.def("catalog_oscillator", [](double omega) {
        auto p = catalog_oscillator(omega);
        return py::make_tuple(p.hamiltonian, p.eta);
    }, py::arg("omega"));

    py::class_<EtaChain>(m, "EtaChain")
        .def_readonly("hamiltonian", &EtaChain::hamiltonian)
        .def_readonly("etas", &EtaChain::etas)
        .def_readonly("residuals", &EtaChain::residuals)
        .def_readonly("classes", &EtaChain::classes)
        .def_readonly("degenerate", &EtaChain::degenerate)
        .def_readonly("normalized", &EtaChain::normalized)
        .def_readonly("shift_alpha", &EtaChain::shift_alpha)
        .def_readonly("rank", &EtaChain::rank);

    m.def("next_eta", &next_eta, py::arg("H"), py::arg("eta"));
    m.def("build_chain", &build_chain, py::arg("H"), py::arg("eta0"), py::arg("k_max"),
          py::arg("normalize") = false, py::arg("tol") = kDefaultTol);
    m.def("chain_via_shift", &chain_via_shift, py::arg("H"), py::arg("eta0"), py::arg("k_max"),
          py::arg("normalize") = false, py::arg("tol") = kDefaultTol);
    m.def("shift_for_invertibility", [](const ComplexMatrix& h, double tol) {
        auto s = shift_for_invertibility(h, tol);
        return py::make_tuple(s.alpha, s.shifted);
    }, py::arg("H"), py::arg("tol") = kDefaultTol);

    py::class_<RealPolynomial>(m, "RealPolynomial")
        .def(py::init<std::vector<double>>(), py::arg("coeffs"))
        .def_static("parse", &RealPolynomial::parse)
        .def_property_readonly("coeffs", &RealPolynomial::coeffs)
        .def_property_readonly("degree", &RealPolynomial::degree)
        .def("__call__", &RealPolynomial::operator())
        .def("__repr__", [](const RealPolynomial& p) { return "RealPolynomial(" + p.to_string() + ")"; });

    py::class_<PerturbedHamiltonian>(m, "PerturbedHamiltonian")
        .def_readonly("H", &PerturbedHamiltonian::hamiltonian)
        .def_readonly("K", &PerturbedHamiltonian::k)
        .def_readonly("f", &PerturbedHamiltonian::f)
        .def_readonly("H_tilde", &PerturbedHamiltonian::perturbed)
        .def_readonly("eta", &PerturbedHamiltonian::eta)
        .def_readonly("residual", &PerturbedHamiltonian::residual)
        .def_readonly("commutator_defect", &PerturbedHamiltonian::commutator_defect);

    m.def("commutator_defect", &commutator_defect, py::arg("A"), py::arg("B"));
    m.def("matrix_poly", &matrix_poly, py::arg("K"), py::arg("f"));
    m.def("perturb", [](const ComplexMatrix& h, const ComplexMatrix& eta, const ComplexMatrix& k,
                        const RealPolynomial& f, double tol, bool allow_hermitian) {
        return perturb(h, eta, k, f, {tol, allow_hermitian});
    }, py::arg("H"), py::arg("eta"), py::arg("K"), py::arg("f"), py::arg("tol") = kDefaultTol,
       py::arg("allow_hermitian") = false);
    m.def("auto_K", &auto_K, py::arg("eta"), py::arg("f"), py::arg("tol") = kDefaultTol);

    py::class_<InducedForm>(m, "InducedForm")
        .def_readonly("eta", &InducedForm::eta)
        .def_readonly("sqrt_eta", &InducedForm::sqrt_eta)
        .def_readonly("inv_sqrt_eta", &InducedForm::inv_sqrt_eta);

    m.def("metric_sqrt", &metric_sqrt, py::arg("eta"), py::arg("tol") = kDefaultTol);
    m.def("induced_hamiltonian", &induced_hamiltonian, py::arg("H"), py::arg("form"),
          py::arg("tol") = kDefaultTol);
    m.def("induced_inner", &induced_inner, py::arg("phi"), py::arg("psi"), py::arg("eta"),
          py::arg("allow_indefinite") = false, py::arg("tol") = kDefaultTol);

    py::class_<ShiftedPotentialSpec>(m, "ShiftedPotentialSpec")
        .def(py::init([](std::vector<double> v, double alpha, double beta, double gamma,
                         std::vector<double> f) {
            ShiftedPotentialSpec s;
            s.potential = RealPolynomial(std::move(v));
            s.alpha = alpha;
            s.beta = beta;
            s.gamma = gamma;
            s.momentum = RealPolynomial(std::move(f));
            validate(s);
            return s;
        }), py::arg("V"), py::arg("alpha") = 1.0, py::arg("beta") = 0.0, py::arg("gamma") = 0.0,
            py::arg("f") = std::vector<double>{})
        .def_property_readonly("theta", &ShiftedPotentialSpec::theta);

    m.def("build_shifted_hamiltonian", [](const ShiftedPotentialSpec& s) {
        return to_string(build_shifted_hamiltonian<ExactComplex>(s));
    }, py::arg("spec"));
    m.def("check_symbolic", [](const ShiftedPotentialSpec& s, std::optional<double> theta) {
        return residual_terms(check_symbolic<ExactComplex>(s, theta));
    }, py::arg("spec"), py::arg("theta") = py::none(),
       "Exact residual e^{-theta p} H e^{theta p} - H^dagger as a list of "
       "{'a', 'b', 're', 'im'} terms; empty means exactly pseudo-Hermitian.");
}
