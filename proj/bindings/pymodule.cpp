#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdmol/analytic.hpp"
#include "qdmol/core.hpp"
#include "qdmol/model.hpp"
#include "qdmol/propagate.hpp"
#include "qdmol/validate.hpp"
#include "qdmol/version.hpp"

namespace py = pybind11;
using namespace qdmol;

PYBIND11_MODULE(qdmol, m) {
    m.doc() = "Dissipative dynamics of a laser-driven three-level double quantum dot";
    m.attr("__version__") = version;

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ComplexEigenvaluesError>(m, "ComplexEigenvaluesError",
                                                    PyExc_ArithmeticError);
    py::register_exception<DegenerateEigenvaluesError>(m, "DegenerateEigenvaluesError",
                                                       PyExc_ArithmeticError);
    py::register_exception<StiffnessError>(m, "StiffnessError", PyExc_RuntimeError);
    py::register_exception<DegenerateSteadyStateError>(m, "DegenerateSteadyStateError",
                                                       PyExc_RuntimeError);
    py::register_exception<NonPhysicalFixedPointError>(m, "NonPhysicalFixedPointError",
                                                       PyExc_RuntimeError);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("hermiticity_defect", &ValidationReport::hermiticity_defect)
        .def_readonly("trace_defect", &ValidationReport::trace_defect)
        .def_readonly("min_eigenvalue", &ValidationReport::min_eigenvalue)
        .def_readonly("hermitian_ok", &ValidationReport::hermitian_ok)
        .def_readonly("trace_ok", &ValidationReport::trace_ok)
        .def_readonly("positive_ok", &ValidationReport::positive_ok)
        .def("ok", &ValidationReport::ok);

    m.def(
        "validate_density",
        [](const ComplexMatrix& rho, double tol) { return validate_density(rho, tol); },
        py::arg("rho"), py::arg("tol") = 1e-12);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_static(
            "validated", [](const ComplexMatrix& mat) { return DensityMatrix::validated(mat); },
            py::arg("matrix"))
        .def_static("ground", &DensityMatrix::ground, py::arg("dim") = 3, py::arg("level") = 0)
        .def_static("maximally_mixed", &DensityMatrix::maximally_mixed, py::arg("dim") = 3)
        .def_static("from_diagonal", &DensityMatrix::from_diagonal, py::arg("populations"))
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def("populations", &DensityMatrix::populations);

    py::class_<LindbladTerm>(m, "LindbladTerm")
        .def(py::init<ComplexMatrix, double>(), py::arg("jump"), py::arg("rate"))
        .def_readonly("jump", &LindbladTerm::jump)
        .def_readonly("rate", &LindbladTerm::rate);

    py::class_<Generator>(m, "Generator")
        .def(py::init<ComplexMatrix, std::vector<LindbladTerm>>(), py::arg("hamiltonian"),
             py::arg("terms"))
        .def_property_readonly("dim", &Generator::dim)
        .def_property_readonly("hamiltonian", &Generator::hamiltonian)
        .def("apply", py::overload_cast<const ComplexMatrix&>(&Generator::apply, py::const_),
             py::arg("rho"))
        .def("liouvillian", &Generator::liouvillian);

    m.def("dissipator", &dissipator, py::arg("term"), py::arg("rho"));
    m.def("stack_columns", &stack_columns, py::arg("rho"));
    m.def("unstack_columns", &unstack_columns, py::arg("vec"), py::arg("dim"));

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<double, double, double, double>(), py::arg("gamma01"), py::arg("n_occ"),
             py::arg("n_tunnel"), py::arg("omega_rabi"))
        .def_readonly("gamma01", &PhysicalParams::gamma01)
        .def_readonly("n_occ", &PhysicalParams::n_occ)
        .def_readonly("n_tunnel", &PhysicalParams::n_tunnel)
        .def_readonly("omega_rabi", &PhysicalParams::omega_rabi);

    py::class_<RateParams>(m, "RateParams")
        .def(py::init<double, double, double, double>(), py::arg("l"), py::arg("m"),
             py::arg("n"), py::arg("p") = 0.0)
        .def_readonly("l", &RateParams::l)
        .def_readonly("m", &RateParams::m)
        .def_readonly("n", &RateParams::n)
        .def_readonly("p", &RateParams::p)
        .def("__repr__", [](const RateParams& r) {
            return "RateParams(l=" + std::to_string(r.l) + ", m=" + std::to_string(r.m) +
                   ", n=" + std::to_string(r.n) + ", p=" + std::to_string(r.p) + ")";
        });

    m.def("planck_occupation", &planck_occupation, py::arg("beta_hbar_omega"));
    m.def("decay_rate", &decay_rate, py::arg("omega"), py::arg("dipole_sq"));
    m.def("rates_from_physical", &rates_from_physical, py::arg("phys"));
    m.def("sigma_minus_01", &sigma_minus_01);
    m.def("sigma_plus_01", &sigma_plus_01);
    m.def("sigma_minus_12", &sigma_minus_12);
    m.def("sigma_plus_12", &sigma_plus_12);
    m.def("build_undriven", &build_undriven, py::arg("rates"));
    m.def("build_driven", &build_driven, py::arg("rates"));

    py::module_ presets_mod = m.def_submodule("presets", "Figure parameter sets");
    presets_mod.def("reference", &qdmol::presets::reference, py::arg("p") = 0.0);
    presets_mod.def("fig2_4", &qdmol::presets::fig2_4);
    presets_mod.def("fig5_7", &qdmol::presets::fig5_7);
    presets_mod.def("fig8_9", &qdmol::presets::fig8_9);
    presets_mod.def("fig10_11", &qdmol::presets::fig10_11);
    presets_mod.def("fig12_13", &qdmol::presets::fig12_13);

    py::class_<EigenPair>(m, "EigenPair")
        .def_readonly("lambda0", &EigenPair::lambda0)
        .def_readonly("lambda1", &EigenPair::lambda1);

    m.def("population_rate_matrix", &population_rate_matrix, py::arg("rates"));
    m.def("decay_eigenvalues",
          py::overload_cast<const RateParams&>(&decay_eigenvalues), py::arg("rates"));
    m.def("decay_eigenvalues", py::overload_cast<double, double, double>(&decay_eigenvalues),
          py::arg("l"), py::arg("m"), py::arg("n"));

    py::class_<UndrivenSolution>(m, "UndrivenSolution")
        .def_readonly("a_const", &UndrivenSolution::a_const)
        .def_readonly("b_const", &UndrivenSolution::b_const)
        .def_readonly("c_const", &UndrivenSolution::c_const)
        .def_readonly("eigs", &UndrivenSolution::eigs)
        .def_readonly("rates", &UndrivenSolution::rates);

    m.def("undriven_solution",
          py::overload_cast<const RateParams&>(&undriven_solution), py::arg("rates"));
    m.def("eval_populations", &eval_populations, py::arg("solution"), py::arg("t"));
    m.def("undriven_steady", py::overload_cast<const RateParams&>(&undriven_steady),
          py::arg("rates"));

    py::class_<PrintedDrivenSteady>(m, "PrintedDrivenSteady")
        .def_readonly("populations", &PrintedDrivenSteady::populations)
        .def_readonly("trace_error", &PrintedDrivenSteady::trace_error)
        .def_readonly("trace_consistent", &PrintedDrivenSteady::trace_consistent)
        .def_readonly("p0_reference_rho00", &PrintedDrivenSteady::p0_reference_rho00)
        .def_readonly("p0_discrepancy", &PrintedDrivenSteady::p0_discrepancy)
        .def_readonly("p0_consistent", &PrintedDrivenSteady::p0_consistent);

    m.def("driven_steady_printed", &driven_steady_printed, py::arg("rates"));
    m.def("driven_steady_oracle", &driven_steady_oracle, py::arg("rates"));

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("rel_tol", &IntegratorConfig::rel_tol)
        .def_readwrite("abs_tol", &IntegratorConfig::abs_tol)
        .def_readwrite("max_step", &IntegratorConfig::max_step)
        .def_readwrite("dense_output_dt", &IntegratorConfig::dense_output_dt);

    py::class_<TrajectoryStats>(m, "TrajectoryStats")
        .def_readonly("accepted_steps", &TrajectoryStats::accepted_steps)
        .def_readonly("rejected_steps", &TrajectoryStats::rejected_steps)
        .def_readonly("max_trace_drift", &TrajectoryStats::max_trace_drift)
        .def_readonly("max_hermiticity_drift", &TrajectoryStats::max_hermiticity_drift);

    py::class_<TrajectorySample>(m, "TrajectorySample")
        .def_readonly("t", &TrajectorySample::t)
        .def_readonly("state", &TrajectorySample::state);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("stats", &Trajectory::stats)
        .def("times",
             [](const Trajectory& traj) {
                 Eigen::VectorXd out(static_cast<Eigen::Index>(traj.samples.size()));
                 for (size_t i = 0; i < traj.samples.size(); ++i) {
                     out(static_cast<Eigen::Index>(i)) = traj.samples[i].t;
                 }
                 return out;
             })
        .def("populations", [](const Trajectory& traj) {
            Eigen::MatrixXd out(static_cast<Eigen::Index>(traj.samples.size()), 3);
            for (size_t i = 0; i < traj.samples.size(); ++i) {
                out.row(static_cast<Eigen::Index>(i)) =
                    traj.samples[i].state.populations().transpose();
            }
            return out;
        });

    m.def("integrate", &integrate, py::arg("generator"), py::arg("rho0"), py::arg("t_end"),
          py::arg("config") = IntegratorConfig{});
    m.def("fixed_step_endpoint", &fixed_step_endpoint, py::arg("generator"), py::arg("rho0"),
          py::arg("t_end"), py::arg("n_steps"));
    m.def("steady_state", &steady_state, py::arg("generator"));
    m.def("spectral_relaxation_time", &spectral_relaxation_time, py::arg("generator"));

    py::class_<AgreementReport>(m, "AgreementReport")
        .def_readonly("distance", &AgreementReport::distance)
        .def_readonly("t_end", &AgreementReport::t_end)
        .def_readonly("tolerance", &AgreementReport::tolerance)
        .def_readonly("pass_", &AgreementReport::pass);

    m.def("long_time_agreement", &long_time_agreement, py::arg("generator"), py::arg("rho0"),
          py::arg("t_end") = 0.0, py::arg("tolerance") = 1e-6);
    m.def("count_oscillations", &count_oscillations, py::arg("trajectory"), py::arg("level"),
          py::arg("prominence") = 1e-4);
    m.def("settle_time", &settle_time, py::arg("trajectory"), py::arg("rho_ss"),
          py::arg("eps") = 1e-3);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("detail", &CheckResult::detail);

    py::enum_<Fault>(m, "Fault")
        .value("none", Fault::none)
        .value("dissipator_sign", Fault::dissipator_sign);

    m.def("run_validation_suite", &run_validation_suite, py::arg("fault") = Fault::none,
          py::arg("seed") = 20240811u);
}
