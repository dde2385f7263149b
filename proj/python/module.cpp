#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mvdp/connection.hpp"
#include "mvdp/limit_cycle.hpp"
#include "mvdp/report.hpp"
#include "mvdp/scenario.hpp"

namespace py = pybind11;
using namespace mvdp;

PYBIND11_MODULE(_mvdp, m) {
    m.doc() = "modified van der Pol oscillator: classification, invariant-manifold "
              "shooting, saddle-connection detection, and Z2 connection/transition "
              "matrix certificates";
    m.attr("__version__") = tool_version();

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    // ------------------------------------------------------------- model
    py::class_<State>(m, "State")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &State::x)
        .def_readwrite("y", &State::y)
        .def("__repr__", [](const State& s) {
            return "State(" + format_double(s.x) + ", " + format_double(s.y) + ")";
        });

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init([](double d, double e, double theta, double alpha) {
                 return SystemParams::make(d, e, theta, alpha);
             }),
             py::arg("d"), py::arg("e"), py::arg("theta"), py::arg("alpha") = 1.0)
        .def_readonly("d", &SystemParams::d)
        .def_readonly("e", &SystemParams::e)
        .def_readonly("theta", &SystemParams::theta)
        .def_readonly("alpha", &SystemParams::alpha)
        .def("with_theta", &SystemParams::with_theta);

    py::enum_<EquilibriumId>(m, "EquilibriumId")
        .value("E0", EquilibriumId::E0)
        .value("E1", EquilibriumId::E1)
        .value("E2", EquilibriumId::E2);

    py::enum_<Stability>(m, "Stability")
        .value("Sink", Stability::Sink)
        .value("Source", Stability::Source)
        .value("Saddle", Stability::Saddle)
        .value("WeakSink", Stability::WeakSink)
        .value("Degenerate", Stability::Degenerate);

    py::class_<Mat2>(m, "Mat2")
        .def_readonly("a11", &Mat2::a11)
        .def_readonly("a12", &Mat2::a12)
        .def_readonly("a21", &Mat2::a21)
        .def_readonly("a22", &Mat2::a22)
        .def("trace", &Mat2::trace)
        .def("det", &Mat2::det);

    py::class_<SpectralData>(m, "SpectralData")
        .def_readonly("lambda1", &SpectralData::lambda1)
        .def_readonly("lambda2", &SpectralData::lambda2)
        .def("is_real_pair", &SpectralData::is_real_pair);

    py::class_<Classification>(m, "Classification")
        .def_readonly("kind", &Classification::kind)
        .def_readonly("degeneracy", &Classification::degeneracy);

    py::class_<GradedIndex>(m, "GradedIndex")
        .def_readonly("ranks", &GradedIndex::ranks)
        .def("rank", &GradedIndex::rank)
        .def("total", &GradedIndex::total)
        .def("__eq__", [](const GradedIndex& a, const GradedIndex& b) { return a == b; });

    py::enum_<InvariantKind>(m, "InvariantKind")
        .value("Sink", InvariantKind::Sink)
        .value("Saddle", InvariantKind::Saddle)
        .value("Source", InvariantKind::Source)
        .value("StableCycle", InvariantKind::StableCycle);

    m.def("vector_field", &vector_field, py::arg("params"), py::arg("state"));
    m.def("jacobian", &jacobian, py::arg("params"), py::arg("state"));
    m.def("equilibria", &equilibria, py::arg("params"));
    m.def("equilibrium", &equilibrium, py::arg("params"), py::arg("id"));
    m.def("eigenvalues_at", &eigenvalues_at, py::arg("params"), py::arg("id"));
    m.def("classify", &classify, py::arg("params"), py::arg("id"));
    m.def("lyapunov_coefficient",
          [](const SystemParams& p) { return lyapunov_coefficient(p).second; },
          py::arg("params"));
    m.def("conley_index_of", py::overload_cast<InvariantKind>(&conley_index_of),
          py::arg("kind"));
    m.def("conley_index_of", py::overload_cast<const Classification&>(&conley_index_of),
          py::arg("classification"));

    // -------------------------------------------------------------- flow
    py::class_<Trajectory::Sample>(m, "TrajectorySample")
        .def_readonly("t", &Trajectory::Sample::t)
        .def_readonly("s", &Trajectory::Sample::s);

    py::enum_<Trajectory::Stop>(m, "StopReason")
        .value("TimeReached", Trajectory::Stop::TimeReached)
        .value("Escaped", Trajectory::Stop::Escaped)
        .value("SectionHit", Trajectory::Stop::SectionHit)
        .value("StepLimit", Trajectory::Stop::StepLimit);

    py::class_<SectionHit>(m, "SectionHit")
        .def_readonly("t", &SectionHit::t)
        .def_readonly("s", &SectionHit::s);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("forward", &Trajectory::forward)
        .def_readonly("stop", &Trajectory::stop)
        .def_readonly("hit", &Trajectory::hit)
        .def("duration", &Trajectory::duration);

    m.def(
        "integrate",
        [](const SystemParams& p, const State& s0, double t_end, double tol) {
            IntegrateOptions o;
            o.tol = tol;
            return integrate(p, s0, t_end, o);
        },
        py::arg("params"), py::arg("s0"), py::arg("t_end"), py::arg("tol") = 1e-9);

    py::enum_<ManifoldKind>(m, "ManifoldKind")
        .value("Unstable", ManifoldKind::Unstable)
        .value("Stable", ManifoldKind::Stable);
    py::enum_<BranchSide>(m, "BranchSide")
        .value("Plus", BranchSide::Plus)
        .value("Minus", BranchSide::Minus);

    py::class_<ManifoldBranch>(m, "ManifoldBranch")
        .def_readonly("saddle", &ManifoldBranch::saddle)
        .def_readonly("kind", &ManifoldBranch::kind)
        .def_readonly("side", &ManifoldBranch::side)
        .def_readonly("seed_offset", &ManifoldBranch::seed_offset)
        .def_readonly("path", &ManifoldBranch::path);

    m.def(
        "manifold_branch",
        [](const SystemParams& p, EquilibriumId which, ManifoldKind kind, BranchSide side,
           double seed_offset, double tol, double t_budget) {
            BranchOptions o;
            o.tol = tol;
            o.t_budget = t_budget;
            return manifold_branch(p, which, kind, side, seed_offset, o);
        },
        py::arg("params"), py::arg("which"), py::arg("kind"), py::arg("side"),
        py::arg("seed_offset") = 1e-6, py::arg("tol") = 1e-9, py::arg("t_budget") = 400.0);

    py::class_<LimitCycle>(m, "LimitCycle")
        .def_readonly("section_point", &LimitCycle::section_point)
        .def_readonly("period", &LimitCycle::period)
        .def_readonly("orbit", &LimitCycle::orbit);

    py::class_<CycleDetection>(m, "CycleDetection")
        .def_readonly("cycle", &CycleDetection::cycle)
        .def_readonly("diagnostic", &CycleDetection::diagnostic);

    m.def(
        "detect_limit_cycle",
        [](const SystemParams& p, double tol) {
            CycleOptions o;
            o.tol = tol;
            return detect_limit_cycle(p, o);
        },
        py::arg("params"), py::arg("tol") = 1e-9);

    py::enum_<OmegaKind>(m, "OmegaKind")
        .value("Equilibrium", OmegaKind::Equilibrium)
        .value("Cycle", OmegaKind::Cycle)
        .value("Escaped", OmegaKind::Escaped)
        .value("Undetermined", OmegaKind::Undetermined);

    py::class_<OmegaLimit>(m, "OmegaLimit")
        .def_readonly("kind", &OmegaLimit::kind)
        .def_readonly("equilibrium", &OmegaLimit::equilibrium);

    m.def("omega_limit_estimate", &omega_limit_estimate, py::arg("params"), py::arg("trajectory"));

    py::enum_<ConnectionKind>(m, "ConnectionKind")
        .value("Homoclinic", ConnectionKind::Homoclinic)
        .value("HeteroclinicUpper", ConnectionKind::HeteroclinicUpper)
        .value("HeteroclinicLower", ConnectionKind::HeteroclinicLower);

    py::class_<ConnectionGap>(m, "ConnectionGap")
        .def_readonly("value", &ConnectionGap::value)
        .def_readonly("kind", &ConnectionGap::kind)
        .def_readonly("unstable_hit", &ConnectionGap::unstable_hit)
        .def_readonly("stable_hit", &ConnectionGap::stable_hit);

    m.def(
        "connection_gap",
        [](const SystemParams& p, ConnectionKind kind, double seed_offset, double tol) {
            GapOptions o;
            o.seed_offset = seed_offset;
            o.tol = tol;
            return connection_gap(p, kind, o);
        },
        py::arg("params"), py::arg("kind"), py::arg("seed_offset") = 1e-6,
        py::arg("tol") = 1e-9);

    py::class_<BifurcationBracket>(m, "BifurcationBracket")
        .def_readonly("theta_lo", &BifurcationBracket::theta_lo)
        .def_readonly("theta_hi", &BifurcationBracket::theta_hi)
        .def_readonly("gap_lo", &BifurcationBracket::gap_lo)
        .def_readonly("gap_hi", &BifurcationBracket::gap_hi)
        .def_readonly("refined_theta", &BifurcationBracket::refined_theta)
        .def_readonly("kind", &BifurcationBracket::kind);

    m.def(
        "bisect_bifurcation",
        [](const SystemParams& family, double theta_lo, double theta_hi, ConnectionKind kind,
           double tol_theta, double seed_offset, double tol) {
            GapOptions o;
            o.seed_offset = seed_offset;
            o.tol = tol;
            return bisect_bifurcation(family, theta_lo, theta_hi, kind, tol_theta, o);
        },
        py::arg("family"), py::arg("theta_lo"), py::arg("theta_hi"), py::arg("kind"),
        py::arg("tol_theta") = 1e-4, py::arg("seed_offset") = 1e-6, py::arg("tol") = 1e-9);

    m.def(
        "sweep_bifurcations",
        [](const SystemParams& family, double theta_lo, double theta_hi, double step,
           ConnectionKind kind, double tol_theta) {
            SweepOptions o;
            o.tol_theta = tol_theta;
            return sweep_bifurcations(family, theta_lo, theta_hi, step, kind, o);
        },
        py::arg("family"), py::arg("theta_lo"), py::arg("theta_hi"), py::arg("step"),
        py::arg("kind"), py::arg("tol_theta") = 1e-4);

    // ------------------------------------------------------------ algebra
    py::class_<Poset>(m, "Poset")
        .def_static("make", &Poset::make, py::arg("labels"), py::arg("less_pairs"))
        .def("size", &Poset::size)
        .def("labels", &Poset::labels)
        .def("less", py::overload_cast<const std::string&, const std::string&>(
                         &Poset::less, py::const_),
             py::arg("a"), py::arg("b"))
        .def("is_interval", &Poset::is_interval)
        .def("is_attracting_interval", &Poset::is_attracting_interval)
        .def("intervals", &Poset::intervals);

    py::class_<MorseDecomposition>(m, "MorseDecomposition")
        .def_static("make", &MorseDecomposition::make, py::arg("poset"), py::arg("indices"),
                    py::arg("descriptions") = std::map<std::string, std::string>{})
        .def_readonly("poset", &MorseDecomposition::poset)
        .def("total_dimension", &MorseDecomposition::total_dimension);

    py::class_<GradedZ2Map>(m, "GradedZ2Map")
        .def_static("connection", &GradedZ2Map::connection, py::arg("decomposition"))
        .def("degree", &GradedZ2Map::degree)
        .def("set", &GradedZ2Map::set, py::arg("target"), py::arg("source"), py::arg("q"),
             py::arg("value"))
        .def("get", &GradedZ2Map::get, py::arg("target"), py::arg("source"), py::arg("q"))
        .def("to_text", &GradedZ2Map::to_text)
        .def("__eq__", [](const GradedZ2Map& a, const GradedZ2Map& b) { return a == b; });

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("valid", &ValidationReport::valid)
        .def_readonly("violations", &ValidationReport::violations)
        .def_readonly("interval_homology", &ValidationReport::interval_homology);

    py::class_<TransitionConstraint>(m, "TransitionConstraint")
        .def(py::init([](const std::string& kind, const std::string& target,
                         const std::string& source, int q) {
                 TransitionConstraint c;
                 c.kind = kind == "iso" ? TransitionConstraint::Kind::Iso
                                        : TransitionConstraint::Kind::Zero;
                 c.target = target;
                 c.source = source;
                 c.q = q;
                 return c;
             }),
             py::arg("kind"), py::arg("target"), py::arg("source"), py::arg("q"));

    py::class_<ForcedEntry>(m, "ForcedEntry")
        .def_readonly("target", &ForcedEntry::target)
        .def_readonly("source", &ForcedEntry::source)
        .def_readonly("q", &ForcedEntry::q)
        .def_readonly("value", &ForcedEntry::value);

    py::class_<TransitionSolution>(m, "TransitionSolution")
        .def_readonly("solutions", &TransitionSolution::solutions)
        .def_readonly("forced", &TransitionSolution::forced);

    py::class_<Certificate>(m, "Certificate")
        .def_property_readonly("kind",
                               [](const Certificate& c) {
                                   return c.kind == Certificate::Kind::Heteroclinic
                                              ? "heteroclinic"
                                              : "generalized-homoclinic";
                               })
        .def_readonly("source", &Certificate::source)
        .def_readonly("target", &Certificate::target)
        .def_readonly("morse_set", &Certificate::morse_set)
        .def_readonly("theta_bracket", &Certificate::theta_bracket)
        .def("text", &Certificate::text);

    m.def("validate_connection_matrix", &validate_connection_matrix, py::arg("D"),
          py::arg("M"),
          py::arg("prescribed") =
              std::vector<std::pair<std::vector<std::string>, GradedIndex>>{});
    m.def("homology_of_interval", &homology_of_interval, py::arg("D"), py::arg("M"),
          py::arg("interval"));
    m.def("mod2_connection_count", &mod2_connection_count, py::arg("k"));
    m.def("enumerate_connection_matrices", &enumerate_connection_matrices,
          py::arg("decomposition"));
    m.def("solve_transition_matrices", &solve_transition_matrices, py::arg("D0"),
          py::arg("D1"), py::arg("M0"), py::arg("M1"), py::arg("constraints"));
    m.def("infer_bifurcation", &infer_bifurcation, py::arg("forced"), py::arg("M0"),
          py::arg("M1"),
          py::arg("theta_bracket") = std::optional<std::pair<double, double>>{});

    // ----------------------------------------------------------- scenarios
    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("before", &Scenario::before)
        .def_readonly("after", &Scenario::after)
        .def_readonly("delta_before", &Scenario::delta_before)
        .def_readonly("delta_after", &Scenario::delta_after)
        .def_readonly("constraints", &Scenario::constraints)
        .def_readonly("theta_bracket", &Scenario::theta_bracket);

    py::class_<ScenarioResult>(m, "ScenarioResult")
        .def_readonly("before_report", &ScenarioResult::before_report)
        .def_readonly("after_report", &ScenarioResult::after_report)
        .def_readonly("transition", &ScenarioResult::transition)
        .def_readonly("certificates", &ScenarioResult::certificates);

    m.def("parse_scenario", &parse_scenario, py::arg("text"));
    m.def("run_scenario", &run_scenario, py::arg("scenario"));
    m.def("scenario_presets", []() { return scenario_presets(); });
}
