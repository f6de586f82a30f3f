#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fftseso/config.hpp"
#include "fftseso/io.hpp"
#include "fftseso/sim.hpp"

namespace py = pybind11;
using namespace fftseso;

namespace {

// Lightweight numpy view of a simulation record.
struct RecordView {
    ScenarioKind scenario;
    bool noise_on;
    VecN t;
    MatN e_phi;   // n x 3
    MatN e_tau;   // n x 3
    VecN v_t;
    VecN v_a;
    MatN leso_e_tau;
    MatN fxtsdo_e_phi;
    bool leso_singularity;
    bool leso_diverged;
    bool fxtsdo_diverged;
    bool nonfinite;
    double max_orthogonality_residual;
};

RecordView make_view(const SimRecord& rec) {
    RecordView view;
    view.scenario = rec.scenario;
    view.noise_on = rec.noise_on;
    const auto n = static_cast<Eigen::Index>(rec.steps.size());
    view.t.resize(n);
    view.e_phi.resize(n, 3);
    view.e_tau.resize(n, 3);
    view.v_t.resize(n);
    view.v_a.resize(n);
    view.leso_e_tau.resize(n, 3);
    view.fxtsdo_e_phi.resize(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const SimStep& s = rec.steps[static_cast<std::size_t>(i)];
        view.t(i) = s.t;
        view.e_phi.row(i) = s.errors.e_phi.transpose();
        view.e_tau.row(i) = s.errors.e_tau.transpose();
        view.v_t(i) = s.v_t;
        view.v_a(i) = s.v_a;
        view.leso_e_tau.row(i) = s.leso_e_tau.transpose();
        view.fxtsdo_e_phi.row(i) = s.fxtsdo_e_phi.transpose();
    }
    view.leso_singularity = rec.flags.leso_singularity;
    view.leso_diverged = rec.flags.leso_diverged;
    view.fxtsdo_diverged = rec.flags.fxtsdo_diverged;
    view.nonfinite = rec.flags.nonfinite;
    view.max_orthogonality_residual = rec.max_orthogonality_residual;
    return view;
}

} // namespace

PYBIND11_MODULE(_fftseso, m) {
    m.doc() = "SE(3) fast finite-time extended state observer core";

    py::register_exception<NotSkew>(m, "NotSkewError");
    py::register_exception<ZeroVector>(m, "ZeroVectorError");
    py::register_exception<NotSpd>(m, "NotSpdError");
    py::register_exception<DomainError>(m, "DomainValueError");
    py::register_exception<InvalidGains>(m, "InvalidGainsError");

    // geometry
    m.def("hat", &hat, py::arg("v"));
    m.def("vee", &vee, py::arg("m"));
    m.def("project_to_so3", &project_to_so3, py::arg("m"));
    m.def(
        "exp_so3", [](const Vec3& v) { return exp_so3(v).matrix(); }, py::arg("v"));
    m.def(
        "log_so3", [](const Mat3& r) { return log_so3(Rotation(r)); }, py::arg("r"));
    m.def(
        "principal_angle",
        [](const Mat3& a, const Mat3& b) { return principal_angle(Rotation(a), Rotation(b)); },
        py::arg("a"), py::arg("b"));

    py::class_<MorseWeights>(m, "MorseWeights")
        .def(py::init<double, double, double>(), py::arg("k1"), py::arg("k2"), py::arg("k3"))
        .def_readonly("k1", &MorseWeights::k1)
        .def_readonly("k2", &MorseWeights::k2)
        .def_readonly("k3", &MorseWeights::k3);
    m.def(
        "s_K", [](const Mat3& r, const MorseWeights& k) { return s_K(r, k); }, py::arg("r"),
        py::arg("k"));
    m.def(
        "morse_value", [](const Mat3& r, const MorseWeights& k) { return morse_value(r, k); },
        py::arg("r"), py::arg("k"));
    m.def(
        "in_set_S", [](const Mat3& r) { return in_set_S(Rotation(r)); }, py::arg("r"));
    m.def("h_matrix", &h_matrix, py::arg("x"), py::arg("k"));

    // differentiator
    py::class_<HolderExponent>(m, "HolderExponent")
        .def(py::init<double>(), py::arg("p"))
        .def_readonly("p", &HolderExponent::p);
    py::class_<DifferentiatorGains>(m, "DifferentiatorGains")
        .def(py::init([](double k1, double k2, double k3, double p) {
                 return DifferentiatorGains(k1, k2, k3, HolderExponent(p));
             }),
             py::arg("k1"), py::arg("k2"), py::arg("k3"), py::arg("p"))
        .def_readonly("k1", &DifferentiatorGains::k1)
        .def_readonly("k2", &DifferentiatorGains::k2)
        .def_readonly("k3", &DifferentiatorGains::k3);
    m.def(
        "phi1", [](const VecN& e1, const DifferentiatorGains& g) { return phi1(e1, g); },
        py::arg("e1"), py::arg("gains"));
    m.def(
        "phi2", [](const VecN& e1, const DifferentiatorGains& g) { return phi2(e1, g); },
        py::arg("e1"), py::arg("gains"));
    m.def("phi1_jacobian", &phi1_jacobian, py::arg("e1"), py::arg("gains"));

    // Lyapunov toolkit
    py::class_<LyapunovCertificate>(m, "LyapunovCertificate")
        .def_readonly("P", &LyapunovCertificate::P)
        .def_readonly("Q", &LyapunovCertificate::Q)
        .def_readonly("gamma1", &LyapunovCertificate::gamma1)
        .def_readonly("gamma2", &LyapunovCertificate::gamma2)
        .def_readonly("lambda_min_P", &LyapunovCertificate::lambda_min_P)
        .def_readonly("lambda_max_P", &LyapunovCertificate::lambda_max_P)
        .def_readonly("lambda_min_Q", &LyapunovCertificate::lambda_min_Q)
        .def("eigenvalue_ratio", &LyapunovCertificate::eigenvalue_ratio)
        .def("gamma1_meets_ratio", &LyapunovCertificate::gamma1_meets_ratio);
    m.def("solve_lyapunov_2x2", &solve_lyapunov_2x2, py::arg("gains"),
          py::arg("q") = Eigen::Matrix2d::Identity());
    m.def("settling_time_fts", &settling_time_fts, py::arg("lam"), py::arg("alpha"),
          py::arg("v0"));
    m.def("settling_time_ffts", &settling_time_ffts, py::arg("lambda1"), py::arg("lambda2"),
          py::arg("alpha"), py::arg("v0"));
    py::class_<PftsBound>(m, "PftsBound")
        .def_readonly("theta0", &PftsBound::theta0)
        .def_readonly("eta", &PftsBound::eta)
        .def_readonly("residual_set_level", &PftsBound::residual_set_level)
        .def_readonly("settling_time_bound", &PftsBound::settling_time_bound);
    m.def("pfts_bound", &pfts_bound, py::arg("lambda1"), py::arg("lambda2"), py::arg("alpha"),
          py::arg("eta"), py::arg("theta0"), py::arg("v0"));
    m.def("noise_gap_bounds", &noise_gap_bounds, py::arg("mu_bar"), py::arg("gains"));
    m.def("noise_gap_function", &noise_gap_function, py::arg("x"), py::arg("mu"),
          py::arg("alpha"));
    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("c1_min", &GridSpec::c1_min)
        .def_readwrite("c1_max", &GridSpec::c1_max)
        .def_readwrite("c2_min", &GridSpec::c2_min)
        .def_readwrite("c2_max", &GridSpec::c2_max)
        .def_readwrite("step", &GridSpec::step);
    m.def("noise_gap_argmax_oracle", &noise_gap_argmax_oracle, py::arg("mu"), py::arg("alpha"),
          py::arg("grid") = GridSpec{});

    // observers
    py::class_<EsoGainReport>(m, "EsoGainReport")
        .def_readonly("certificate", &EsoGainReport::certificate)
        .def_readonly("mu", &EsoGainReport::mu)
        .def_readonly("mu_upper", &EsoGainReport::mu_upper)
        .def_readonly("gamma1", &EsoGainReport::gamma1)
        .def_readonly("gamma2", &EsoGainReport::gamma2)
        .def_readonly("Gamma1", &EsoGainReport::Gamma1)
        .def_readonly("Gamma2", &EsoGainReport::Gamma2)
        .def_readonly("gamma1_meets_ratio", &EsoGainReport::gamma1_meets_ratio);
    py::class_<TranslationalEsoGains>(m, "TranslationalEsoGains")
        .def(py::init([](double kt1, double kt2, double kt3, double kappa, double p) {
                 return TranslationalEsoGains(kt1, kt2, kt3, kappa, HolderExponent(p));
             }),
             py::arg("kt1"), py::arg("kt2"), py::arg("kt3"), py::arg("kappa_t"), py::arg("p"))
        .def_readonly("mu_t", &TranslationalEsoGains::mu_t)
        .def("mu_upper", &TranslationalEsoGains::mu_upper);
    py::class_<RotationalEsoGains>(m, "RotationalEsoGains")
        .def(py::init([](double ka1, double ka2, double ka3, double kappa, double p,
                         const MorseWeights& k) {
                 return RotationalEsoGains(ka1, ka2, ka3, kappa, HolderExponent(p), k);
             }),
             py::arg("ka1"), py::arg("ka2"), py::arg("ka3"), py::arg("kappa_a"), py::arg("p"),
             py::arg("weights"))
        .def_readonly("mu_a", &RotationalEsoGains::mu_a)
        .def("mu_upper", &RotationalEsoGains::mu_upper);
    m.def("validate_gains_t", &validate_gains_t, py::arg("gains"));
    m.def("validate_gains_a", &validate_gains_a, py::arg("gains"));
    m.def("psi_t", &psi_t, py::arg("e_b"), py::arg("e_v"), py::arg("gains"));
    m.def("psi_a", &psi_a, py::arg("e_r"), py::arg("e_omega"), py::arg("gains"));
    m.def(
        "e_w",
        [](const Mat3& er, const Vec3& eo, const MorseWeights& k) { return e_w(er, eo, k); },
        py::arg("E_R"), py::arg("e_Omega"), py::arg("weights"));

    // scenarios and the harness
    py::enum_<ScenarioKind>(m, "ScenarioKind")
        .value("Hovering", ScenarioKind::Hovering)
        .value("SlowSwing", ScenarioKind::SlowSwing)
        .value("FastSwing", ScenarioKind::FastSwing)
        .value("HighPitch", ScenarioKind::HighPitch);
    py::class_<ReferencePoint>(m, "ReferencePoint")
        .def_readonly("position", &ReferencePoint::position)
        .def_readonly("velocity", &ReferencePoint::velocity)
        .def_readonly("acceleration", &ReferencePoint::acceleration);
    m.def("reference", &reference, py::arg("kind"), py::arg("t"));

    py::class_<SimConfig>(m, "SimConfig")
        .def_static("defaults", &SimConfig::defaults)
        .def_readwrite("scenario", &SimConfig::scenario)
        .def_readwrite("h", &SimConfig::h)
        .def_readwrite("duration", &SimConfig::duration)
        .def_readwrite("noise_on", &SimConfig::noise_on)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("baselines_on", &SimConfig::baselines_on)
        .def_readwrite("reject_on", &SimConfig::reject_on);

    py::class_<RecordView>(m, "SimRecord")
        .def_readonly("scenario", &RecordView::scenario)
        .def_readonly("noise_on", &RecordView::noise_on)
        .def_readonly("t", &RecordView::t)
        .def_readonly("e_phi", &RecordView::e_phi)
        .def_readonly("e_tau", &RecordView::e_tau)
        .def_readonly("V_t", &RecordView::v_t)
        .def_readonly("V_a", &RecordView::v_a)
        .def_readonly("leso_e_tau", &RecordView::leso_e_tau)
        .def_readonly("fxtsdo_e_phi", &RecordView::fxtsdo_e_phi)
        .def_readonly("leso_singularity", &RecordView::leso_singularity)
        .def_readonly("leso_diverged", &RecordView::leso_diverged)
        .def_readonly("fxtsdo_diverged", &RecordView::fxtsdo_diverged)
        .def_readonly("nonfinite", &RecordView::nonfinite)
        .def_readonly("max_orthogonality_residual", &RecordView::max_orthogonality_residual);

    m.def(
        "run_scenario", [](const SimConfig& cfg) { return make_view(run_scenario(cfg)); },
        py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_scenario_to_files",
        [](const SimConfig& cfg, const std::string& csv_path, const std::string& svg_path) {
            const SimRecord rec = run_scenario(cfg);
            emit_csv(rec, csv_path);
            if (!svg_path.empty()) {
                emit_plots(rec, svg_path);
            }
            return make_view(rec);
        },
        py::arg("config"), py::arg("csv_path"), py::arg("svg_path") = std::string());
    m.def("load_config", &load_config, py::arg("path"));
    m.def("config_to_string", &config_to_string, py::arg("config"));
}
