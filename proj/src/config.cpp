#include "fftseso/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fftseso {

namespace {

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        while (used < value.size() && std::isspace(static_cast<unsigned char>(value[used]))) {
            ++used;
        }
        if (used != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return out;
    } catch (const std::exception&) {
        throw DomainError("config: bad numeric value for " + key + ": '" + value + "'");
    }
}

bool to_switch(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") {
        return true;
    }
    if (value == "off" || value == "false" || value == "0") {
        return false;
    }
    throw DomainError("config: expected on/off for " + key + ", got '" + value + "'");
}

Vec3 to_vec3(const std::string& key, const std::string& value) {
    std::stringstream ss(value);
    Vec3 out;
    if (!(ss >> out.x() >> out.y() >> out.z())) {
        throw DomainError("config: expected three numbers for " + key);
    }
    std::string rest;
    if (ss >> rest) {
        throw DomainError("config: too many numbers for " + key);
    }
    return out;
}

// "0: 5 10 0; 10: 9 15 5" -> piecewise-constant segments.
std::vector<DisturbanceProfile::Segment> to_segments(const std::string& key,
                                                     const std::string& value) {
    std::vector<DisturbanceProfile::Segment> segments;
    std::stringstream ss(value);
    std::string piece;
    while (std::getline(ss, piece, ';')) {
        const auto colon = piece.find(':');
        if (colon == std::string::npos) {
            throw DomainError("config: expected 'time: x y z' segments for " + key);
        }
        const double time = to_double(key, trimmed(piece.substr(0, colon)));
        segments.emplace_back(time, to_vec3(key, piece.substr(colon + 1)));
    }
    return segments;
}

} // namespace

SimConfig config_from_overrides(const std::map<std::string, std::string>& overrides) {
    SimConfig cfg = SimConfig::defaults();

    // Gain and model pieces are collected first and reconstructed once,
    // because their invariants are checked at construction.
    double kt1 = cfg.gains_t.kt1, kt2 = cfg.gains_t.kt2, kt3 = cfg.gains_t.kt3;
    double kappa_t = cfg.gains_t.kappa_t;
    double ka1 = cfg.gains_a.ka1, ka2 = cfg.gains_a.ka2, ka3 = cfg.gains_a.ka3;
    double kappa_a = cfg.gains_a.kappa_a;
    double p = cfg.gains_t.p.p;
    double mk1 = cfg.gains_a.K.k1, mk2 = cfg.gains_a.K.k2, mk3 = cfg.gains_a.K.k3;
    std::optional<double> mu_t, mu_a;
    double mass = cfg.params.m;
    double grav = cfg.params.grav;
    Vec3 inertia_diag(cfg.params.J(0, 0), cfg.params.J(1, 1), cfg.params.J(2, 2));
    auto force_segments = cfg.disturbance.force_segments();
    auto torque_segments = cfg.disturbance.torque_segments();
    Vec3 init_attitude = Vec3::Zero();

    for (const auto& [key, value] : overrides) {
        if (key == "scenario") {
            const auto kind = scenario_from_name(value);
            if (!kind) {
                throw DomainError("config: unknown scenario '" + value + "'");
            }
            cfg.scenario = *kind;
        } else if (key == "h") {
            cfg.h = to_double(key, value);
        } else if (key == "duration") {
            cfg.duration = to_double(key, value);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(to_double(key, value));
        } else if (key == "noise") {
            cfg.noise_on = to_switch(key, value);
        } else if (key == "baselines") {
            cfg.baselines_on = to_switch(key, value);
        } else if (key == "reject") {
            cfg.reject_on = to_switch(key, value);
        } else if (key == "noise.psd_b") {
            cfg.noise.psd_b = to_double(key, value);
        } else if (key == "noise.psd_v") {
            cfg.noise.psd_v = to_double(key, value);
        } else if (key == "noise.psd_R") {
            cfg.noise.psd_R = to_double(key, value);
        } else if (key == "noise.psd_Omega") {
            cfg.noise.psd_Omega = to_double(key, value);
        } else if (key == "gains.p") {
            p = to_double(key, value);
        } else if (key == "gains.kt1") {
            kt1 = to_double(key, value);
        } else if (key == "gains.kt2") {
            kt2 = to_double(key, value);
        } else if (key == "gains.kt3") {
            kt3 = to_double(key, value);
        } else if (key == "gains.kappa_t") {
            kappa_t = to_double(key, value);
        } else if (key == "gains.mu_t") {
            mu_t = to_double(key, value);
        } else if (key == "gains.ka1") {
            ka1 = to_double(key, value);
        } else if (key == "gains.ka2") {
            ka2 = to_double(key, value);
        } else if (key == "gains.ka3") {
            ka3 = to_double(key, value);
        } else if (key == "gains.kappa_a") {
            kappa_a = to_double(key, value);
        } else if (key == "gains.mu_a") {
            mu_a = to_double(key, value);
        } else if (key == "morse.k1") {
            mk1 = to_double(key, value);
        } else if (key == "morse.k2") {
            mk2 = to_double(key, value);
        } else if (key == "morse.k3") {
            mk3 = to_double(key, value);
        } else if (key == "control.kx") {
            cfg.control.kx = to_double(key, value);
        } else if (key == "control.kv") {
            cfg.control.kv = to_double(key, value);
        } else if (key == "control.kR") {
            cfg.control.kR = to_double(key, value);
        } else if (key == "control.kOmega") {
            cfg.control.kOmega = to_double(key, value);
        } else if (key == "control.heading") {
            cfg.control.heading = to_vec3(key, value);
        } else if (key == "leso.omega_translational") {
            cfg.leso.omega_translational = to_double(key, value);
        } else if (key == "leso.omega_attitude") {
            cfg.leso.omega_attitude = to_double(key, value);
        } else if (key == "fxtsdo.l1") {
            cfg.fxtsdo.l1 = to_double(key, value);
        } else if (key == "fxtsdo.l2") {
            cfg.fxtsdo.l2 = to_double(key, value);
        } else if (key == "fxtsdo.l3") {
            cfg.fxtsdo.l3 = to_double(key, value);
        } else if (key == "mass") {
            mass = to_double(key, value);
        } else if (key == "grav") {
            grav = to_double(key, value);
        } else if (key == "inertia.xx") {
            inertia_diag.x() = to_double(key, value);
        } else if (key == "inertia.yy") {
            inertia_diag.y() = to_double(key, value);
        } else if (key == "inertia.zz") {
            inertia_diag.z() = to_double(key, value);
        } else if (key == "init.b") {
            cfg.initial_state.pose.position = to_vec3(key, value);
        } else if (key == "init.v") {
            cfg.initial_state.v = to_vec3(key, value);
        } else if (key == "init.Omega") {
            cfg.initial_state.Omega = to_vec3(key, value);
        } else if (key == "init.attitude") {
            init_attitude = to_vec3(key, value);
        } else if (key == "disturbance.force") {
            force_segments = to_segments(key, value);
        } else if (key == "disturbance.torque") {
            torque_segments = to_segments(key, value);
        } else {
            throw DomainError("config: unknown key '" + key + "'");
        }
    }

    cfg.gains_t = TranslationalEsoGains(kt1, kt2, kt3, kappa_t, HolderExponent(p), mu_t);
    cfg.gains_a = RotationalEsoGains(ka1, ka2, ka3, kappa_a, HolderExponent(p),
                                     MorseWeights(mk1, mk2, mk3), mu_a);
    cfg.params = RigidBodyParams(mass, inertia_diag.asDiagonal(), grav);
    cfg.disturbance = DisturbanceProfile(std::move(force_segments), std::move(torque_segments));
    if (init_attitude.norm() > 0.0) {
        cfg.initial_state.pose.rotation = exp_so3(init_attitude);
    }
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError(path, "cannot open config");
    }
    std::map<std::string, std::string> overrides;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const std::string content = trimmed(line);
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw DomainError("config: line " + std::to_string(line_no) +
                              " is not 'key = value'");
        }
        overrides[trimmed(content.substr(0, eq))] = trimmed(content.substr(eq + 1));
    }
    return config_from_overrides(overrides);
}

namespace {

// Shortest decimal that parses back to the same double.
std::string num(double v) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string num(const Vec3& v) {
    return num(v.x()) + " " + num(v.y()) + " " + num(v.z());
}

std::string segments_to_string(const std::vector<DisturbanceProfile::Segment>& segments) {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i != 0) {
            out += "; ";
        }
        out += num(segments[i].first) + ": " + num(segments[i].second);
    }
    return out;
}

} // namespace

std::string config_to_string(const SimConfig& cfg) {
    std::ostringstream out;
    out << "# Simulation configuration (flat key = value)\n";
    out << "scenario = " << scenario_name(cfg.scenario) << "\n";
    out << "h = " << num(cfg.h) << "\n";
    out << "duration = " << num(cfg.duration) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "noise = " << (cfg.noise_on ? "on" : "off") << "\n";
    out << "baselines = " << (cfg.baselines_on ? "on" : "off") << "\n";
    out << "reject = " << (cfg.reject_on ? "on" : "off") << "\n";
    out << "\n# measurement noise power spectral densities\n";
    out << "noise.psd_b = " << num(cfg.noise.psd_b) << "\n";
    out << "noise.psd_v = " << num(cfg.noise.psd_v) << "\n";
    out << "noise.psd_R = " << num(cfg.noise.psd_R) << "\n";
    out << "noise.psd_Omega = " << num(cfg.noise.psd_Omega) << "\n";
    out << "\n# observer gains\n";
    out << "gains.p = " << num(cfg.gains_t.p.p) << "\n";
    out << "gains.kt1 = " << num(cfg.gains_t.kt1) << "\n";
    out << "gains.kt2 = " << num(cfg.gains_t.kt2) << "\n";
    out << "gains.kt3 = " << num(cfg.gains_t.kt3) << "\n";
    out << "gains.kappa_t = " << num(cfg.gains_t.kappa_t) << "\n";
    out << "gains.mu_t = " << num(cfg.gains_t.mu_t) << "\n";
    out << "gains.ka1 = " << num(cfg.gains_a.ka1) << "\n";
    out << "gains.ka2 = " << num(cfg.gains_a.ka2) << "\n";
    out << "gains.ka3 = " << num(cfg.gains_a.ka3) << "\n";
    out << "gains.kappa_a = " << num(cfg.gains_a.kappa_a) << "\n";
    out << "gains.mu_a = " << num(cfg.gains_a.mu_a) << "\n";
    out << "morse.k1 = " << num(cfg.gains_a.K.k1) << "\n";
    out << "morse.k2 = " << num(cfg.gains_a.K.k2) << "\n";
    out << "morse.k3 = " << num(cfg.gains_a.K.k3) << "\n";
    out << "\n# tracking controller (support machinery)\n";
    out << "control.kx = " << num(cfg.control.kx) << "\n";
    out << "control.kv = " << num(cfg.control.kv) << "\n";
    out << "control.kR = " << num(cfg.control.kR) << "\n";
    out << "control.kOmega = " << num(cfg.control.kOmega) << "\n";
    out << "control.heading = " << num(cfg.control.heading) << "\n";
    out << "\n# comparison observers\n";
    out << "leso.omega_translational = " << num(cfg.leso.omega_translational) << "\n";
    out << "leso.omega_attitude = " << num(cfg.leso.omega_attitude) << "\n";
    out << "fxtsdo.l1 = " << num(cfg.fxtsdo.l1) << "\n";
    out << "fxtsdo.l2 = " << num(cfg.fxtsdo.l2) << "\n";
    out << "fxtsdo.l3 = " << num(cfg.fxtsdo.l3) << "\n";
    out << "\n# vehicle\n";
    out << "mass = " << num(cfg.params.m) << "\n";
    out << "grav = " << num(cfg.params.grav) << "\n";
    out << "inertia.xx = " << num(cfg.params.J(0, 0)) << "\n";
    out << "inertia.yy = " << num(cfg.params.J(1, 1)) << "\n";
    out << "inertia.zz = " << num(cfg.params.J(2, 2)) << "\n";
    out << "\n# initial state\n";
    out << "init.b = " << num(cfg.initial_state.pose.position) << "\n";
    out << "init.v = " << num(cfg.initial_state.v) << "\n";
    out << "init.Omega = " << num(cfg.initial_state.Omega) << "\n";
    out << "\n# step disturbances\n";
    out << "disturbance.force = " << segments_to_string(cfg.disturbance.force_segments()) << "\n";
    out << "disturbance.torque = " << segments_to_string(cfg.disturbance.torque_segments())
        << "\n";
    return out.str();
}

} // namespace fftseso
