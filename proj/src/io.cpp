#include "fftseso/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fftseso {

namespace {

// Shortest decimal that round-trips to the same double.
void append_double(std::string& out, double v) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), res.ptr);
}

void append_vec3(std::string& out, const Vec3& v) {
    for (int i = 0; i < 3; ++i) {
        out.push_back(',');
        append_double(out, v(i));
    }
}

void append_mat3(std::string& out, const Mat3& m) {
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out.push_back(',');
            append_double(out, m(r, c));
        }
    }
}

void header_vec3(std::vector<std::string>& cols, const std::string& stem,
                 const std::string& unit) {
    for (const char* axis : {"x", "y", "z"}) {
        cols.push_back(stem + "_" + axis + (unit.empty() ? "" : "_" + unit));
    }
}

void header_mat3(std::vector<std::string>& cols, const std::string& stem) {
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            cols.push_back(stem + "_" + std::to_string(r) + std::to_string(c));
        }
    }
}

std::vector<std::string> csv_columns(bool baselines_on) {
    std::vector<std::string> cols;
    cols.emplace_back("t_s");
    header_vec3(cols, "b", "m");
    header_vec3(cols, "v", "mps");
    header_mat3(cols, "R");
    header_vec3(cols, "Omega", "radps");
    header_vec3(cols, "b_hat", "m");
    header_vec3(cols, "v_hat", "mps");
    header_vec3(cols, "phi_hat", "N");
    header_mat3(cols, "R_hat");
    header_vec3(cols, "Omega_hat", "radps");
    header_vec3(cols, "tau_hat", "Nm");
    header_vec3(cols, "e_b", "m");
    header_vec3(cols, "e_v", "mps");
    header_vec3(cols, "e_phi", "N");
    header_mat3(cols, "E_R");
    header_vec3(cols, "e_Omega", "radps");
    header_vec3(cols, "e_tau", "Nm");
    cols.emplace_back("V_t");
    cols.emplace_back("V_a");
    if (baselines_on) {
        header_vec3(cols, "leso_e_phi", "N");
        header_vec3(cols, "leso_e_tau", "Nm");
        header_vec3(cols, "fxtsdo_e_phi", "N");
        header_vec3(cols, "fxtsdo_e_tau", "Nm");
        cols.emplace_back("flag_leso_singularity");
        cols.emplace_back("flag_leso_diverged");
        cols.emplace_back("flag_fxtsdo_diverged");
    }
    cols.emplace_back("flag_nonfinite");
    return cols;
}

} // namespace

std::size_t csv_column_count(bool baselines_on) {
    return csv_columns(baselines_on).size();
}

void emit_csv(const SimRecord& rec, const std::string& path) {
    const std::vector<std::string> cols = csv_columns(rec.baselines_on);

    std::string out;
    out.reserve(rec.steps.size() * cols.size() * 18 + 4096);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i != 0) {
            out.push_back(',');
        }
        out += cols[i];
    }
    out.push_back('\n');

    for (const SimStep& s : rec.steps) {
        std::string row;
        row.reserve(cols.size() * 18);
        append_double(row, s.t);
        append_vec3(row, s.truth.pose.position);
        append_vec3(row, s.truth.v);
        append_mat3(row, s.truth.pose.rotation.matrix());
        append_vec3(row, s.truth.Omega);
        append_vec3(row, s.teso.b_hat);
        append_vec3(row, s.teso.v_hat);
        append_vec3(row, s.teso.phi_hat);
        append_mat3(row, s.reso.R_hat.matrix());
        append_vec3(row, s.reso.Omega_hat);
        append_vec3(row, s.reso.tau_hat);
        append_vec3(row, s.errors.e_b);
        append_vec3(row, s.errors.e_v);
        append_vec3(row, s.errors.e_phi);
        append_mat3(row, s.errors.E_R.matrix());
        append_vec3(row, s.errors.e_Omega);
        append_vec3(row, s.errors.e_tau);
        row.push_back(',');
        append_double(row, s.v_t);
        row.push_back(',');
        append_double(row, s.v_a);
        if (rec.baselines_on) {
            append_vec3(row, s.leso_e_phi);
            append_vec3(row, s.leso_e_tau);
            append_vec3(row, s.fxtsdo_e_phi);
            append_vec3(row, s.fxtsdo_e_tau);
            row += s.flags.leso_singularity ? ",1" : ",0";
            row += s.flags.leso_diverged ? ",1" : ",0";
            row += s.flags.fxtsdo_diverged ? ",1" : ",0";
        }
        row += s.flags.nonfinite ? ",1" : ",0";

        const std::size_t cells = 1 + std::count(row.begin(), row.end(), ',');
        if (cells != cols.size()) {
            throw std::logic_error("emit_csv: column count mismatch");
        }
        out += row;
        out.push_back('\n');
    }

    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError(path, "cannot open for writing");
    }
    file << out;
    if (!file) {
        throw IoError(path, "write failed");
    }
}

std::size_t CsvTable::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::out_of_range("CsvTable: no column named " + name);
    }
    return static_cast<std::size_t>(it - columns.begin());
}

CsvTable parse_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError(path, "cannot open for reading");
    }
    CsvTable table;
    std::string line;
    if (!std::getline(file, line)) {
        throw IoError(path, "empty file");
    }
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) {
        table.columns.push_back(cell);
    }
    while (std::getline(file, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        row.reserve(table.columns.size());
        const char* ptr = line.data();
        const char* end = line.data() + line.size();
        while (ptr < end) {
            double value = 0.0;
            const auto res = std::from_chars(ptr, end, value);
            if (res.ec != std::errc()) {
                throw IoError(path, "malformed numeric cell");
            }
            row.push_back(value);
            ptr = res.ptr;
            if (ptr < end && *ptr == ',') {
                ++ptr;
            }
        }
        if (row.size() != table.columns.size()) {
            throw IoError(path, "row width does not match header");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

std::string fmt(double v) {
    std::array<char, 32> buf;
    const int n = std::snprintf(buf.data(), buf.size(), "%.6g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

struct Series {
    std::string label;
    std::string color;
    std::vector<double> values;
};

constexpr double kLogFloor = 1e-12;

void draw_panel(std::string& svg, double x0, double y0, double width, double height,
                const std::string& title, double t_end, const std::vector<double>& times,
                const std::vector<Series>& series) {
    double lo = 0.0;
    double hi = -300.0;
    for (const Series& s : series) {
        for (double v : s.values) {
            const double lv = std::log10(std::max(v, kLogFloor));
            lo = std::min(lo, lv);
            hi = std::max(hi, lv);
        }
    }
    lo = std::floor(lo) - 0.5;
    hi = std::ceil(hi) + 0.5;

    auto sx = [&](double t) { return x0 + t / t_end * width; };
    auto sy = [&](double v) {
        const double lv = std::log10(std::max(v, kLogFloor));
        return y0 + height - (lv - lo) / (hi - lo) * height;
    };

    svg += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y0) + "\" width=\"" + fmt(width) +
           "\" height=\"" + fmt(height) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + fmt(x0 + 8) + "\" y=\"" + fmt(y0 + 16) +
           "\" font-size=\"13\" fill=\"#111\">" + title + "</text>\n";

    for (double decade = std::ceil(lo); decade <= std::floor(hi); decade += 1.0) {
        const double y = y0 + height - (decade - lo) / (hi - lo) * height;
        svg += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(x0 + width) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        svg += "<text x=\"" + fmt(x0 - 6) + "\" y=\"" + fmt(y + 4) +
               "\" font-size=\"10\" text-anchor=\"end\" fill=\"#555\">1e" + fmt(decade) +
               "</text>\n";
    }
    for (double t = 0.0; t <= t_end + 1e-9; t += t_end / 6.0) {
        svg += "<text x=\"" + fmt(sx(t)) + "\" y=\"" + fmt(y0 + height + 14) +
               "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#555\">" + fmt(t) +
               "</text>\n";
    }

    double legend_x = x0 + width - 150;
    double legend_y = y0 + 14;
    for (const Series& s : series) {
        svg += "<polyline fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (i != 0) {
                svg.push_back(' ');
            }
            svg += fmt(sx(times[i])) + "," + fmt(sy(s.values[i]));
        }
        svg += "\"/>\n";
        svg += "<text x=\"" + fmt(legend_x) + "\" y=\"" + fmt(legend_y) +
               "\" font-size=\"11\" fill=\"" + s.color + "\">" + s.label + "</text>\n";
        legend_y += 14;
    }
}

} // namespace

void emit_plots(const SimRecord& rec, const std::string& path) {
    const double width = 900.0;
    const double height = 620.0;
    const double panel_w = 760.0;
    const double panel_h = 250.0;
    const double t_end = rec.steps.empty() ? 1.0 : rec.steps.back().t;

    std::vector<double> times;
    times.reserve(rec.steps.size());
    Series f_ffts{"FFTS-ESO", "#1f77b4", {}};
    Series f_leso{"LESO", "#ff7f0e", {}};
    Series f_fx{"FxTSDO", "#2ca02c", {}};
    Series t_ffts = f_ffts;
    Series t_leso = f_leso;
    Series t_fx = f_fx;
    for (const SimStep& s : rec.steps) {
        times.push_back(s.t);
        f_ffts.values.push_back(s.errors.e_phi.norm());
        t_ffts.values.push_back(s.errors.e_tau.norm());
        if (rec.baselines_on) {
            f_leso.values.push_back(s.leso_e_phi.norm());
            t_leso.values.push_back(s.leso_e_tau.norm());
            f_fx.values.push_back(s.fxtsdo_e_phi.norm());
            t_fx.values.push_back(s.fxtsdo_e_tau.norm());
        }
    }

    std::vector<Series> force{f_ffts};
    std::vector<Series> torque{t_ffts};
    if (rec.baselines_on) {
        force.push_back(f_leso);
        force.push_back(f_fx);
        torque.push_back(t_leso);
        torque.push_back(t_fx);
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
           fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"450\" y=\"24\" font-size=\"15\" text-anchor=\"middle\" fill=\"#111\">";
    svg += std::string(scenario_name(rec.scenario)) + (rec.noise_on ? " (noisy)" : " (noise-free)");
    svg += "</text>\n";

    if (!rec.steps.empty()) {
        draw_panel(svg, 90, 50, panel_w, panel_h, "disturbance force estimation error norm (N)",
                   t_end, times, force);
        draw_panel(svg, 90, 340, panel_w, panel_h,
                   "disturbance torque estimation error norm (N m)", t_end, times, torque);
    }
    svg += "</svg>\n";

    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError(path, "cannot open for writing");
    }
    file << svg;
    if (!file) {
        throw IoError(path, "write failed");
    }
}

RunSummary summarize(const std::string& name, const SimRecord& rec) {
    RunSummary s;
    s.name = name;
    s.scenario = rec.scenario;
    s.noise_on = rec.noise_on;
    s.seed = rec.seed;
    for (const SimStep& step : rec.steps) {
        s.max_e_phi = std::max(s.max_e_phi, step.errors.e_phi.norm());
        s.max_e_tau = std::max(s.max_e_tau, step.errors.e_tau.norm());
        if (rec.baselines_on) {
            s.max_leso_e_phi = std::max(s.max_leso_e_phi, step.leso_e_phi.norm());
            s.max_leso_e_tau = std::max(s.max_leso_e_tau, step.leso_e_tau.norm());
            s.max_fxtsdo_e_phi = std::max(s.max_fxtsdo_e_phi, step.fxtsdo_e_phi.norm());
            s.max_fxtsdo_e_tau = std::max(s.max_fxtsdo_e_tau, step.fxtsdo_e_tau.norm());
        }
    }
    if (!rec.steps.empty()) {
        s.terminal_e_phi = rec.steps.back().errors.e_phi.norm();
        s.terminal_e_tau = rec.steps.back().errors.e_tau.norm();
    }
    s.leso_singularity = rec.flags.leso_singularity;
    s.leso_diverged = rec.flags.leso_diverged;
    s.fxtsdo_diverged = rec.flags.fxtsdo_diverged;
    s.nonfinite = rec.flags.nonfinite;
    return s;
}

void emit_summary(const std::vector<RunSummary>& runs, const std::string& path) {
    nlohmann::json doc = nlohmann::json::array();
    for (const RunSummary& r : runs) {
        nlohmann::json item;
        item["name"] = r.name;
        item["scenario"] = scenario_name(r.scenario);
        item["noise"] = r.noise_on;
        item["seed"] = r.seed;
        item["max_e_phi_N"] = r.max_e_phi;
        item["max_e_tau_Nm"] = r.max_e_tau;
        item["terminal_e_phi_N"] = r.terminal_e_phi;
        item["terminal_e_tau_Nm"] = r.terminal_e_tau;
        item["max_leso_e_phi_N"] = r.max_leso_e_phi;
        item["max_leso_e_tau_Nm"] = r.max_leso_e_tau;
        item["max_fxtsdo_e_phi_N"] = r.max_fxtsdo_e_phi;
        item["max_fxtsdo_e_tau_Nm"] = r.max_fxtsdo_e_tau;
        item["flags"] = {{"leso_singularity", r.leso_singularity},
                         {"leso_diverged", r.leso_diverged},
                         {"fxtsdo_diverged", r.fxtsdo_diverged},
                         {"nonfinite", r.nonfinite}};
        doc.push_back(item);
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError(path, "cannot open for writing");
    }
    file << doc.dump(2) << "\n";
    if (!file) {
        throw IoError(path, "write failed");
    }
}

} // namespace fftseso
