#pragma once

#include <string>
#include <vector>

#include "fftseso/sim.hpp"

namespace fftseso {

/// Write one row per step, header names carry units, doubles in shortest
/// round-trip decimal form. Throws IoError with the path on failure.
void emit_csv(const SimRecord& rec, const std::string& path);

/// Parsed CSV contents; numeric cells only.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;
};

CsvTable parse_csv(const std::string& path);

/// Expected column count for a record (asserted by the emitter).
std::size_t csv_column_count(bool baselines_on);

/// Self-contained SVG with stacked force/torque error-norm panels on a log
/// scale (values clamped at 1e-12), one series per observer.
void emit_plots(const SimRecord& rec, const std::string& path);

/// Aggregated per-run outcomes for summary emission.
struct RunSummary {
    std::string name;
    ScenarioKind scenario = ScenarioKind::Hovering;
    bool noise_on = false;
    std::uint64_t seed = 0;
    double max_e_phi = 0.0;
    double max_e_tau = 0.0;
    double terminal_e_phi = 0.0;
    double terminal_e_tau = 0.0;
    double max_leso_e_phi = 0.0;
    double max_leso_e_tau = 0.0;
    double max_fxtsdo_e_phi = 0.0;
    double max_fxtsdo_e_tau = 0.0;
    bool leso_singularity = false;
    bool leso_diverged = false;
    bool fxtsdo_diverged = false;
    bool nonfinite = false;
};

RunSummary summarize(const std::string& name, const SimRecord& rec);

void emit_summary(const std::vector<RunSummary>& runs, const std::string& path);

} // namespace fftseso
