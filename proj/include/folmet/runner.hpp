#pragma once

#include <string>

#include "folmet/lab.hpp"

namespace folmet::cli {

// Batch front door: parse an experiment config, dispatch, emit artifacts.
// Exit-code contract: 0 all verdicts pass, 2 a verdict failed, 1 input error.

struct RunOutcome {
    int exit_code = 0;
    std::string summary;     // human-readable lines, also printed by the CLI
};

/// Parsed and validated experiment configuration (strict keys).
struct ExperimentConfig {
    std::string kind;             // pointwise | uniform | kernel | hausdorff_kernel |
                                  // eta | dense_defective
    std::uint64_t seed = 7;
    std::int64_t budget = 10'000;
    double tol = 1e-3;
    double h = 0.02;
    int n_max = 64;
    int subsequences = 5;
    std::vector<int> schedule;
    std::string field_name;       // catalog field, or empty when inline
    fol::PolyVectorField field;
    std::string family;
    std::vector<double> ambient;  // polydisc radii of U
    std::vector<double> box_half; // grid box half-extents per complex coordinate
    std::vector<CPoint> points;
    bool detect_f = false;
    bool allow_E_in_K = false;
    int j_max = 8, m_max = 8;
    std::string out_csv, out_svg, svg_kind = "eta_vs_n";

    cfg::Record echo;             // the parsed record, for round-tripping

    static ExperimentConfig parse_file(const std::string& path);
    static ExperimentConfig parse_text(const std::string& text, const std::string& origin);
};

/// Run a config end to end; artifact paths resolve relative to the config.
RunOutcome run(const std::string& config_path);

/// `kernel` subcommand: kernel + convergence check only.
RunOutcome run_kernel(const std::string& config_path);

/// `eta` subcommand: eta estimates at the configured points.
RunOutcome run_eta(const std::string& config_path);

/// `report` subcommand: re-render a CSV into an SVG.
RunOutcome run_report(const std::string& csv_path, const std::string& plot_kind,
                      const std::string& out_svg);

} // namespace folmet::cli
