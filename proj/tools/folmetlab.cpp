// folmetlab: batch verification runner for leafwise-metric convergence
// experiments. Subcommands mirror the pipeline stages:
//   folmetlab run <config>      full experiment with artifacts
//   folmetlab kernel <config>   kernel + kernel-convergence check only
//   folmetlab eta <config>      eta estimates at configured points
//   folmetlab report <csv> --plot <kind> [-o out.svg]
// FOLMETLAB_THREADS caps OpenMP parallelism.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "folmet/runner.hpp"

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* t = std::getenv("FOLMETLAB_THREADS")) {
        int n = std::atoi(t);
        if (n > 0) omp_set_num_threads(n);
    }
#endif

    CLI::App app{"numerical laboratory for leafwise Poincare metrics under "
                 "kernel convergence of domains"};
    app.require_subcommand(1);

    std::string config_path, csv_path, plot_kind = "eta_vs_n", out_svg;

    CLI::App* c_run = app.add_subcommand("run", "run a full experiment config");
    c_run->add_option("config", config_path, "experiment config file")->required();

    CLI::App* c_kernel = app.add_subcommand("kernel", "kernel convergence check");
    c_kernel->add_option("config", config_path, "experiment config file")->required();

    CLI::App* c_eta = app.add_subcommand("eta", "eta estimates at configured points");
    c_eta->add_option("config", config_path, "experiment config file")->required();

    CLI::App* c_report = app.add_subcommand("report", "render a report CSV as SVG");
    c_report->add_option("csv", csv_path, "report csv")->required();
    c_report->add_option("--plot", plot_kind, "plot kind: eta_vs_n | scatter");
    c_report->add_option("-o,--out", out_svg, "output svg path");

    CLI11_PARSE(app, argc, argv);

    try {
        folmet::cli::RunOutcome out;
        if (c_run->parsed()) out = folmet::cli::run(config_path);
        if (c_kernel->parsed()) out = folmet::cli::run_kernel(config_path);
        if (c_eta->parsed()) out = folmet::cli::run_eta(config_path);
        if (c_report->parsed()) out = folmet::cli::run_report(csv_path, plot_kind, out_svg);
        std::cout << out.summary;
        return out.exit_code;
    } catch (const folmet::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const folmet::math_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
