#include "folmet/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "folmet/report.hpp"

namespace folmet::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << content;
}

CPoint point_from_numbers(const std::vector<double>& v) {
    if (v.empty() || v.size() % 2 != 0)
        throw input_error("point literal must be [re_1, im_1, ..., re_N, im_N]");
    std::vector<cplx> z;
    for (size_t i = 0; i < v.size(); i += 2) z.emplace_back(v[i], v[i + 1]);
    return CPoint(std::move(z));
}

geo::DomainPtr centered_polydisc(const std::vector<double>& radii) {
    std::vector<cplx> c(radii.size(), cplx(0, 0));
    return geo::Domain::polydisc(CPoint(std::move(c)), radii);
}

std::string resolve_near(const std::string& base_file, const std::string& rel) {
    fs::path p(rel);
    if (p.is_absolute()) return rel;
    return (fs::path(base_file).parent_path() / p).string();
}

} // namespace

ExperimentConfig ExperimentConfig::parse_text(const std::string& text,
                                              const std::string& origin) {
    cfg::Record root = cfg::parse(text, origin);
    const cfg::Value* exp = root.find("experiment");
    if (!exp) throw input_error(origin + ": missing 'experiment' section");
    if (root.items.size() != 1)
        throw input_error(origin + ": only the 'experiment' section is allowed at top level");

    ExperimentConfig out;
    out.echo = root;

    cfg::Binder b(exp->record(), origin + ".experiment");
    out.kind = b.str("kind");
    out.seed = static_cast<std::uint64_t>(b.number_or("seed", 7));
    out.budget = static_cast<std::int64_t>(b.number_or("budget", 10'000));
    out.tol = b.number_or("tol", 1e-3);
    out.h = b.number_or("h", 0.02);
    out.n_max = static_cast<int>(b.number_or("n_max", 64));
    out.subsequences = static_cast<int>(b.number_or("subsequences", 5));
    if (b.has("schedule"))
        for (double v : b.numbers("schedule")) out.schedule.push_back(static_cast<int>(v));
    if (b.has("field")) {
        const cfg::Value& fv = b.get("field");
        if (fv.is_string()) {
            out.field_name = fv.str();
        } else {
            cfg::Record wrap;
            wrap.set("field", fv);
            out.field = fol::PolyVectorField::from_config(wrap);
            out.field_name = "";
        }
    }
    out.family = b.str_or("family", "");
    if (b.has("ambient")) out.ambient = b.numbers("ambient");
    if (b.has("box")) out.box_half = b.numbers("box");
    if (b.has("points"))
        for (const cfg::Value& pv : b.get("points").list()) {
            std::vector<double> nums;
            for (const cfg::Value& x : pv.list()) nums.push_back(x.num());
            out.points.push_back(point_from_numbers(nums));
        }
    out.detect_f = b.number_or("detect_f", 0) != 0;
    out.allow_E_in_K = b.number_or("allow_E_in_K", 0) != 0;
    out.j_max = static_cast<int>(b.number_or("j_max", 8));
    out.m_max = static_cast<int>(b.number_or("m_max", 8));
    out.out_csv = b.str_or("out_csv", "");
    out.out_svg = b.str_or("out_svg", "");
    out.svg_kind = b.str_or("svg_kind", "eta_vs_n");
    b.finish();

    if (out.kind != "pointwise" && out.kind != "uniform" && out.kind != "kernel" &&
        out.kind != "hausdorff_kernel" && out.kind != "eta" && out.kind != "dense_defective")
        throw input_error(origin + ": unknown experiment kind '" + out.kind + "'");
    return out;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    return parse_text(read_file(path), path);
}

namespace {

struct Prepared {
    fol::PolyVectorField X;
    geo::DomainSequence seq;
    geo::DomainPtr U;
    RBox box{std::vector<double>{-1, -1}, std::vector<double>{1, 1}};
};

Prepared prepare(const ExperimentConfig& c) {
    Prepared p;
    if (c.family.empty()) throw input_error("config needs a 'family'");
    p.seq = geo::family_by_name(c.family, c.seed);
    int dim = p.seq.base_point.dim();
    if (!c.field_name.empty())
        p.X = fol::PolyVectorField::by_name(c.field_name, dim);
    else if (c.field.dim > 0)
        p.X = c.field;
    else
        throw input_error("config needs a 'field'");
    if (p.X.dim != dim)
        throw input_error("field dimension does not match the domain family");

    std::vector<double> amb = c.ambient;
    if (amb.empty()) amb.assign(dim, 5.0);
    p.U = centered_polydisc(amb);

    std::vector<double> half = c.box_half;
    if (half.empty()) {
        RBox bb = p.seq.at(1)->bounding_box(2 * c.h);
        half.clear();
        for (int i = 0; i < dim; ++i)
            half.push_back(std::max(std::abs(bb.lo[2 * i]), std::abs(bb.hi[2 * i])));
    }
    p.box = RBox::centered(half);
    return p;
}

std::vector<int> default_schedule(int n_max) {
    std::vector<int> s;
    for (int n = 1; n <= n_max; n *= 2) s.push_back(n);
    if (s.back() != n_max) s.push_back(n_max);
    return s;
}

RunOutcome run_experiment_config(const ExperimentConfig& c, const std::string& path) {
    Prepared p = prepare(c);
    std::ostringstream sum;
    int exit_code = 0;

    if (c.kind == "kernel") {
        geo::ConvergenceReport rep = geo::check_kernel_convergence(
            p.seq, c.subsequences, c.n_max, p.box, c.h, c.seed);
        const char* v = rep.verdict == geo::ConvergenceVerdict::Converges ? "converges"
                        : rep.verdict == geo::ConvergenceVerdict::Fails   ? "fails"
                                                                          : "inconclusive";
        sum << "kernel_convergence = " << v << "\n";
        if (!rep.witness.empty()) sum << "witness = " << rep.witness << "\n";
        sum << "kernel_cells = " << rep.full.cells << "\n";
        if (p.seq.declared_kernel) {
            double r = geo::region_rho_to_domain(rep.full, *p.seq.declared_kernel, 8 * c.h);
            sum << "rho_to_declared_kernel = " << r << " (tol " << 2 * c.h << ")\n";
        }
        if (!c.out_csv.empty())
            write_file(resolve_near(path, c.out_csv), rep.full.boundary_cloud().to_csv());
        if (rep.verdict != geo::ConvergenceVerdict::Converges) exit_code = 2;
        return {exit_code, sum.str()};
    }

    if (c.kind == "hausdorff_kernel") {
        std::vector<int> sched = c.schedule.empty() ? default_schedule(c.n_max) : c.schedule;
        lab::HausdorffKernelReport rep =
            lab::hausdorff_to_kernel_check(p.seq, p.box, c.h, sched, c.n_max);
        sum << "hausdorff_to_kernel = " << (rep.first_fail_stage == 0 ? "pass" : "fail") << "\n";
        if (rep.first_fail_stage == 1) sum << "stage = not Hausdorff-convergent\n";
        if (rep.first_fail_stage == 2) sum << "stage = kernel mismatch\n";
        if (rep.first_fail_stage == 3) sum << "stage = F not empty\n";
        for (auto [n, r] : rep.rho_series) sum << "rho[" << n << "] = " << r << "\n";
        if (rep.first_fail_stage != 0) exit_code = 2;
        return {exit_code, sum.str()};
    }

    if (c.kind == "dense_defective") {
        lab::DenseDefectiveReport rep =
            lab::dense_defective_experiment(c.j_max, c.m_max, c.seed, c.h);
        sum << "dense_defective_covered = " << (rep.covered ? "yes" : "no") << "\n";
        sum << "oracle_max_line_distance = " << rep.oracle_max_line_distance << "\n";
        if (!c.out_csv.empty())
            write_file(resolve_near(path, c.out_csv), rep.S_samples.to_csv());
        if (!c.out_svg.empty())
            write_file(resolve_near(path, c.out_svg), report::cloud_svg(rep.S_samples));
        if (!rep.covered) exit_code = 2;
        return {exit_code, sum.str()};
    }

    if (c.kind == "eta") {
        if (c.points.empty()) throw input_error("eta: needs 'points'");
        geo::DomainPtr W = p.seq.declared_kernel ? p.seq.declared_kernel : p.seq.at(1);
        std::ostringstream csv;
        csv << "re_1,im_1";
        for (int i = 2; i <= p.X.dim; ++i) csv << ",re_" << i << ",im_" << i;
        csv << ",lower,upper,exact,method,seed,budget\n";
        for (const CPoint& q : c.points) {
            eta::EtaEstimate e = eta::eta_evaluate(p.X, q, W, c.budget, c.seed);
            for (int i = 0; i < p.X.dim; ++i)
                csv << (i ? "," : "") << q.z[i].real() << "," << q.z[i].imag();
            char buf[128];
            std::snprintf(buf, sizeof buf, ",%.12g,%.12g,", e.lower, e.upper);
            csv << buf;
            if (e.exact) {
                std::snprintf(buf, sizeof buf, "%.12g", *e.exact);
                csv << buf;
            }
            csv << ","
                << (e.method == eta::EtaEstimate::Method::ClosedForm    ? "closed_form"
                    : e.method == eta::EtaEstimate::Method::OnSingular ? "on_E"
                                                                        : "mc_sandwich")
                << "," << c.seed << "," << c.budget << "\n";
        }
        sum << "eta_points = " << c.points.size() << "\n";
        if (!c.out_csv.empty()) write_file(resolve_near(path, c.out_csv), csv.str());
        return {0, sum.str()};
    }

    // pointwise / uniform experiments
    if (c.points.empty()) throw input_error(c.kind + ": needs 'points'");
    lab::ExperimentSpec spec;
    spec.X = p.X;
    spec.seq = p.seq;
    spec.U = p.U;
    spec.points = c.points;
    spec.schedule = c.schedule.empty() ? default_schedule(c.n_max) : c.schedule;
    spec.tol = c.tol;
    spec.budget = c.budget;
    spec.seed = c.seed;
    spec.h = c.h;

    lab::FDetection F;
    if (c.detect_f) {
        F = lab::detect_F(p.seq, p.seq.declared_kernel, p.box, c.h, c.n_max);
        spec.F = &F;
        sum << "F_samples = " << F.samples.points.size() << "\n";
    }

    lab::ExperimentReport rep = (c.kind == "uniform")
                                    ? lab::uniform_convergence_experiment(spec, c.allow_E_in_K)
                                    : lab::pointwise_convergence_experiment(spec);

    sum << "pointwise_ok = " << rep.pointwise_ok << "\n";
    sum << "liminf_ok = " << rep.liminf_ok << "\n";
    if (c.kind == "uniform") sum << "uniform_ok = " << rep.uniform_ok << "\n";
    sum << "sup_gap_final = " << rep.sup_gap_final << "\n";

    if (!c.out_csv.empty())
        write_file(resolve_near(path, c.out_csv), report::experiment_csv(rep));
    if (!c.out_svg.empty())
        write_file(resolve_near(path, c.out_svg),
                   report::experiment_svg(rep, report::plot_kind_by_name(c.svg_kind)));
    sum << report::experiment_summary(rep);

    bool pass = rep.pointwise_ok && rep.liminf_ok && (c.kind != "uniform" || rep.uniform_ok);
    return {pass ? 0 : 2, sum.str()};
}

} // namespace

RunOutcome run(const std::string& config_path) {
    ExperimentConfig c = ExperimentConfig::parse_file(config_path);
    return run_experiment_config(c, config_path);
}

RunOutcome run_kernel(const std::string& config_path) {
    ExperimentConfig c = ExperimentConfig::parse_file(config_path);
    c.kind = "kernel";
    return run_experiment_config(c, config_path);
}

RunOutcome run_eta(const std::string& config_path) {
    ExperimentConfig c = ExperimentConfig::parse_file(config_path);
    c.kind = "eta";
    return run_experiment_config(c, config_path);
}

RunOutcome run_report(const std::string& csv_path, const std::string& plot_kind,
                      const std::string& out_svg) {
    std::string csv = read_file(csv_path);
    std::string svg = report::csv_to_svg(csv, report::plot_kind_by_name(plot_kind));
    std::string out = out_svg.empty() ? csv_path + ".svg" : out_svg;
    write_file(out, svg);
    return {0, "wrote " + out + "\n"};
}

} // namespace folmet::cli
