#include "folmet/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace folmet::report {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double eta_column(const eta::EtaEstimate& e) { return e.exact ? *e.exact : e.lower; }

std::string flags_of(const lab::ExperimentRow& r) {
    std::string f;
    auto add = [&](const std::string& s) {
        if (!f.empty()) f += ';';
        f += s;
    };
    switch (r.eta_n.method) {
    case eta::EtaEstimate::Method::ClosedForm: add("closed_form"); break;
    case eta::EtaEstimate::Method::McSandwich:
        add("mc");
        add("lo=" + fmt(r.eta_n.lower));
        add("hi=" + fmt(r.eta_n.upper));
        break;
    case eta::EtaEstimate::Method::OnSingular: add("on_E"); break;
    }
    if (r.starved) add("starved");
    if (f.empty()) f = "-";
    return f;
}

} // namespace

std::string experiment_csv(const lab::ExperimentReport& rep) {
    std::ostringstream os;
    int dim = rep.rows.empty() ? 0 : rep.rows.front().p.dim();
    for (int i = 1; i <= dim; ++i) os << "re_" << i << ",im_" << i << ",";
    os << "n,eta_n,eta_W,gap,in_S,in_E,verdictflags\n";
    for (const auto& r : rep.rows) {
        for (const cplx& c : r.p.z) os << fmt(c.real()) << "," << fmt(c.imag()) << ",";
        os << r.n << "," << fmt(eta_column(r.eta_n)) << "," << fmt(eta_column(r.eta_W)) << ","
           << fmt(r.gap) << "," << (r.in_S ? 1 : 0) << "," << (r.in_E ? 1 : 0) << ","
           << flags_of(r) << "\n";
    }
    return os.str();
}

std::string experiment_summary(const lab::ExperimentReport& rep) {
    cfg::Record sum;
    sum.set("experiment", cfg::Value(rep.name));
    sum.set("rows", cfg::Value(static_cast<double>(rep.rows.size())));
    sum.set("pointwise_ok", cfg::Value(rep.pointwise_ok ? 1.0 : 0.0));
    sum.set("uniform_ok", cfg::Value(rep.uniform_ok ? 1.0 : 0.0));
    sum.set("liminf_ok", cfg::Value(rep.liminf_ok ? 1.0 : 0.0));
    sum.set("tol", cfg::Value(rep.tol));
    sum.set("sup_gap_final", cfg::Value(rep.sup_gap_final));
    sum.set("runtime_seconds", cfg::Value(rep.runtime_seconds));
    if (!rep.notes.empty()) sum.set("notes", cfg::Value(rep.notes));
    cfg::Record top;
    top.set("summary", cfg::Value(std::move(sum)));
    return cfg::serialize(top);
}

PlotKind plot_kind_by_name(const std::string& name) {
    if (name == "eta_vs_n") return PlotKind::EtaVsN;
    if (name == "scatter") return PlotKind::Scatter;
    throw input_error("unknown plot kind '" + name + "' (eta_vs_n | scatter)");
}

namespace {

struct Series {
    std::vector<std::pair<double, double>> pts;
};

std::string render_svg(const std::vector<Series>& series, const std::string& xlabel,
                       const std::string& ylabel) {
    const int W = 720, H = 480, ML = 70, MR = 20, MT = 20, MB = 50;
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.pts) {
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    if (xlo > xhi) { xlo = 0; xhi = 1; }
    if (ylo > yhi) { ylo = 0; yhi = 1; }
    if (xhi - xlo < 1e-12) { xhi += 1; xlo -= 1; }
    if (yhi - ylo < 1e-12) { yhi += std::max(1e-6, std::abs(yhi)); ylo -= std::max(1e-6, std::abs(ylo)); }
    double padx = 0.05 * (xhi - xlo), pady = 0.08 * (yhi - ylo);
    xlo -= padx; xhi += padx; ylo -= pady; yhi += pady;

    auto px = [&](double x) { return ML + (x - xlo) / (xhi - xlo) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ylo) / (yhi - ylo) * (H - MT - MB); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
       << H - MB << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
       << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double xv = xlo + (xhi - xlo) * t / 4, yv = ylo + (yhi - ylo) * t / 4;
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - MB + 18
           << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        os << "<text x=\"" << ML - 8 << "\" y=\"" << py(yv) + 4
           << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    os << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 12
       << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << (MT + H - MB) / 2
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (MT + H - MB) / 2 << ")\">" << ylabel << "</text>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % 8];
        if (series[s].pts.size() > 1) {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (auto [x, y] : series[s].pts) os << px(x) << "," << py(y) << " ";
            os << "\"/>\n";
        }
        for (auto [x, y] : series[s].pts)
            os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.4\" fill=\""
               << color << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace

std::string experiment_svg(const lab::ExperimentReport& rep, PlotKind kind) {
    if (rep.rows.empty()) throw input_error("svg refused: empty report");
    if (kind == PlotKind::Scatter) {
        geo::SampleCloud cloud;
        for (const auto& r : rep.rows) cloud.points.push_back(r.p);
        return cloud_svg(cloud, 0);
    }
    std::map<std::string, Series> per_point;
    std::map<std::string, Series> baselines;
    for (const auto& r : rep.rows) {
        std::string key;
        for (const cplx& c : r.p.z) key += fmt_cplx(c);
        per_point[key].pts.emplace_back(r.n, r.eta_n.exact ? *r.eta_n.exact : r.eta_n.lower);
        baselines[key].pts.emplace_back(r.n, r.eta_W.exact ? *r.eta_W.exact : r.eta_W.lower);
    }
    std::vector<Series> series;
    for (auto& [k, s] : per_point) series.push_back(std::move(s));
    for (auto& [k, s] : baselines) series.push_back(std::move(s));
    return render_svg(series, "n", "eta");
}

std::string cloud_svg(const geo::SampleCloud& cloud, int axis) {
    if (cloud.points.empty()) throw input_error("svg refused: empty cloud");
    Series s;
    for (const CPoint& p : cloud.points) {
        const cplx& c = p.z.at(axis);
        s.pts.emplace_back(c.real(), c.imag());
    }
    Series only = std::move(s);
    std::vector<Series> series;
    series.push_back(std::move(only));
    // scatter only: strip the connecting polyline by splitting single points
    std::vector<Series> dots;
    for (auto [x, y] : series[0].pts) {
        Series d;
        d.pts.emplace_back(x, y);
        dots.push_back(std::move(d));
        if (dots.size() > 4000) break;
    }
    return render_svg(dots, "re", "im");
}

std::string csv_to_svg(const std::string& csv, PlotKind kind) {
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line)) throw input_error("csv_to_svg: empty csv");
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) header.push_back(cell);
    }
    auto col = [&](const std::string& name) {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };
    int cn = col("n"), ceta = col("eta_n"), cetaw = col("eta_W");
    int cre = col("re_1"), cim = col("im_1");
    std::map<std::string, Series> per_point;
    std::map<std::string, Series> baselines;
    Series dots;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream rs(line);
        std::string cell;
        while (std::getline(rs, cell, ',')) cells.push_back(cell);
        if (kind == PlotKind::Scatter) {
            if (cre < 0 || cim < 0) throw input_error("csv_to_svg: no coordinate columns");
            dots.pts.emplace_back(std::stod(cells.at(cre)), std::stod(cells.at(cim)));
            continue;
        }
        if (cn < 0 || ceta < 0) throw input_error("csv_to_svg: missing n/eta_n columns");
        std::string key;
        for (size_t i = 0; i + 1 < static_cast<size_t>(cn); ++i) key += cells.at(i) + "|";
        per_point[key].pts.emplace_back(std::stod(cells.at(cn)), std::stod(cells.at(ceta)));
        if (cetaw >= 0)
            baselines[key].pts.emplace_back(std::stod(cells.at(cn)), std::stod(cells.at(cetaw)));
    }
    if (kind == PlotKind::Scatter) {
        std::vector<Series> all;
        for (auto [x, y] : dots.pts) {
            Series d;
            d.pts.emplace_back(x, y);
            all.push_back(std::move(d));
            if (all.size() > 4000) break;
        }
        if (all.empty()) throw input_error("svg refused: empty report");
        return render_svg(all, "re", "im");
    }
    std::vector<Series> series;
    for (auto& [k, s] : per_point) series.push_back(std::move(s));
    for (auto& [k, s] : baselines) series.push_back(std::move(s));
    if (series.empty()) throw input_error("svg refused: empty report");
    return render_svg(series, "n", "eta");
}

} // namespace folmet::report
