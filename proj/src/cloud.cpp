#include "folmet/cloud.hpp"

#include <cstdio>
#include <sstream>

namespace folmet::geo {

const char* tag_name(CloudTag t) {
    switch (t) {
    case CloudTag::Interior: return "interior";
    case CloudTag::Boundary: return "boundary";
    default: return "generic";
    }
}

std::string SampleCloud::to_csv() const {
    std::ostringstream os;
    int n = dim();
    for (int i = 1; i <= n; ++i) os << "re_" << i << ",im_" << i << ",";
    os << "tag\n";
    char buf[40];
    for (const CPoint& p : points) {
        for (const cplx& c : p.z) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,", c.real(), c.imag());
            os << buf;
        }
        os << tag_name(tag) << "\n";
    }
    return os.str();
}

SampleCloud SampleCloud::from_csv(const std::string& text) {
    SampleCloud out;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        std::vector<double> vals;
        std::string cell;
        std::istringstream row(line);
        std::string tag;
        while (std::getline(row, cell, ',')) {
            try {
                size_t used = 0;
                double v = std::stod(cell, &used);
                if (used == cell.size()) { vals.push_back(v); continue; }
            } catch (...) {
            }
            tag = cell;
        }
        if (vals.size() % 2 != 0 || vals.empty())
            throw input_error("cloud csv: odd coordinate count in row '" + line + "'");
        std::vector<cplx> z;
        for (size_t i = 0; i < vals.size(); i += 2) z.emplace_back(vals[i], vals[i + 1]);
        out.points.emplace_back(std::move(z));
        if (tag == "interior") out.tag = CloudTag::Interior;
        else if (tag == "boundary") out.tag = CloudTag::Boundary;
    }
    return out;
}

} // namespace folmet::geo
