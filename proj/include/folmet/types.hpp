#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace folmet {

using cplx = std::complex<double>;

/// Input/config errors (CLI exit code 1).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mathematical precondition violations (point on a puncture, p not in E, ...).
struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point of C^N. Coordinates are dimensionless Euclidean coordinates.
struct CPoint {
    std::vector<cplx> z;

    CPoint() = default;
    explicit CPoint(std::vector<cplx> zz) : z(std::move(zz)) { check(); }
    CPoint(std::initializer_list<cplx> zz) : z(zz) { check(); }

    int dim() const { return static_cast<int>(z.size()); }

    void check() const {
        if (z.empty()) throw input_error("CPoint: dimension must be >= 1");
        for (const cplx& c : z)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw input_error("CPoint: non-finite coordinate");
    }

    double norm2() const {
        double s = 0;
        for (const cplx& c : z) s += std::norm(c);
        return std::sqrt(s);
    }

    /// max_i |z_i - w_i|; the point metric used for all Hausdorff work.
    double dist_max(const CPoint& w) const {
        double d = 0;
        for (int i = 0; i < dim(); ++i) d = std::max(d, std::abs(z[i] - w.z[i]));
        return d;
    }

    bool operator==(const CPoint& o) const { return z == o.z; }
};

/// Axis-aligned box over the 2N real coordinates (re_1, im_1, ..., re_N, im_N).
struct RBox {
    std::vector<double> lo, hi;

    RBox() = default;
    RBox(std::vector<double> l, std::vector<double> h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo.size() != hi.size() || lo.empty()) throw input_error("RBox: bad extents");
        for (size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] <= hi[i])) throw input_error("RBox: lo > hi");
    }

    /// Symmetric box [-a_1,a_1] x [-a_1,a_1] x ... per complex coordinate.
    static RBox centered(const std::vector<double>& half_extents) {
        std::vector<double> l, h;
        for (double a : half_extents) {
            l.push_back(-a); l.push_back(-a);
            h.push_back(a);  h.push_back(a);
        }
        return RBox(std::move(l), std::move(h));
    }

    int raxes() const { return static_cast<int>(lo.size()); }
    int cdim() const { return raxes() / 2; }

    double center(int a) const { return 0.5 * (lo[a] + hi[a]); }
    double halfwidth(int a) const { return 0.5 * (hi[a] - lo[a]); }
    /// Half-diagonal in the max metric: max over complex coordinates of the
    /// modulus of the (re,im) half-extent pair.
    double radius_max() const {
        double r = 0;
        for (int i = 0; i < cdim(); ++i)
            r = std::max(r, std::hypot(halfwidth(2 * i), halfwidth(2 * i + 1)));
        return r;
    }

    CPoint center_point() const {
        std::vector<cplx> z;
        for (int i = 0; i < cdim(); ++i) z.emplace_back(center(2 * i), center(2 * i + 1));
        return CPoint(std::move(z));
    }

    bool contains(const CPoint& p) const {
        for (int i = 0; i < cdim(); ++i) {
            if (p.z[i].real() < lo[2 * i] || p.z[i].real() > hi[2 * i]) return false;
            if (p.z[i].imag() < lo[2 * i + 1] || p.z[i].imag() > hi[2 * i + 1]) return false;
        }
        return true;
    }

    std::pair<RBox, RBox> split(int axis) const {
        RBox a = *this, b = *this;
        double m = center(axis);
        a.hi[axis] = m;
        b.lo[axis] = m;
        return {a, b};
    }

    int widest_axis() const {
        int best = 0;
        for (int a = 1; a < raxes(); ++a)
            if (hi[a] - lo[a] > hi[best] - lo[best]) best = a;
        return best;
    }
};

/// Interval [lo,hi] of |z - c| when z ranges over a rectangle.
inline void abs_interval(double re_lo, double re_hi, double im_lo, double im_hi,
                         const cplx& c, double& out_lo, double& out_hi) {
    double dre_lo = re_lo - c.real(), dre_hi = re_hi - c.real();
    double dim_lo = im_lo - c.imag(), dim_hi = im_hi - c.imag();
    double near_re = (dre_lo > 0) ? dre_lo : (dre_hi < 0 ? -dre_hi : 0.0);
    double near_im = (dim_lo > 0) ? dim_lo : (dim_hi < 0 ? -dim_hi : 0.0);
    double far_re = std::max(std::abs(dre_lo), std::abs(dre_hi));
    double far_im = std::max(std::abs(dim_lo), std::abs(dim_hi));
    out_lo = std::hypot(near_re, near_im);
    out_hi = std::hypot(far_re, far_im);
}

inline std::string fmt_cplx(const cplx& c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.10g,%.10g)", c.real(), c.imag());
    return buf;
}

} // namespace folmet
