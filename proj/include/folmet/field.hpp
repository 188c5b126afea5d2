#pragma once

#include <string>
#include <vector>

#include "folmet/config.hpp"
#include "folmet/types.hpp"

namespace folmet::fol {

/// One monomial c * z_1^{e_1} ... z_N^{e_N}.
struct Monomial {
    std::vector<int> exps;
    cplx coeff;
};

/// Holomorphic polynomial vector field on C^N: component i is dz_i/dt.
struct PolyVectorField {
    int dim = 0;
    std::vector<std::vector<Monomial>> comp;

    std::vector<cplx> eval(const CPoint& p) const;
    /// Jacobian d X_i / d z_j at p (row-major N x N).
    std::vector<cplx> jacobian(const CPoint& p) const;

    double eval_norm(const CPoint& p) const;

    /// True when every component restricted to the axis {t e_axis} vanishes
    /// identically (symbolic check on coefficients).
    bool vanishes_on_axis(int axis) const;
    /// True when every component has zero constant term.
    bool vanishes_at_origin() const;

    cfg::Record to_config() const;
    static PolyVectorField from_config(const cfg::Record& r);

    /// The paper's catalog, matched up to one nonzero common scalar.
    enum class Catalog { None, Radial, DiagOneTwo, Ex61, Ex62 };
    Catalog catalog() const;

    static PolyVectorField radial(int dim);        // X(z) = z
    static PolyVectorField diag_one_two();         // x d/dx + 2y d/dy  (C^2)
    static PolyVectorField example_6_1();          // x d/dx + zy d/dy + zy d/dz
    static PolyVectorField example_6_2();          // xy d/dx + zy d/dy + zx d/dz
    static PolyVectorField constant_dx(int dim);   // d/dx
    static PolyVectorField by_name(const std::string& name, int dim_hint = 2);
};

/// Zero locus of the field: numeric samples plus a symbolic template when the
/// locus matches coordinate axes or the origin.
struct SingularSet {
    enum class Template { Empty, OriginOnly, Axes, Unknown };
    Template templ = Template::Unknown;
    std::vector<int> axes;            // 0-based axis indices for Template::Axes
    std::vector<CPoint> samples;      // Newton-polished numeric zeros
    int dim = 0;

    bool has_template() const { return templ != Template::Unknown; }

    /// Max-metric distance to the template set (infinity for Empty; throws
    /// for Unknown).
    double distance(const CPoint& p) const;
    bool contains(const CPoint& p, double tol) const;
};

struct SingularSetOptions {
    std::int64_t budget = 2'000'000;   // coarse-scan node budget
    double tol = 1e-9;                 // residual threshold after polish
};

/// Grid scan of |X| over the box at an effective pitch fitted to the budget,
/// Newton polish of the hits, then symbolic template matching.
SingularSet singular_set(const PolyVectorField& X, const RBox& box, double h,
                         SingularSetOptions opt = {});

} // namespace folmet::fol
