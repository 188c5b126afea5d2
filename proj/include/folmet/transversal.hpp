#pragma once

#include "folmet/field.hpp"
#include "folmet/rng.hpp"

namespace folmet::fol {

enum class TransversalVerdict { Transversal, NotTransversal, Inconclusive };

struct TransversalResult {
    TransversalVerdict verdict = TransversalVerdict::Inconclusive;
    std::vector<cplx> witness;   // unit leaf-tangent direction nearest the cone of E
    double min_angle = 0;        // projective angle between that direction and C_p(E)
    std::string note;
};

/// Angular distance between complex lines [u], [v] in projective space:
/// acos(|<u,v>| / (|u||v|)).
double projective_angle(const std::vector<cplx>& u, const std::vector<cplx>& v);

/// Cone test at a singular point: sample normalized field directions along
/// radial approaches at dyadic scales (the limit-cone proxy), compare against
/// the tangent cone of E read off its axis template. NotTransversal when some
/// limit direction comes within tol of the cone, Transversal when the gap
/// exceeds 10*tol uniformly, Inconclusive otherwise or when E has no
/// symbolic description.
TransversalResult transversal_type_check(const PolyVectorField& X, const SingularSet& E,
                                         const CPoint& e_point, double radius, int samples,
                                         double tol, std::uint64_t seed);

} // namespace folmet::fol
