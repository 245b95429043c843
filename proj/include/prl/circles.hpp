#pragma once

#include "prl/lorentz.hpp"

#include <string>
#include <vector>

namespace prl {

struct RankDeficient : Error {
    using Error::Error;
};

enum class Convention { Corrected, PaperVerbatim };

// Circle on the unit sphere: spherical center and spherical radius.
struct SphericalCircle {
    Vec3 center;   // unit vector
    double radius; // in (0, pi)

    SphericalCircle(const Vec3& c, double r);
};

struct CircleConfiguration {
    std::vector<std::string> labels;
    std::vector<SphericalCircle> circles;
    std::vector<DeSitterPoint> lifts; // canonical lifts, one per circle

    std::size_t size() const { return circles.size(); }

    static CircleConfiguration from_lifts(std::vector<DeSitterPoint> pts,
                                          std::vector<std::string> labels = {});
};

// Boundary circle of the hyperbolic plane dual to x.
SphericalCircle dual_circle(const DeSitterPoint& x);

// Corrected convention: tangent = 1, orthogonal = 0, identical = -1, separated > 1.
double inversive_distance(const SphericalCircle& c1, const SphericalCircle& c2,
                          Convention convention = Convention::Corrected);

// -<x,y>; equals the corrected inversive distance of the dual circles.
double inversive_distance_via_gram(const DeSitterPoint& x, const DeSitterPoint& y);

Eigen::MatrixXd gram_matrix(const CircleConfiguration& config);

struct MobiusVerdict {
    bool equivalent = false;
    std::vector<int> best_permutation; // minimizing relabeling
    double best_max_deviation = 0.0;   // max Gram deviation under it
    int witness_row = -1, witness_col = -1;
    double witness_deviation = 0.0; // deviation at the witness entry of the best permutation
};

// Gram-based test: the configurations are Mobius equivalent iff some permutation in
// `autos` matches the Gram matrices within tol. Requires both lift sets to span R^4_1.
MobiusVerdict mobius_equivalent(const CircleConfiguration& cfg1, const CircleConfiguration& cfg2,
                                const std::vector<std::vector<int>>& autos, double tol = 1e-10);

} // namespace prl
