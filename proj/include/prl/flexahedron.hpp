#pragma once

#include "prl/lorentz.hpp"

#include <array>
#include <string>
#include <utility>

namespace prl {

struct DegenerateFace : Error {
    using Error::Error;
};

struct SchonhardtParams {
    double a = 1.55; // equilateral side length
    double h = 0.5;  // half-height
    double t = 0.01; // flex parameter
};

// Vertex order: A, B, C, A0, B0, C0.
struct LabeledPolyhedron {
    std::array<Vec3, 6> vertices;

    static constexpr int kVertexCount = 6;
    static constexpr int kEdgeCount = 12;
    static constexpr int kFaceCount = 8;

    static const std::array<std::pair<int, int>, 12>& edges();
    static const std::array<std::array<int, 3>, 8>& faces();
    static const std::array<std::pair<int, int>, 3>& diagonals();
    static const std::array<std::string, 6>& labels();
};

struct FlexField {
    std::array<Vec3, 3> eta; // directions for A0, B0, C0
};

struct AdmissibilityVerdict {
    // printed inequalities
    bool ineq1 = false; // h^2 + a^2/3 > 1
    bool ineq2 = false; // h^2 + a^2/12 < 1
    bool ineq3 = false; // a^2/3 < 1
    double ineq1_margin = 0.0;
    double ineq2_margin = 0.0;
    double ineq3_margin = 0.0;
    // direct geometric checks
    bool vertex_check = false; // every |v| > 1 + eps_ball
    bool edge_check = false;   // every edge segment dips below 1 - eps_ball
    double vertex_margin = 0.0;
    double edge_margin = 0.0;

    bool inequalities_pass() const { return ineq1 && ineq2 && ineq3; }
    bool direct_pass() const { return vertex_check && edge_check; }
    bool pass() const { return inequalities_pass() && direct_pass(); }
};

LabeledPolyhedron build_schonhardt(double a, double h);

AdmissibilityVerdict admissibility_check(double a, double h,
                                         const Tolerances& tol = default_tol());

// Direct vertex/edge ball checks on an arbitrary realization (used for flexed copies).
AdmissibilityVerdict ball_checks(const LabeledPolyhedron& P,
                                 const Tolerances& tol = default_tol());

FlexField flex_directions(const LabeledPolyhedron& Q);

LabeledPolyhedron flexed(const LabeledPolyhedron& Q, double t);

std::array<double, 12> edge_lengths(const LabeledPolyhedron& P);
std::array<double, 3> diagonal_lengths(const LabeledPolyhedron& P);

double first_order_flex_residual(const LabeledPolyhedron& Q);

// Null space of the 12x9 rigidity system with the bottom triangle pinned.
// Columns are an orthonormal basis of velocity fields (stacked A0,B0,C0 components)
// annihilated by every edge-length derivative.
Eigen::MatrixXd rigidity_nullspace(const LabeledPolyhedron& Q, double sv_threshold = 1e-9);

// Distance of a 9-vector from the rigidity null space after normalization; used to
// cross-check the face-normal flex against the matrix computation.
double flex_nullspace_mismatch(const LabeledPolyhedron& Q);

bool congruence_test(const LabeledPolyhedron& P, const LabeledPolyhedron& Pprime,
                     double tol = 1e-9);

} // namespace prl
