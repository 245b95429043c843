#include "prl/flexahedron.hpp"

#include <cmath>

namespace prl {

const std::array<std::pair<int, int>, 12>& LabeledPolyhedron::edges() {
    // AB BC CA A0B0 B0C0 C0A0 AB0 AC0 BA0 BC0 CA0 CB0
    static const std::array<std::pair<int, int>, 12> e = {{{0, 1},
                                                           {1, 2},
                                                           {2, 0},
                                                           {3, 4},
                                                           {4, 5},
                                                           {5, 3},
                                                           {0, 4},
                                                           {0, 5},
                                                           {1, 3},
                                                           {1, 5},
                                                           {2, 3},
                                                           {2, 4}}};
    return e;
}

const std::array<std::array<int, 3>, 8>& LabeledPolyhedron::faces() {
    // ABC, A0B0C0, ABC0, A0BC, AB0C, A0B0C, AB0C0, A0BC0
    static const std::array<std::array<int, 3>, 8> f = {{{0, 1, 2},
                                                         {3, 4, 5},
                                                         {0, 1, 5},
                                                         {3, 1, 2},
                                                         {0, 4, 2},
                                                         {3, 4, 2},
                                                         {0, 4, 5},
                                                         {3, 1, 5}}};
    return f;
}

const std::array<std::pair<int, int>, 3>& LabeledPolyhedron::diagonals() {
    static const std::array<std::pair<int, int>, 3> d = {{{0, 3}, {1, 4}, {2, 5}}};
    return d;
}

const std::array<std::string, 6>& LabeledPolyhedron::labels() {
    static const std::array<std::string, 6> l = {"A", "B", "C", "A0", "B0", "C0"};
    return l;
}

LabeledPolyhedron build_schonhardt(double a, double h) {
    if (!(a > 0.0) || !(h > 0.0)) throw Error("build_schonhardt: a and h must be positive");
    const double R = a / std::sqrt(3.0);
    // bottom azimuths 90/210/330 degrees, top twisted by +90
    const double base[3] = {M_PI / 2.0, M_PI * 7.0 / 6.0, M_PI * 11.0 / 6.0};
    LabeledPolyhedron Q;
    for (int i = 0; i < 3; ++i) {
        Q.vertices[i] = Vec3(R * std::cos(base[i]), R * std::sin(base[i]), -h);
        const double az = base[i] + M_PI / 2.0;
        Q.vertices[i + 3] = Vec3(R * std::cos(az), R * std::sin(az), h);
    }
    return Q;
}

AdmissibilityVerdict ball_checks(const LabeledPolyhedron& P, const Tolerances& tol) {
    AdmissibilityVerdict v;
    double vmin = std::numeric_limits<double>::infinity();
    for (const Vec3& p : P.vertices) vmin = std::min(vmin, p.norm());
    v.vertex_check = vmin > 1.0 + tol.eps_ball;
    v.vertex_margin = vmin - 1.0;
    double emax = 0.0;
    for (const auto& [i, j] : LabeledPolyhedron::edges())
        emax = std::max(emax, segment_min_sq_norm(P.vertices[i], P.vertices[j]));
    v.edge_check = emax < 1.0 - tol.eps_ball;
    v.edge_margin = 1.0 - emax;
    return v;
}

AdmissibilityVerdict admissibility_check(double a, double h, const Tolerances& tol) {
    AdmissibilityVerdict v = ball_checks(build_schonhardt(a, h), tol);
    const double q1 = h * h + a * a / 3.0;
    const double q2 = h * h + a * a / 12.0;
    const double q3 = a * a / 3.0;
    v.ineq1 = q1 > 1.0;
    v.ineq2 = q2 < 1.0;
    v.ineq3 = q3 < 1.0;
    v.ineq1_margin = q1 - 1.0;
    v.ineq2_margin = 1.0 - q2;
    v.ineq3_margin = 1.0 - q3;
    return v;
}

FlexField flex_directions(const LabeledPolyhedron& Q) {
    // moved vertex -> face containing it and both bottom neighbours:
    // A0 -> A0BC, B0 -> AB0C, C0 -> ABC0
    static const std::array<std::array<int, 3>, 3> planes = {{{3, 1, 2}, {0, 4, 2}, {0, 1, 5}}};
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : Q.vertices) centroid += p;
    centroid /= 6.0;
    FlexField f;
    for (int k = 0; k < 3; ++k) {
        const Vec3& p0 = Q.vertices[planes[k][0]];
        const Vec3& p1 = Q.vertices[planes[k][1]];
        const Vec3& p2 = Q.vertices[planes[k][2]];
        Vec3 n = (p1 - p0).cross(p2 - p0);
        const double len = n.norm();
        if (len <= 1e-14) throw DegenerateFace("flex_directions: collinear face");
        n /= len;
        const Vec3 face_centroid = (p0 + p1 + p2) / 3.0;
        if (n.dot(centroid - face_centroid) > 0.0) n = -n; // point out from Q
        f.eta[k] = n;
    }
    return f;
}

LabeledPolyhedron flexed(const LabeledPolyhedron& Q, double t) {
    const FlexField f = flex_directions(Q);
    LabeledPolyhedron P = Q;
    for (int k = 0; k < 3; ++k) P.vertices[3 + k] += t * f.eta[k];
    return P;
}

std::array<double, 12> edge_lengths(const LabeledPolyhedron& P) {
    std::array<double, 12> out{};
    int k = 0;
    for (const auto& [i, j] : LabeledPolyhedron::edges())
        out[k++] = (P.vertices[j] - P.vertices[i]).norm();
    return out;
}

std::array<double, 3> diagonal_lengths(const LabeledPolyhedron& P) {
    std::array<double, 3> out{};
    int k = 0;
    for (const auto& [i, j] : LabeledPolyhedron::diagonals())
        out[k++] = (P.vertices[j] - P.vertices[i]).norm();
    return out;
}

double first_order_flex_residual(const LabeledPolyhedron& Q) {
    const FlexField f = flex_directions(Q);
    std::array<Vec3, 6> vel = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                               f.eta[0],     f.eta[1],     f.eta[2]};
    double worst = 0.0;
    for (const auto& [i, j] : LabeledPolyhedron::edges()) {
        const Vec3 e = Q.vertices[j] - Q.vertices[i];
        worst = std::max(worst, std::abs(e.dot(vel[j] - vel[i])));
    }
    return worst;
}

Eigen::MatrixXd rigidity_nullspace(const LabeledPolyhedron& Q, double sv_threshold) {
    // One row per edge, unknowns are the velocities of A0,B0,C0 (bottom pinned).
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(12, 9);
    int row = 0;
    for (const auto& [i, j] : LabeledPolyhedron::edges()) {
        const Vec3 e = Q.vertices[j] - Q.vertices[i];
        if (i >= 3) M.block<1, 3>(row, 3 * (i - 3)) = -e.transpose();
        if (j >= 3) M.block<1, 3>(row, 3 * (j - 3)) = e.transpose();
        ++row;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int null_dim = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv[k] <= sv_threshold) ++null_dim;
    return svd.matrixV().rightCols(null_dim);
}

double flex_nullspace_mismatch(const LabeledPolyhedron& Q) {
    const FlexField f = flex_directions(Q);
    Eigen::VectorXd v(9);
    for (int k = 0; k < 3; ++k) v.segment<3>(3 * k) = f.eta[k];
    v.normalize();
    const Eigen::MatrixXd N = rigidity_nullspace(Q);
    if (N.cols() == 0) return 1.0;
    return (v - N * (N.transpose() * v)).norm();
}

bool congruence_test(const LabeledPolyhedron& P, const LabeledPolyhedron& Pprime, double tol) {
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            const double d1 = (P.vertices[j] - P.vertices[i]).norm();
            const double d2 = (Pprime.vertices[j] - Pprime.vertices[i]).norm();
            if (std::abs(d1 - d2) > tol) return false;
        }
    return true;
}

} // namespace prl
