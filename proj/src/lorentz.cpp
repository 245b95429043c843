#include "prl/lorentz.hpp"

#include <cmath>

namespace prl {

bool DeSitterPoint::is_valid(const LorentzVec& w, const Tolerances& tol) {
    return std::abs(minkowski_square(w) - 1.0) <= tol.eps_model && w.x0 > 0.0;
}

DeSitterPoint::DeSitterPoint(const LorentzVec& w, const Tolerances& tol) : v(w) {
    if (!is_valid(w, tol))
        throw Error("DeSitterPoint: not a unit space-like vector on the upper sheet (<v,v> = " +
                    std::to_string(minkowski_square(w)) + ", x0 = " + std::to_string(w.x0) + ")");
}

bool HyperbolicPoint::is_valid(const LorentzVec& w, const Tolerances& tol) {
    return std::abs(minkowski_square(w) + 1.0) <= tol.eps_model && w.x0 > 0.0;
}

HyperbolicPoint::HyperbolicPoint(const LorentzVec& w, const Tolerances& tol) : v(w) {
    if (!is_valid(w, tol))
        throw Error("HyperbolicPoint: not a unit time-like vector on the upper sheet");
}

DeSitterPoint hyperboloid_lift(const EuclideanPoint3& A, const Tolerances& tol) {
    const double n = A.norm();
    if (n <= 1.0 + tol.eps_ball)
        throw PointInsideBall("hyperboloid_lift: |A| = " + std::to_string(n) +
                              " is not strictly outside the closed unit ball");
    const double s = 1.0 / std::sqrt(A.squaredNorm() - 1.0);
    return DeSitterPoint(LorentzVec(s, s * A), tol);
}

EuclideanPoint3 klein_project(const DeSitterPoint& x) { return x.v.xs / x.v.x0; }

EuclideanPoint3 klein_project_hyperbolic(const HyperbolicPoint& x) { return x.v.xs / x.v.x0; }

DsSeparation ds_separation(const DeSitterPoint& x, const DeSitterPoint& y, const Tolerances& tol) {
    const LorentzVec d(x.v.x0 - y.v.x0, x.v.xs - y.v.xs);
    if (std::abs(d.x0) <= tol.eps_model && d.xs.cwiseAbs().maxCoeff() <= tol.eps_model)
        return {SeparationClass::Coincident, 0.0, SignFlag::Aligned};

    const double q = minkowski_inner(x.v, y.v);
    if (std::abs(std::abs(q) - 1.0) <= tol.eps_model)
        return {SeparationClass::DegenerateTangent, 0.0,
                q > 0 ? SignFlag::Aligned : SignFlag::AntiAligned};
    if (q > 1.0)
        return {SeparationClass::TimeLike, std::acosh(q), SignFlag::Aligned};
    if (q < -1.0)
        return {SeparationClass::TimeLike, std::acosh(-q), SignFlag::AntiAligned};
    return {SeparationClass::SpaceLike, std::acos(q), SignFlag::Aligned};
}

Mat4 rotation_x3(double angle) {
    Mat4 M = Mat4::Identity();
    const double c = std::cos(angle), s = std::sin(angle);
    M(1, 1) = c;
    M(1, 2) = -s;
    M(2, 1) = s;
    M(2, 2) = c;
    return M;
}

Mat4 rotation_axis(const Vec3& axis, double angle) {
    Mat4 M = Mat4::Identity();
    M.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
    return M;
}

Mat4 boost_x0x1(double rapidity) {
    Mat4 M = Mat4::Identity();
    const double c = std::cosh(rapidity), s = std::sinh(rapidity);
    M(0, 0) = c;
    M(0, 1) = s;
    M(1, 0) = s;
    M(1, 1) = c;
    return M;
}

double lorentz_defect(const Mat4& M) {
    Mat4 J = Mat4::Identity();
    J(0, 0) = -1.0;
    return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

bool is_time_orientation_preserving_lorentz(const Mat4& M, double tol) {
    return lorentz_defect(M) <= tol && M(0, 0) > 0.0;
}

LorentzVec apply(const Mat4& M, const LorentzVec& x) {
    return LorentzVec::from_vec4(M * x.as_vec4());
}

double segment_min_sq_norm(const Vec3& P, const Vec3& Q) {
    const Vec3 D = Q - P;
    const double dd = D.squaredNorm();
    if (dd == 0.0) return P.squaredNorm();
    const double s = std::clamp(-P.dot(D) / dd, 0.0, 1.0);
    return (P + s * D).squaredNorm();
}

} // namespace prl
