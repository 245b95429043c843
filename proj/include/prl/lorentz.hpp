#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace prl {

using Vec3 = Eigen::Vector3d;
using Mat4 = Eigen::Matrix4d;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointInsideBall : Error {
    using Error::Error;
};

struct Tolerances {
    double eps_model = 1e-12; // hyperboloid membership
    double eps_ball = 1e-10;  // strict ball exclusion margins
};

inline const Tolerances& default_tol() {
    static const Tolerances t{};
    return t;
}

// Vector in R^4 with the signature (-,+,+,+) bilinear form.
struct LorentzVec {
    double x0 = 0.0;
    Vec3 xs = Vec3::Zero();

    LorentzVec() = default;
    LorentzVec(double t, const Vec3& s) : x0(t), xs(s) {}
    LorentzVec(double t, double x1, double x2, double x3) : x0(t), xs(x1, x2, x3) {}

    Eigen::Vector4d as_vec4() const { return {x0, xs.x(), xs.y(), xs.z()}; }
    static LorentzVec from_vec4(const Eigen::Vector4d& v) {
        return {v[0], Vec3(v[1], v[2], v[3])};
    }
};

inline double minkowski_inner(const LorentzVec& x, const LorentzVec& y) {
    return -x.x0 * y.x0 + x.xs.dot(y.xs);
}

inline double minkowski_square(const LorentzVec& x) { return minkowski_inner(x, x); }

using EuclideanPoint3 = Vec3;

// Unit space-like vector on the upper sheet S^3_{1,+}.
struct DeSitterPoint {
    LorentzVec v;

    explicit DeSitterPoint(const LorentzVec& w, const Tolerances& tol = default_tol());
    static bool is_valid(const LorentzVec& w, const Tolerances& tol = default_tol());
};

// Unit time-like vector on the upper sheet of H^3.
struct HyperbolicPoint {
    LorentzVec v;

    explicit HyperbolicPoint(const LorentzVec& w, const Tolerances& tol = default_tol());
    static bool is_valid(const LorentzVec& w, const Tolerances& tol = default_tol());
};

enum class SeparationClass { TimeLike, SpaceLike, Coincident, DegenerateTangent };
enum class SignFlag { Aligned, AntiAligned };

struct DsSeparation {
    SeparationClass cls;
    double value = 0.0;            // space-like: magnitude of the imaginary distance in [0,pi]
    SignFlag sign_flag = SignFlag::Aligned; // meaningful for time-like pairs only
};

// Canonical lift of a Klein-exterior point onto S^3_{1,+}.
DeSitterPoint hyperboloid_lift(const EuclideanPoint3& A, const Tolerances& tol = default_tol());

EuclideanPoint3 klein_project(const DeSitterPoint& x);
EuclideanPoint3 klein_project_hyperbolic(const HyperbolicPoint& x);

DsSeparation ds_separation(const DeSitterPoint& x, const DeSitterPoint& y,
                           const Tolerances& tol = default_tol());

// --- Lorentz transformations (index 0 is the time coordinate) ---

Mat4 rotation_x3(double angle);            // spatial rotation about the x3 axis
Mat4 rotation_axis(const Vec3& axis, double angle);
Mat4 boost_x0x1(double rapidity);          // boost in the (x0,x1)-plane

// |M^T J M - J|_max, with J = diag(-1,1,1,1).
double lorentz_defect(const Mat4& M);
bool is_time_orientation_preserving_lorentz(const Mat4& M, double tol = 1e-10);

LorentzVec apply(const Mat4& M, const LorentzVec& x);

// Minimum of |P + s (Q - P)|^2 over s in [0,1], closed form.
double segment_min_sq_norm(const Vec3& P, const Vec3& Q);

} // namespace prl
