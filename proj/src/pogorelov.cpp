#include "prl/pogorelov.hpp"

#include <cassert>
#include <cmath>

namespace prl {

PointPairE3 phi(const PointPairDS& pair) {
    const double denom = pair.first.v.x0 + pair.second.v.x0;
    return {2.0 * pair.first.v.xs / denom, 2.0 * pair.second.v.xs / denom};
}

double domain_margin_g(double a, double b) {
    const double d = a * a - b * b;
    return -d * d + 8.0 * (a * a + b * b - 2.0);
}

bool in_phi_image(const PointPairE3& pair) {
    const double a2 = pair.xi.squaredNorm();
    const double b2 = pair.eta.squaredNorm();
    const bool inside = a2 > 1.0 && b2 > 1.0 && a2 - b2 > -4.0 && a2 - b2 < 4.0;
    if (inside) assert(domain_margin_g(std::sqrt(a2), std::sqrt(b2)) > 0.0);
    return inside;
}

namespace {

DeSitterPoint normalize_space_like(const LorentzVec& v, const Tolerances& tol) {
    const double q = minkowski_square(v);
    if (q <= 0.0)
        throw NormalizationFailure("phi_inverse: pre-normalized vector is not space-like");
    const double s = 1.0 / std::sqrt(q);
    return DeSitterPoint(LorentzVec(s * v.x0, s * v.xs), tol);
}

} // namespace

PointPairDS phi_inverse(const PointPairE3& pair, const Tolerances& tol) {
    if (!in_phi_image(pair))
        throw OutOfDomain("phi_inverse: pair is outside the Phi image domain");
    const double a2 = pair.xi.squaredNorm();
    const double b2 = pair.eta.squaredNorm();
    // Inverse of phi: first coordinate (4 - |eta|^2 + |xi|^2)/4 with spatial part xi,
    // then positive rescaling onto <v,v> = 1 (and symmetrically for eta).
    const LorentzVec u((4.0 - b2 + a2) / 4.0, pair.xi);
    const LorentzVec w((4.0 - a2 + b2) / 4.0, pair.eta);
    return {normalize_space_like(u, tol), normalize_space_like(w, tol)};
}

// --- deterministic sampling (splitmix64 core) ---

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

double rng_uniform(std::uint64_t& state, double lo, double hi) {
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

DeSitterPoint sample_de_sitter_point(std::uint64_t& state) {
    // Klein-chart radius in (1.05, 2.5), direction uniform on the sphere.
    const double r = rng_uniform(state, 1.05, 2.5);
    const double z = rng_uniform(state, -1.0, 1.0);
    const double az = rng_uniform(state, 0.0, 2.0 * M_PI);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return hyperboloid_lift(r * Vec3(s * std::cos(az), s * std::sin(az), z));
}

Mat4 sample_lorentz_map(std::uint64_t& state, double max_rapidity) {
    const Vec3 axis1(rng_uniform(state, -1, 1), rng_uniform(state, -1, 1), rng_uniform(state, -1, 1));
    const Vec3 axis2(rng_uniform(state, -1, 1), rng_uniform(state, -1, 1), rng_uniform(state, -1, 1));
    const double a1 = rng_uniform(state, 0.0, 2.0 * M_PI);
    const double rap = rng_uniform(state, -max_rapidity, max_rapidity);
    const double a2 = rng_uniform(state, 0.0, 2.0 * M_PI);
    Mat4 M = rotation_axis(axis1.norm() > 1e-6 ? axis1 : Vec3::UnitZ(), a1) * boost_x0x1(rap) *
             rotation_axis(axis2.norm() > 1e-6 ? axis2 : Vec3::UnitX(), a2);
    return M;
}

double fit_rigid_motion(const std::vector<Vec3>& src, const std::vector<Vec3>& dst,
                        Eigen::Matrix3d* rotation_out, Vec3* translation_out) {
    const std::size_t n = src.size();
    Vec3 cs = Vec3::Zero(), cd = Vec3::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        cs += src[i];
        cd += dst[i];
    }
    cs /= double(n);
    cd /= double(n);
    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < n; ++i) H += (src[i] - cs) * (dst[i] - cd).transpose();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // Best orthogonal map; Euclidean isometries may be orientation-reversing, so no
    // determinant correction is applied.
    const Eigen::Matrix3d R = svd.matrixV() * svd.matrixU().transpose();
    const Vec3 t = cd - R * cs;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, (R * src[i] + t - dst[i]).norm());
    if (rotation_out) *rotation_out = R;
    if (translation_out) *translation_out = t;
    return worst;
}

IsometryTransportReport verify_isometry_transport(const Mat4& alpha, int samples,
                                                  std::uint64_t seed) {
    if (!is_time_orientation_preserving_lorentz(alpha))
        throw Error("verify_isometry_transport: alpha is not a time-orientation-preserving "
                    "Lorentz map");
    std::uint64_t state = seed;
    std::vector<Vec3> ys, yps;
    int attempts = 0;
    while (int(ys.size()) < samples && attempts < 50 * samples) {
        ++attempts;
        DeSitterPoint x = sample_de_sitter_point(state);
        const LorentzVec ax = apply(alpha, x.v);
        if (!DeSitterPoint::is_valid(ax)) continue;
        DeSitterPoint axp(ax);
        const PointPairE3 img{klein_project(x), klein_project(axp)};
        if (!in_phi_image(img)) continue;
        const PointPairE3 out = phi({x, axp});
        ys.push_back(out.xi);
        yps.push_back(out.eta);
    }
    if (int(ys.size()) < 4)
        throw InsufficientSamples("verify_isometry_transport: fewer than 4 admissible samples");
    IsometryTransportReport rep;
    rep.samples_used = int(ys.size());
    rep.max_residual = fit_rigid_motion(ys, yps, &rep.rotation, &rep.translation);
    rep.pass = rep.max_residual <= 1e-8;
    return rep;
}

LengthTransportReport verify_timelike_length_transport(const std::vector<PointPairDS>& base_segments,
                                                       int samples_per_segment,
                                                       std::uint64_t seed) {
    std::uint64_t state = seed;
    LengthTransportReport rep;
    for (const PointPairDS& seg : base_segments) {
        const DsSeparation sep = ds_separation(seg.first, seg.second);
        if (sep.cls != SeparationClass::TimeLike)
            throw Error("verify_timelike_length_transport: base segment is not time-like");
        for (int k = 0; k < samples_per_segment; ++k) {
            const Mat4 M = sample_lorentz_map(state);
            const LorentzVec xp = apply(M, seg.first.v);
            const LorentzVec yp = apply(M, seg.second.v);
            if (!DeSitterPoint::is_valid(xp) || !DeSitterPoint::is_valid(yp)) {
                ++rep.samples_discarded;
                continue;
            }
            const DeSitterPoint xprime(xp), yprime(yp);
            const PointPairE3 argx{klein_project(seg.first), klein_project(xprime)};
            const PointPairE3 argy{klein_project(seg.second), klein_project(yprime)};
            if (!in_phi_image(argx) || !in_phi_image(argy)) {
                ++rep.samples_discarded;
                continue;
            }
            const PointPairE3 outx = phi({seg.first, xprime});
            const PointPairE3 outy = phi({seg.second, yprime});
            const double dev =
                std::abs((outx.xi - outy.xi).norm() - (outx.eta - outy.eta).norm());
            rep.max_deviation = std::max(rep.max_deviation, dev);
            ++rep.samples_used;
        }
    }
    rep.pass = rep.samples_used > 0 && rep.max_deviation <= 1e-10;
    return rep;
}

namespace {

// g(s) = cos(speed*s) u + sin(speed*s) w with <u,w> = 0, <w,w> = 1.
LorentzVec spacelike_geodesic(const LorentzVec& u, const LorentzVec& w, double speed, double s) {
    const double c = std::cos(speed * s), sn = std::sin(speed * s);
    return {c * u.x0 + sn * w.x0, c * u.xs + sn * w.xs};
}

} // namespace

SpeedTransportReport verify_spacelike_speed_transport(std::uint64_t seed, int samples) {
    std::uint64_t state = seed;
    SpeedTransportReport rep;
    const double params[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    while (rep.samples_used < samples && rep.samples_used + rep.samples_discarded < 50 * samples) {
        const DeSitterPoint base = sample_de_sitter_point(state);
        // space-like unit tangent orthogonal to the base point
        LorentzVec w(rng_uniform(state, -1, 1),
                     Vec3(rng_uniform(state, -1, 1), rng_uniform(state, -1, 1),
                          rng_uniform(state, -1, 1)));
        const double proj = minkowski_inner(w, base.v);
        w = {w.x0 - proj * base.v.x0, w.xs - proj * base.v.xs};
        const double q = minkowski_square(w);
        if (q < 0.1) {
            ++rep.samples_discarded;
            continue;
        }
        const double inv = 1.0 / std::sqrt(q);
        w = {inv * w.x0, inv * w.xs};
        const double speed = rng_uniform(state, 0.05, 0.3);
        const Mat4 M = sample_lorentz_map(state);

        std::vector<Vec3> p1, p2;
        bool ok = true;
        for (double s : params) {
            const LorentzVec g1 = spacelike_geodesic(base.v, w, speed, s);
            const LorentzVec g2 = apply(M, g1);
            if (!DeSitterPoint::is_valid(g1) || !DeSitterPoint::is_valid(g2)) {
                ok = false;
                break;
            }
            const DeSitterPoint a(g1), b(g2);
            const PointPairE3 arg{klein_project(a), klein_project(b)};
            if (!in_phi_image(arg)) {
                ok = false;
                break;
            }
            const PointPairE3 out = phi({a, b});
            p1.push_back(out.xi);
            p2.push_back(out.eta);
        }
        if (!ok) {
            ++rep.samples_discarded;
            continue;
        }
        for (const auto& pts : {p1, p2}) {
            Vec3 dir = pts.back() - pts.front();
            if (dir.norm() < 1e-14) continue; // constant curve, image points coincide
            dir.normalize();
            for (const Vec3& p : pts) {
                const Vec3 rel = p - pts.front();
                const double defect = (rel - rel.dot(dir) * dir).norm();
                rep.max_collinearity_defect = std::max(rep.max_collinearity_defect, defect);
            }
        }
        for (int i = 0; i < 4; ++i) {
            const double gap1 = (p1[i + 1] - p1[i]).norm();
            const double gap2 = (p2[i + 1] - p2[i]).norm();
            rep.max_gap_mismatch = std::max(rep.max_gap_mismatch, std::abs(gap1 - gap2));
        }
        ++rep.samples_used;
    }
    rep.pass = rep.samples_used > 0 && rep.max_collinearity_defect <= 1e-10 &&
               rep.max_gap_mismatch <= 1e-10;
    return rep;
}

} // namespace prl
