#include "prl/circles.hpp"

#include <cmath>

namespace prl {

SphericalCircle::SphericalCircle(const Vec3& c, double r) : center(c), radius(r) {
    if (std::abs(c.norm() - 1.0) > 1e-12)
        throw Error("SphericalCircle: center is not a unit vector");
    if (!(r > 0.0 && r < M_PI)) throw Error("SphericalCircle: radius must lie in (0, pi)");
}

CircleConfiguration CircleConfiguration::from_lifts(std::vector<DeSitterPoint> pts,
                                                    std::vector<std::string> labels) {
    CircleConfiguration cfg;
    if (labels.empty())
        for (std::size_t i = 0; i < pts.size(); ++i) labels.push_back("v" + std::to_string(i));
    if (labels.size() != pts.size())
        throw Error("CircleConfiguration: label/point count mismatch");
    cfg.labels = std::move(labels);
    for (const DeSitterPoint& p : pts) cfg.circles.push_back(dual_circle(p));
    cfg.lifts = std::move(pts);
    return cfg;
}

SphericalCircle dual_circle(const DeSitterPoint& x) {
    const Vec3 A = klein_project(x);
    const double n = A.norm();
    return SphericalCircle(A / n, std::acos(1.0 / n));
}

double inversive_distance(const SphericalCircle& c1, const SphericalCircle& c2,
                          Convention convention) {
    const double l = std::acos(std::clamp(c1.center.dot(c2.center), -1.0, 1.0));
    const double val = (std::cos(c1.radius) * std::cos(c2.radius) - std::cos(l)) /
                       (std::sin(c1.radius) * std::sin(c2.radius));
    return convention == Convention::Corrected ? val : -val;
}

double inversive_distance_via_gram(const DeSitterPoint& x, const DeSitterPoint& y) {
    return -minkowski_inner(x.v, y.v);
}

Eigen::MatrixXd gram_matrix(const CircleConfiguration& config) {
    const int n = int(config.size());
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            G(i, j) = G(j, i) = minkowski_inner(config.lifts[i].v, config.lifts[j].v);
    return G;
}

namespace {

int lift_rank(const CircleConfiguration& cfg) {
    Eigen::MatrixXd M(4, cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i) M.col(Eigen::Index(i)) = cfg.lifts[i].v.as_vec4();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    int r = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv[k] > 1e-9 * sv[0]) ++r;
    return r;
}

} // namespace

MobiusVerdict mobius_equivalent(const CircleConfiguration& cfg1, const CircleConfiguration& cfg2,
                                const std::vector<std::vector<int>>& autos, double tol) {
    if (cfg1.size() != cfg2.size())
        throw Error("mobius_equivalent: configurations differ in size");
    if (autos.empty()) throw Error("mobius_equivalent: automorphism list is empty");
    if (lift_rank(cfg1) < 4 || lift_rank(cfg2) < 4)
        throw RankDeficient("mobius_equivalent: lifts do not span R^4_1, Gram test inconclusive");

    const Eigen::MatrixXd G1 = gram_matrix(cfg1);
    const Eigen::MatrixXd G2 = gram_matrix(cfg2);
    const int n = int(cfg1.size());

    MobiusVerdict verdict;
    verdict.best_max_deviation = std::numeric_limits<double>::infinity();
    for (const std::vector<int>& sigma : autos) {
        double worst = 0.0;
        int wi = 0, wj = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double dev = std::abs(G1(i, j) - G2(sigma[i], sigma[j]));
                if (dev > worst) {
                    worst = dev;
                    wi = i;
                    wj = j;
                }
            }
        if (worst < verdict.best_max_deviation) {
            verdict.best_max_deviation = worst;
            verdict.best_permutation = sigma;
            verdict.witness_row = wi;
            verdict.witness_col = wj;
            verdict.witness_deviation = worst;
        }
    }
    verdict.equivalent = verdict.best_max_deviation <= tol;
    return verdict;
}

} // namespace prl
