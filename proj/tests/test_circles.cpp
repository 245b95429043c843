#include "prl/circles.hpp"
#include "prl/pipeline.hpp"
#include "prl/pogorelov.hpp"

#include <doctest.h>

#include <cmath>

using namespace prl;

TEST_SUITE_BEGIN("circles");

TEST_CASE("dual circle of a lifted point") {
    const SphericalCircle c = dual_circle(hyperboloid_lift(Vec3(2, 0, 0)));
    CHECK((c.center - Vec3(1, 0, 0)).norm() <= 1e-15);
    CHECK(c.radius == doctest::Approx(M_PI / 3.0).epsilon(1e-14)); // cos r = 1/2

    // radius shrinks to zero as the point approaches the sphere
    const SphericalCircle tiny = dual_circle(hyperboloid_lift(Vec3(1 + 1e-6, 0, 0)));
    CHECK(tiny.radius < 2e-3);
}

TEST_CASE("dual circle lies on the polar plane u.A = 1") {
    std::uint64_t s = 19;
    for (int k = 0; k < 50; ++k) {
        const DeSitterPoint x = sample_de_sitter_point(s);
        const Vec3 A = klein_project(x);
        const SphericalCircle c = dual_circle(x);
        // parametrize the circle on the sphere
        Vec3 u = c.center.unitOrthogonal();
        const Vec3 v = c.center.cross(u);
        for (int m = 0; m < 16; ++m) {
            const double th = 2.0 * M_PI * m / 16.0;
            const Vec3 p = std::cos(c.radius) * c.center +
                           std::sin(c.radius) * (std::cos(th) * u + std::sin(th) * v);
            CHECK(std::abs(p.norm() - 1.0) <= 1e-12);
            CHECK(std::abs(p.dot(A) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("inversive distance special configurations") {
    const SphericalCircle c1(Vec3(0, 0, 1), M_PI / 4.0);
    SUBCASE("identical circles give -1") {
        CHECK(inversive_distance(c1, c1) == doctest::Approx(-1.0).epsilon(1e-14));
    }
    SUBCASE("externally tangent circles give +1") {
        const SphericalCircle c2(Vec3(0, 1, 0), M_PI / 4.0); // l = pi/2 = r1 + r2
        CHECK(inversive_distance(c1, c2) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("orthogonal circles give 0") {
        // cos l = cos r1 cos r2 with r1 = r2 = pi/4: cos l = 1/2
        const double l = std::acos(0.5);
        const SphericalCircle c2(Vec3(std::sin(l), 0, std::cos(l)), M_PI / 4.0);
        CHECK(inversive_distance(c1, c2) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("paper-verbatim flag returns the negation") {
        const SphericalCircle c2(Vec3(0, 1, 0), M_PI / 4.0);
        CHECK(inversive_distance(c1, c2, Convention::PaperVerbatim) ==
              doctest::Approx(-1.0).epsilon(1e-14));
    }
}

TEST_CASE("worked value 5/3 for opposite lifts") {
    const DeSitterPoint x = hyperboloid_lift(Vec3(2, 0, 0));
    const DeSitterPoint y = hyperboloid_lift(Vec3(-2, 0, 0));
    CHECK(inversive_distance_via_gram(x, y) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(inversive_distance(dual_circle(x), dual_circle(y)) ==
          doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    // equals cosh of the Klein plane distance 2 artanh(1/2) = ln 3
    CHECK(std::cosh(std::log(3.0)) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("duality identity on seeded pairs") {
    std::uint64_t s = 23;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const DeSitterPoint x = sample_de_sitter_point(s);
        const DeSitterPoint y = sample_de_sitter_point(s);
        const double lhs = inversive_distance(dual_circle(x), dual_circle(y));
        worst = std::max(worst, std::abs(lhs - inversive_distance_via_gram(x, y)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("tangency boundary |I| = 1") {
    for (double r1 : {0.3, 0.6, 1.0})
        for (double r2 : {0.2, 0.8}) {
            const auto circle_at = [&](double l, double r) {
                return SphericalCircle(Vec3(std::sin(l), 0, std::cos(l)), r);
            };
            const SphericalCircle a(Vec3(0, 0, 1), r1);
            CHECK(inversive_distance(a, circle_at(r1 + r2, r2)) ==
                  doctest::Approx(1.0).epsilon(1e-10));
            CHECK(inversive_distance(a, circle_at(std::abs(r1 - r2), r2)) ==
                  doctest::Approx(-1.0).epsilon(1e-10));
        }
}

TEST_CASE("small-radius limit matches the Euclidean chord formula") {
    const double r = 1e-3;
    for (double I : {-0.5, 0.0, 0.7, 1.5}) {
        // place two circles of spherical radius r at center distance l
        const double l = std::sqrt(r * r + r * r + 2 * r * r * I);
        const SphericalCircle a(Vec3(0, 0, 1), r);
        const SphericalCircle b(Vec3(std::sin(l), 0, std::cos(l)), r);
        const double got = inversive_distance(a, b);
        const double expected = (l * l - r * r - r * r) / (2 * r * r);
        CHECK(std::abs(got - expected) / std::max(1.0, std::abs(expected)) <= 1e-4);
    }
}

TEST_CASE("gram matrix") {
    std::uint64_t s = 31;
    SUBCASE("single circle") {
        const CircleConfiguration cfg =
            CircleConfiguration::from_lifts({sample_de_sitter_point(s)});
        const Eigen::MatrixXd G = gram_matrix(cfg);
        CHECK(G.rows() == 1);
        CHECK(G(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("invariance under Lorentz maps") {
        std::vector<DeSitterPoint> pts;
        for (int i = 0; i < 6; ++i) pts.push_back(sample_de_sitter_point(s));
        const Mat4 M = rotation_x3(0.4) * boost_x0x1(0.15);
        std::vector<DeSitterPoint> mapped;
        for (const DeSitterPoint& p : pts) mapped.emplace_back(apply(M, p.v));
        const auto c1 = CircleConfiguration::from_lifts(pts);
        const auto c2 = CircleConfiguration::from_lifts(mapped);
        CHECK((gram_matrix(c1) - gram_matrix(c2)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("mobius equivalence verdicts") {
    std::uint64_t s = 57;
    std::vector<DeSitterPoint> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(sample_de_sitter_point(s));
    const CircleConfiguration cfg = CircleConfiguration::from_lifts(pts);
    const std::vector<std::vector<int>> identity_only = {{0, 1, 2, 3, 4, 5}};

    SUBCASE("configuration vs itself") {
        const MobiusVerdict v = mobius_equivalent(cfg, cfg, identity_only);
        CHECK(v.equivalent);
        CHECK(v.best_max_deviation == 0.0);
    }
    SUBCASE("configuration vs boosted copy") {
        std::vector<DeSitterPoint> mapped;
        for (const DeSitterPoint& p : pts) mapped.emplace_back(apply(boost_x0x1(0.1), p.v));
        const MobiusVerdict v =
            mobius_equivalent(cfg, CircleConfiguration::from_lifts(mapped), identity_only);
        CHECK(v.equivalent);
    }
    SUBCASE("counterexample configurations are inequivalent (pipeline path)") {
        const CounterexampleReport rep = run_counterexample(PipelineParams{});
        REQUIRE(rep.pass());
        CHECK(rep.doc["mobius"]["equivalent"] == false);
        CHECK(rep.doc["mobius"]["witness"]["deviation"].get<double>() >= 1e-4);
        // the witness sits on a diagonal pair
        const auto row = rep.doc["mobius"]["witness"]["row"].get<std::string>();
        const auto col = rep.doc["mobius"]["witness"]["col"].get<std::string>();
        CHECK(row != col);
    }
    SUBCASE("rank-deficient configurations are rejected") {
        // all lifts in the x3 = 0 slice span rank 3
        std::vector<DeSitterPoint> flat;
        for (int i = 0; i < 5; ++i) {
            const double az = 2.0 * M_PI * i / 5.0;
            flat.push_back(hyperboloid_lift(1.5 * Vec3(std::cos(az), std::sin(az), 0)));
        }
        const auto c1 = CircleConfiguration::from_lifts(flat);
        CHECK_THROWS_AS(mobius_equivalent(c1, c1, {{0, 1, 2, 3, 4}}), RankDeficient);
    }
}

TEST_CASE("invalid circles are rejected") {
    CHECK_THROWS_AS(SphericalCircle(Vec3(1, 1, 0), 0.3), Error);
    CHECK_THROWS_AS(SphericalCircle(Vec3(0, 0, 1), 0.0), Error);
    CHECK_THROWS_AS(SphericalCircle(Vec3(0, 0, 1), M_PI), Error);
}

TEST_SUITE_END();
