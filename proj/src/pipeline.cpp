#include "prl/pipeline.hpp"

#include "prl/pogorelov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>

namespace prl {

using nlohmann::ordered_json;

std::uint64_t seed_from_env(std::uint64_t fallback) {
    if (const char* s = std::getenv("PRL_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0') return v;
    }
    return fallback;
}

std::vector<std::vector<int>> octahedral_automorphisms() {
    std::vector<std::vector<int>> autos;
    std::array<int, 3> perm = {0, 1, 2};
    std::sort(perm.begin(), perm.end());
    do {
        for (int flips = 0; flips < 8; ++flips) {
            std::vector<int> sigma(6);
            for (int pos = 0; pos < 3; ++pos) {
                const int f = (flips >> pos) & 1;
                sigma[pos] = perm[pos] + 3 * f;
                sigma[pos + 3] = perm[pos] + 3 * (1 - f);
            }
            autos.push_back(std::move(sigma));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return autos;
}

Triangulation octahedron_triangulation() {
    std::vector<std::array<int, 3>> faces(LabeledPolyhedron::faces().begin(),
                                          LabeledPolyhedron::faces().end());
    return Triangulation::from_faces(6, std::move(faces));
}

namespace {

std::string edge_label(int i, int j) {
    return LabeledPolyhedron::labels()[i] + LabeledPolyhedron::labels()[j];
}

ordered_json vec3_json(const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

struct CounterexampleGeometry {
    LabeledPolyhedron Q, Qt, Qm;
    std::vector<DeSitterPoint> Pt, Pm;
};

// Shared by run_counterexample and hyperideal_report; throws on any violated
// stage precondition instead of producing a partial report.
CounterexampleGeometry counterexample_lifts(const PipelineParams& p) {
    CounterexampleGeometry g;
    g.Q = build_schonhardt(p.a, p.h);
    if (!admissibility_check(p.a, p.h).pass())
        throw Error("counterexample_lifts: base polyhedron is not admissible");
    g.Qt = flexed(g.Q, p.t);
    g.Qm = flexed(g.Q, -p.t);
    if (!ball_checks(g.Qt).direct_pass() || !ball_checks(g.Qm).direct_pass())
        throw Error("counterexample_lifts: flexed polyhedron leaves the admissible region");
    for (int i = 0; i < 6; ++i) {
        const PointPairE3 pair{g.Qt.vertices[i], g.Qm.vertices[i]};
        if (!in_phi_image(pair)) throw OutOfDomain("vertex pair outside the Phi image");
        const PointPairDS lifted = phi_inverse(pair);
        g.Pt.push_back(lifted.first);
        g.Pm.push_back(lifted.second);
    }
    return g;
}

Eigen::MatrixXd lift_gram(const std::vector<DeSitterPoint>& pts) {
    const int n = int(pts.size());
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) G(i, j) = G(j, i) = minkowski_inner(pts[i].v, pts[j].v);
    return G;
}

const char* kStages[] = {"admissibility", "flex",     "edge_lengths", "phi_domain",
                         "de_sitter",     "circles",  "packing",      "curvature",
                         "mobius"};

void mark_not_evaluated(ordered_json& doc, int from_stage) {
    for (int s = from_stage; s < int(std::size(kStages)); ++s)
        doc[kStages[s]] = {{"status", "not-evaluated"}};
}

ordered_json admissibility_json(const AdmissibilityVerdict& v, bool with_inequalities) {
    ordered_json j;
    if (with_inequalities) {
        j["ineq1"] = v.ineq1;
        j["ineq2"] = v.ineq2;
        j["ineq3"] = v.ineq3;
        j["ineq1_margin"] = v.ineq1_margin;
        j["ineq2_margin"] = v.ineq2_margin;
        j["ineq3_margin"] = v.ineq3_margin;
    }
    j["vertex_check"] = v.vertex_check;
    j["edge_check"] = v.edge_check;
    j["vertex_margin"] = v.vertex_margin;
    j["edge_margin"] = v.edge_margin;
    return j;
}

} // namespace

CounterexampleReport run_counterexample(const PipelineParams& p) {
    CounterexampleReport rep;
    ordered_json& doc = rep.doc;
    doc["params"] = {{"a", p.a},
                     {"h", p.h},
                     {"t", p.t},
                     {"tol_equal", p.tol_equal},
                     {"tol_exact", p.tol_exact},
                     {"distinct_threshold", p.distinct_threshold},
                     {"convention",
                      p.convention == Convention::Corrected ? "corrected" : "paper-verbatim"}};

    const auto fail = [&](int stage, const std::string& why) {
        doc[kStages[stage]]["status"] = "fail";
        doc[kStages[stage]]["reason"] = why;
        mark_not_evaluated(doc, stage + 1);
        doc["overall_verdict"] = "fail";
        rep.verdict = OverallVerdict::Fail;
        rep.failed_stage = kStages[stage];
    };

    // stage 0: admissibility of Q and of both flexed copies
    const AdmissibilityVerdict base = admissibility_check(p.a, p.h);
    const LabeledPolyhedron Q = build_schonhardt(p.a, p.h);
    const LabeledPolyhedron Qt = flexed(Q, p.t);
    const LabeledPolyhedron Qm = flexed(Q, -p.t);
    const AdmissibilityVerdict plus = ball_checks(Qt);
    const AdmissibilityVerdict minus = ball_checks(Qm);
    doc["admissibility"]["base"] = admissibility_json(base, true);
    doc["admissibility"]["flexed_plus"] = admissibility_json(plus, false);
    doc["admissibility"]["flexed_minus"] = admissibility_json(minus, false);
    if (!base.pass()) {
        fail(0, "base polyhedron fails admissibility");
        return rep;
    }
    if (!plus.direct_pass() || !minus.direct_pass()) {
        fail(0, "flexed polyhedron leaves the admissible region");
        return rep;
    }
    doc["admissibility"]["status"] = "pass";

    // stage 1: infinitesimal flex, cross-checked against the rigidity matrix
    const double residual = first_order_flex_residual(Q);
    const double mismatch = flex_nullspace_mismatch(Q);
    doc["flex"]["residual"] = residual;
    doc["flex"]["nullspace_mismatch"] = mismatch;
    if (residual > 1e-10 || mismatch > 1e-8) {
        fail(1, "flex direction disagrees with the rigidity null space");
        return rep;
    }
    doc["flex"]["status"] = "pass";

    // stage 2: Euclidean edge-length equality of Q_t and Q_{-t}
    const auto lt = edge_lengths(Qt);
    const auto lm = edge_lengths(Qm);
    double max_edge_dev = 0.0;
    ordered_json edge_table = ordered_json::array();
    const auto& edges = LabeledPolyhedron::edges();
    for (int e = 0; e < 12; ++e) {
        max_edge_dev = std::max(max_edge_dev, std::abs(lt[e] - lm[e]));
        edge_table.push_back({{"edge", edge_label(edges[e].first, edges[e].second)},
                              {"length_t", lt[e]},
                              {"length_minus_t", lm[e]}});
    }
    const auto dt = diagonal_lengths(Qt);
    const auto dm = diagonal_lengths(Qm);
    double min_diag_dev = std::numeric_limits<double>::infinity();
    ordered_json diag_table = ordered_json::array();
    for (int d = 0; d < 3; ++d) {
        min_diag_dev = std::min(min_diag_dev, std::abs(dt[d] - dm[d]));
        const auto& [i, j] = LabeledPolyhedron::diagonals()[d];
        diag_table.push_back({{"diagonal", edge_label(i, j)},
                              {"length_t", dt[d]},
                              {"length_minus_t", dm[d]}});
    }
    doc["edge_lengths"]["edges"] = edge_table;
    doc["edge_lengths"]["max_edge_deviation"] = max_edge_dev;
    doc["edge_lengths"]["diagonals"] = diag_table;
    doc["edge_lengths"]["min_diagonal_deviation"] = min_diag_dev;
    if (max_edge_dev > p.tol_exact) {
        fail(2, "flexed copies do not have equal edge lengths");
        return rep;
    }
    doc["edge_lengths"]["status"] = "pass";

    // stage 3: Phi-image membership of every vertex pair
    ordered_json domain_table = ordered_json::array();
    bool all_in_image = true;
    for (int i = 0; i < 6; ++i) {
        const PointPairE3 pair{Qt.vertices[i], Qm.vertices[i]};
        const bool ok = in_phi_image(pair);
        all_in_image = all_in_image && ok;
        domain_table.push_back({{"vertex", LabeledPolyhedron::labels()[i]},
                                {"in_image", ok},
                                {"xi_norm2", pair.xi.squaredNorm()},
                                {"eta_norm2", pair.eta.squaredNorm()}});
    }
    doc["phi_domain"]["vertices"] = domain_table;
    if (!all_in_image) {
        fail(3, "a vertex pair lies outside the Phi image");
        return rep;
    }
    doc["phi_domain"]["status"] = "pass";

    // stage 4: de Sitter polyhedra P_t, P_{-t}, edge time-likeness, Gram matrices
    std::vector<DeSitterPoint> Pt, Pm;
    for (int i = 0; i < 6; ++i) {
        const PointPairDS lifted = phi_inverse({Qt.vertices[i], Qm.vertices[i]});
        Pt.push_back(lifted.first);
        Pm.push_back(lifted.second);
    }
    ordered_json separations = ordered_json::array();
    bool edges_timelike = true;
    for (const auto& [i, j] : edges) {
        for (const auto* poly : {&Pt, &Pm}) {
            const DsSeparation sep = ds_separation((*poly)[i], (*poly)[j]);
            const bool ok = sep.cls == SeparationClass::TimeLike &&
                            sep.sign_flag == SignFlag::AntiAligned;
            edges_timelike = edges_timelike && ok;
            separations.push_back(
                {{"edge", edge_label(i, j)},
                 {"polyhedron", poly == &Pt ? "P_t" : "P_minus_t"},
                 {"class", sep.cls == SeparationClass::TimeLike ? "time-like" : "other"},
                 {"sign", sep.sign_flag == SignFlag::AntiAligned ? "anti-aligned" : "aligned"},
                 {"value", sep.value}});
        }
    }
    const Eigen::MatrixXd Gt = lift_gram(Pt);
    const Eigen::MatrixXd Gm = lift_gram(Pm);
    double max_edge_gram = 0.0;
    for (const auto& [i, j] : edges)
        max_edge_gram = std::max(max_edge_gram, std::abs(Gt(i, j) - Gm(i, j)));
    double min_diag_gram = std::numeric_limits<double>::infinity();
    for (const auto& [i, j] : LabeledPolyhedron::diagonals())
        min_diag_gram = std::min(min_diag_gram, std::abs(Gt(i, j) - Gm(i, j)));
    const auto gram_json = [](const Eigen::MatrixXd& G) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < G.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j < G.cols(); ++j) row.push_back(G(i, j));
            rows.push_back(row);
        }
        return rows;
    };
    doc["de_sitter"]["edge_separations"] = separations;
    doc["de_sitter"]["gram_t"] = gram_json(Gt);
    doc["de_sitter"]["gram_minus_t"] = gram_json(Gm);
    doc["de_sitter"]["max_edge_gram_deviation"] = max_edge_gram;
    doc["de_sitter"]["min_diagonal_gram_deviation"] = min_diag_gram;
    if (!edges_timelike) {
        fail(4, "an edge pair is not anti-aligned time-like");
        return rep;
    }
    if (max_edge_gram > p.tol_equal) {
        fail(4, "de Sitter edge Gram entries differ between P_t and P_{-t}");
        return rep;
    }
    doc["de_sitter"]["status"] = "pass";

    // stage 5: dual circle configurations
    const CircleConfiguration cfg_t = CircleConfiguration::from_lifts(
        Pt, {LabeledPolyhedron::labels().begin(), LabeledPolyhedron::labels().end()});
    const CircleConfiguration cfg_m = CircleConfiguration::from_lifts(
        Pm, {LabeledPolyhedron::labels().begin(), LabeledPolyhedron::labels().end()});
    ordered_json circle_table = ordered_json::array();
    for (int i = 0; i < 6; ++i)
        circle_table.push_back({{"vertex", LabeledPolyhedron::labels()[i]},
                                {"center_t", vec3_json(cfg_t.circles[i].center)},
                                {"radius_t", cfg_t.circles[i].radius},
                                {"center_minus_t", vec3_json(cfg_m.circles[i].center)},
                                {"radius_minus_t", cfg_m.circles[i].radius}});
    doc["circles"]["table"] = circle_table;
    doc["circles"]["status"] = "pass";

    // stage 6: packings from the circles, inversive-distance equality, face validity
    const Triangulation tri = octahedron_triangulation();
    PackingResult pack_t, pack_m;
    try {
        pack_t = packing_from_circles(tri, cfg_t);
        pack_m = packing_from_circles(tri, cfg_m);
    } catch (const Error& e) {
        fail(6, e.what());
        return rep;
    }
    const double sign = p.convention == Convention::Corrected ? 1.0 : -1.0;
    ordered_json inversive_table = ordered_json::array();
    double max_I_dev = 0.0;
    for (std::size_t e = 0; e < tri.edges.size(); ++e) {
        max_I_dev =
            std::max(max_I_dev, std::abs(pack_t.packing.inversive[e] - pack_m.packing.inversive[e]));
        inversive_table.push_back({{"edge", edge_label(tri.edges[e].first, tri.edges[e].second)},
                                   {"value_t", sign * pack_t.packing.inversive[e]},
                                   {"value_minus_t", sign * pack_m.packing.inversive[e]}});
    }
    double max_bottom_r_dev = 0.0, min_top_r_dev = std::numeric_limits<double>::infinity();
    ordered_json radius_table = ordered_json::array();
    for (int v = 0; v < 6; ++v) {
        const double dev = std::abs(pack_t.packing.radii[v] - pack_m.packing.radii[v]);
        if (v < 3)
            max_bottom_r_dev = std::max(max_bottom_r_dev, dev);
        else
            min_top_r_dev = std::min(min_top_r_dev, dev);
        radius_table.push_back({{"vertex", LabeledPolyhedron::labels()[v]},
                                {"radius_t", pack_t.packing.radii[v]},
                                {"radius_minus_t", pack_m.packing.radii[v]}});
    }
    const MetricVerdict faces_t = validate_polyhedral(tri, pack_t.metric.lengths, true);
    const MetricVerdict faces_m = validate_polyhedral(tri, pack_m.metric.lengths, true);
    doc["packing"]["inversive"] = inversive_table;
    doc["packing"]["max_inversive_deviation"] = max_I_dev;
    doc["packing"]["radii"] = radius_table;
    doc["packing"]["max_bottom_radius_deviation"] = max_bottom_r_dev;
    doc["packing"]["min_top_radius_deviation"] = min_top_r_dev;
    doc["packing"]["faces_valid_t"] = faces_t.valid;
    doc["packing"]["faces_valid_minus_t"] = faces_m.valid;
    if (!faces_t.valid || !faces_m.valid) {
        fail(6, "a face violates the spherical polyhedral-metric conditions");
        return rep;
    }
    if (max_I_dev > p.tol_equal) {
        fail(6, "inversive distance vectors differ between the packings");
        return rep;
    }
    doc["packing"]["status"] = "pass";

    // stage 7: discrete curvature, expected identically zero
    const std::vector<double> kt = discrete_curvature(tri, pack_t.metric.lengths);
    const std::vector<double> km = discrete_curvature(tri, pack_m.metric.lengths);
    double max_curv = 0.0;
    for (double k : kt) max_curv = std::max(max_curv, std::abs(k));
    for (double k : km) max_curv = std::max(max_curv, std::abs(k));
    doc["curvature"]["values_t"] = kt;
    doc["curvature"]["values_minus_t"] = km;
    doc["curvature"]["max_abs"] = max_curv;
    if (max_curv > 1e-9) {
        fail(7, "discrete curvature is not identically zero");
        return rep;
    }
    doc["curvature"]["status"] = "pass";

    // stage 8: Mobius equivalence under the 48 octahedral relabelings
    MobiusVerdict mv;
    try {
        mv = mobius_equivalent(cfg_t, cfg_m, octahedral_automorphisms(), p.tol_equal);
    } catch (const RankDeficient& e) {
        fail(8, e.what());
        return rep;
    }
    doc["mobius"]["equivalent"] = mv.equivalent;
    doc["mobius"]["best_max_deviation"] = mv.best_max_deviation;
    doc["mobius"]["witness"] = {
        {"row", LabeledPolyhedron::labels()[mv.witness_row]},
        {"col", LabeledPolyhedron::labels()[mv.witness_col]},
        {"deviation", mv.witness_deviation}};
    doc["mobius"]["status"] = "pass";

    const bool distinct = !mv.equivalent && mv.witness_deviation >= p.distinct_threshold &&
                          min_diag_gram >= p.distinct_threshold &&
                          min_top_r_dev >= p.distinct_threshold;
    if (mv.equivalent || min_diag_gram < p.tol_equal) {
        doc["overall_verdict"] = "not-a-counterexample";
        rep.verdict = OverallVerdict::NotACounterexample;
    } else if (distinct && max_bottom_r_dev <= p.tol_exact) {
        doc["overall_verdict"] = "pass";
        rep.verdict = OverallVerdict::Pass;
    } else {
        doc["overall_verdict"] = "fail";
        rep.verdict = OverallVerdict::Fail;
        rep.failed_stage = "mobius";
    }
    return rep;
}

nlohmann::ordered_json hyperideal_report(const PipelineParams& p) {
    const CounterexampleGeometry g = counterexample_lifts(p);
    ordered_json doc;
    doc["params"] = {{"a", p.a}, {"h", p.h}, {"t", p.t}};
    ordered_json edge_table = ordered_json::array();
    double max_edge = 0.0;
    for (const auto& [i, j] : LabeledPolyhedron::edges()) {
        const double lt = std::acosh(-minkowski_inner(g.Pt[i].v, g.Pt[j].v));
        const double lm = std::acosh(-minkowski_inner(g.Pm[i].v, g.Pm[j].v));
        max_edge = std::max(max_edge, std::abs(lt - lm));
        edge_table.push_back(
            {{"edge", edge_label(i, j)}, {"length_t", lt}, {"length_minus_t", lm}});
    }
    ordered_json diag_table = ordered_json::array();
    double max_diag = 0.0;
    for (const auto& [i, j] : LabeledPolyhedron::diagonals()) {
        const double lt = std::acosh(-minkowski_inner(g.Pt[i].v, g.Pt[j].v));
        const double lm = std::acosh(-minkowski_inner(g.Pm[i].v, g.Pm[j].v));
        max_diag = std::max(max_diag, std::abs(lt - lm));
        diag_table.push_back(
            {{"diagonal", edge_label(i, j)}, {"length_t", lt}, {"length_minus_t", lm}});
    }
    doc["edges"] = edge_table;
    doc["max_edge_discrepancy"] = max_edge;
    doc["diagonals"] = diag_table;
    doc["max_diagonal_discrepancy"] = max_diag;
    return doc;
}

nlohmann::ordered_json sweep(const std::vector<double>& a_values,
                             const std::vector<double>& h_values,
                             const std::vector<double>& t_values) {
    ordered_json rows = ordered_json::array();
    for (double a : a_values)
        for (double h : h_values)
            for (double t : t_values) {
                ordered_json row = {{"a", a}, {"h", h}, {"t", t}};
                try {
                    PipelineParams p;
                    p.a = a;
                    p.h = h;
                    p.t = t;
                    const CounterexampleReport rep = run_counterexample(p);
                    row["verdict"] = rep.doc["overall_verdict"];
                    if (!rep.failed_stage.empty()) row["failed_stage"] = rep.failed_stage;
                    const auto& packing = rep.doc["packing"];
                    if (packing.contains("max_inversive_deviation"))
                        row["max_inversive_deviation"] = packing["max_inversive_deviation"];
                    const auto& ds = rep.doc["de_sitter"];
                    if (ds.contains("min_diagonal_gram_deviation"))
                        row["min_diagonal_gram_deviation"] = ds["min_diagonal_gram_deviation"];
                } catch (const std::exception& e) {
                    row["verdict"] = "error";
                    row["error"] = e.what();
                }
                rows.push_back(std::move(row));
            }
    ordered_json doc;
    doc["rows"] = rows;
    return doc;
}

namespace {

std::array<double, 3> triangle_angles_euclidean(double l1, double l2, double l3) {
    const auto ang = [](double a, double b, double c) {
        return std::acos(std::clamp((b * b + c * c - a * a) / (2.0 * b * c), -1.0, 1.0));
    };
    return {ang(l1, l2, l3), ang(l2, l3, l1), ang(l3, l1, l2)};
}

} // namespace

nlohmann::ordered_json packing_eval(const PackingInput& input) {
    ordered_json doc;
    const bool spherical = input.geometry == Geometry::Spherical;
    doc["geometry"] = spherical ? "spherical" : "euclidean";
    doc["vertices"] = input.tri.vertex_count;
    doc["edges"] = input.tri.edges.size();
    doc["faces"] = input.tri.faces.size();
    doc["euler_characteristic"] = input.tri.euler_characteristic;

    std::vector<double> lengths(input.tri.edges.size());
    for (std::size_t e = 0; e < input.tri.edges.size(); ++e) {
        const auto [u, v] = input.tri.edges[e];
        const double ru = input.packing.radii[u], rv = input.packing.radii[v];
        const double I = input.packing.inversive[e];
        try {
            lengths[e] = spherical ? edge_length_spherical(ru, rv, I)
                                   : edge_length_euclidean(ru, rv, I);
        } catch (const Infeasible& ex) {
            doc["status"] = "infeasible";
            doc["reason"] = ex.what();
            doc["edge"] = {u, v};
            return doc;
        }
    }
    ordered_json length_table = ordered_json::array();
    for (std::size_t e = 0; e < input.tri.edges.size(); ++e)
        length_table.push_back({{"edge", {input.tri.edges[e].first, input.tri.edges[e].second}},
                                {"length", lengths[e]}});
    doc["lengths"] = length_table;

    const MetricVerdict verdict = validate_polyhedral(input.tri, lengths, spherical);
    doc["metric_valid"] = verdict.valid;
    ordered_json violations = ordered_json::array();
    for (const FaceViolation& v : verdict.violations)
        violations.push_back({{"face", v.face}, {"reason", v.reason}, {"margin", v.margin}});
    doc["violations"] = violations;
    if (!verdict.valid) {
        doc["status"] = "invalid-metric";
        return doc;
    }

    std::vector<double> k(input.tri.vertex_count, 2.0 * M_PI);
    double angle_excess_sum = 0.0;
    for (const auto& face : input.tri.faces) {
        const double l0 = lengths[input.tri.edge_index(face[1], face[2])];
        const double l1 = lengths[input.tri.edge_index(face[2], face[0])];
        const double l2 = lengths[input.tri.edge_index(face[0], face[1])];
        const auto angles = spherical ? triangle_angles_spherical(l0, l1, l2)
                                      : triangle_angles_euclidean(l0, l1, l2);
        for (int i = 0; i < 3; ++i) k[face[i]] -= angles[i];
        angle_excess_sum += angles[0] + angles[1] + angles[2] - M_PI;
    }
    doc["curvature"] = k;
    double ksum = 0.0;
    for (double v : k) ksum += v;
    doc["curvature_sum"] = ksum;
    doc["gauss_bonnet_residual"] =
        ksum + angle_excess_sum - 2.0 * M_PI * input.tri.euler_characteristic;
    doc["status"] = "ok";
    return doc;
}

// --- prl verify: seeded property suites for every module ---

namespace {

struct Verify {
    std::ostream& out;
    bool ok = true;

    void report(const std::string& name, bool pass, double worst) {
        out << (pass ? "PASS " : "FAIL ") << name << "  worst=" << worst << "\n";
        ok = ok && pass;
    }
};

LorentzVec random_lorentz_vec(std::uint64_t& s) {
    return {rng_uniform(s, -2, 2),
            Vec3(rng_uniform(s, -2, 2), rng_uniform(s, -2, 2), rng_uniform(s, -2, 2))};
}

} // namespace

bool run_verify(std::uint64_t seed, std::ostream& out) {
    Verify v{out};
    std::uint64_t s = seed;

    { // bilinearity and symmetry
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const LorentzVec x = random_lorentz_vec(s), y = random_lorentz_vec(s),
                             z = random_lorentz_vec(s);
            const double a = rng_uniform(s, -2, 2);
            const LorentzVec combo(a * x.x0 + y.x0, a * x.xs + y.xs);
            worst = std::max(worst, std::abs(minkowski_inner(combo, z) -
                                             (a * minkowski_inner(x, z) + minkowski_inner(y, z))));
            worst = std::max(worst, std::abs(minkowski_inner(x, y) - minkowski_inner(y, x)));
        }
        v.report("lorentz.bilinearity_symmetry", worst <= 1e-13, worst);
    }
    { // lift membership and Klein round trip
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const DeSitterPoint x = sample_de_sitter_point(s);
            worst = std::max(worst, std::abs(minkowski_square(x.v) - 1.0));
            const DeSitterPoint back = hyperboloid_lift(klein_project(x));
            worst = std::max(worst, std::abs(back.v.x0 - x.v.x0));
            worst = std::max(worst, (back.v.xs - x.v.xs).cwiseAbs().maxCoeff());
        }
        v.report("lorentz.lift_roundtrip", worst <= 1e-12, worst);
    }
    { // chord test vs separation classification
        bool pass = true;
        int used = 0;
        while (used < 200) {
            const DeSitterPoint x = sample_de_sitter_point(s);
            const DeSitterPoint y = sample_de_sitter_point(s);
            const Vec3 A = klein_project(x), B = klein_project(y);
            // distance from the origin to the full chord line, squared
            const Vec3 d = B - A;
            const double m = (A - (A.dot(d) / d.squaredNorm()) * d).squaredNorm();
            if (std::abs(m - 1.0) < 1e-6) continue; // tangency band excluded
            ++used;
            const DsSeparation sep = ds_separation(x, y);
            const bool crosses = m < 1.0;
            pass = pass && (crosses == (sep.cls == SeparationClass::TimeLike));
            pass = pass && sep.value >= 0.0 &&
                   (sep.cls != SeparationClass::SpaceLike || sep.value <= M_PI);
        }
        v.report("lorentz.chord_classification", pass, pass ? 0.0 : 1.0);
    }
    { // Pogorelov round trips and diagonal property
        double worst_rt = 0.0, worst_diag = 0.0;
        for (int k = 0; k < 1000; ++k) {
            DeSitterPoint x = sample_de_sitter_point(s);
            DeSitterPoint y = sample_de_sitter_point(s);
            const PointPairE3 img = phi({x, y});
            if (in_phi_image(img)) {
                const PointPairDS back = phi_inverse(img);
                worst_rt = std::max({worst_rt, std::abs(back.first.v.x0 - x.v.x0),
                                     (back.first.v.xs - x.v.xs).cwiseAbs().maxCoeff(),
                                     std::abs(back.second.v.x0 - y.v.x0),
                                     (back.second.v.xs - y.v.xs).cwiseAbs().maxCoeff()});
            }
            const PointPairE3 e3{klein_project(x), klein_project(y)};
            if (in_phi_image(e3)) {
                const PointPairDS lifted = phi_inverse(e3);
                const PointPairE3 fwd = phi(lifted);
                worst_rt = std::max({worst_rt, (fwd.xi - e3.xi).cwiseAbs().maxCoeff(),
                                     (fwd.eta - e3.eta).cwiseAbs().maxCoeff()});
            }
            const PointPairE3 diag = phi({x, x});
            const Vec3 proj = klein_project(x);
            worst_diag = std::max({worst_diag, (diag.xi - proj).cwiseAbs().maxCoeff(),
                                   (diag.eta - proj).cwiseAbs().maxCoeff()});
        }
        v.report("pogorelov.roundtrip", worst_rt <= 1e-12, worst_rt);
        v.report("pogorelov.diagonal", worst_diag <= 1e-14, worst_diag);
    }
    { // isometry transport for the three stated families
        double worst = 0.0;
        for (const Mat4& alpha :
             {Mat4(Mat4::Identity()), rotation_x3(0.3), boost_x0x1(0.2)}) {
            const IsometryTransportReport rep = verify_isometry_transport(alpha, 50, s);
            worst = std::max(worst, rep.max_residual);
        }
        v.report("pogorelov.isometry_transport", worst <= 1e-8, worst);
    }
    {
        const std::vector<PointPairDS> base = {
            {hyperboloid_lift(Vec3(2, 0, 0)), hyperboloid_lift(Vec3(-2, 0, 0))},
            {hyperboloid_lift(Vec3(1.4, 0.3, 0)), hyperboloid_lift(Vec3(-1.2, -0.5, 0.2))}};
        const LengthTransportReport rep = verify_timelike_length_transport(base, 100, s);
        v.report("pogorelov.timelike_length_transport", rep.pass, rep.max_deviation);
    }
    {
        const SpeedTransportReport rep = verify_spacelike_speed_transport(s, 100);
        v.report("pogorelov.spacelike_speed_transport", rep.pass,
                 std::max(rep.max_collinearity_defect, rep.max_gap_mismatch));
    }
    { // duality identity
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const DeSitterPoint x = sample_de_sitter_point(s);
            const DeSitterPoint y = sample_de_sitter_point(s);
            const double via_circles = inversive_distance(dual_circle(x), dual_circle(y));
            worst = std::max(worst, std::abs(via_circles + minkowski_inner(x.v, y.v)));
        }
        v.report("circles.duality_identity", worst <= 1e-12, worst);
    }
    { // Gram invariance under Lorentz maps
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            std::vector<DeSitterPoint> pts;
            for (int i = 0; i < 6; ++i) pts.push_back(sample_de_sitter_point(s));
            const Mat4 M = sample_lorentz_map(s, 0.2);
            std::vector<DeSitterPoint> mapped;
            bool valid = true;
            for (const DeSitterPoint& p : pts) {
                const LorentzVec w = apply(M, p.v);
                if (!DeSitterPoint::is_valid(w)) {
                    valid = false;
                    break;
                }
                mapped.emplace_back(w);
            }
            if (!valid) continue;
            const CircleConfiguration c1 = CircleConfiguration::from_lifts(pts);
            const CircleConfiguration c2 = CircleConfiguration::from_lifts(mapped);
            worst = std::max(worst,
                             (gram_matrix(c1) - gram_matrix(c2)).cwiseAbs().maxCoeff());
        }
        v.report("circles.gram_invariance", worst <= 1e-10, worst);
    }
    { // Gauss-Bonnet on the reference metrics and the counterexample packings
        double worst = 0.0;
        const auto gb = [](const Triangulation& tri, const std::vector<double>& lengths) {
            const std::vector<double> k = discrete_curvature(tri, lengths);
            double total = 0.0;
            for (double x : k) total += x;
            for (const auto& face : tri.faces) {
                const auto ang = triangle_angles_spherical(
                    lengths[tri.edge_index(face[1], face[2])],
                    lengths[tri.edge_index(face[2], face[0])],
                    lengths[tri.edge_index(face[0], face[1])]);
                total += ang[0] + ang[1] + ang[2] - M_PI;
            }
            return std::abs(total - 2.0 * M_PI * tri.euler_characteristic);
        };
        const Triangulation oct = octahedron_triangulation();
        worst = std::max(worst, gb(oct, std::vector<double>(12, M_PI / 2.0)));
        const Triangulation tet =
            Triangulation::from_faces(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
        worst = std::max(worst, gb(tet, std::vector<double>(6, std::acos(-1.0 / 3.0))));
        const CounterexampleGeometry g = counterexample_lifts(PipelineParams{});
        for (const auto& pts : {g.Pt, g.Pm}) {
            const PackingResult pr =
                packing_from_circles(oct, CircleConfiguration::from_lifts(pts));
            worst = std::max(worst, gb(oct, pr.metric.lengths));
        }
        v.report("packing.gauss_bonnet", worst <= 1e-9, worst);
    }
    { // length-from-(r, I) round trip over the radius grid
        double worst = 0.0;
        for (double ru = 0.1; ru <= 1.4; ru += 0.1)
            for (double rv = 0.1; rv <= 1.4; rv += 0.1)
                for (double l = 0.05; l < M_PI - 0.05; l += 0.15) {
                    const double I = (std::cos(ru) * std::cos(rv) - std::cos(l)) /
                                     (std::sin(ru) * std::sin(rv));
                    if (I < -1.0) continue;
                    worst = std::max(worst,
                                     std::abs(edge_length_spherical(ru, rv, I) - l));
                }
        v.report("packing.length_roundtrip", worst <= 1e-12, worst);
    }
    { // Euclidean limit at scale 1e-3
        double worst = 0.0;
        const double scale = 1e-3;
        for (double ru : {0.3, 0.7, 1.1})
            for (double rv : {0.4, 0.9})
                for (double I : {-0.5, 0.0, 1.0, 2.5}) {
                    const double sph = edge_length_spherical(scale * ru, scale * rv, I) / scale;
                    const double euc = edge_length_euclidean(ru, rv, I);
                    worst = std::max(worst, std::abs(sph - euc) / euc);
                }
        v.report("packing.euclidean_limit", worst <= 1e-4, worst);
    }
    { // evenness of flexed edge lengths and linear diagonal scaling
        const LabeledPolyhedron Q = build_schonhardt(1.55, 0.5);
        double worst = 0.0;
        for (double t : {0.005, 0.01, 0.02, 0.05}) {
            const auto lt = edge_lengths(flexed(Q, t));
            const auto lm = edge_lengths(flexed(Q, -t));
            for (int e = 0; e < 12; ++e) worst = std::max(worst, std::abs(lt[e] - lm[e]));
        }
        v.report("flexahedron.evenness", worst <= 1e-12, worst);
        const auto diag_dev = [&](double t) {
            const auto dt = diagonal_lengths(flexed(Q, t));
            const auto dm = diagonal_lengths(flexed(Q, -t));
            double d = 0.0;
            for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(dt[i] - dm[i]));
            return d;
        };
        const double ratio = diag_dev(0.01) / diag_dev(0.005);
        v.report("flexahedron.diagonal_scaling", std::abs(ratio - 2.0) <= 0.02, ratio);
    }
    return v.ok;
}

} // namespace prl
