#include "prl/packing.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace prl {

Triangulation Triangulation::from_faces(int vertex_count, std::vector<std::array<int, 3>> faces) {
    Triangulation tri;
    tri.vertex_count = vertex_count;
    tri.faces = std::move(faces);
    tri.star_faces_.resize(vertex_count);

    std::map<std::pair<int, int>, int> edge_face_count;
    for (std::size_t f = 0; f < tri.faces.size(); ++f) {
        const auto& face = tri.faces[f];
        std::set<int> distinct(face.begin(), face.end());
        if (distinct.size() != 3)
            throw InvalidTriangulation("face " + std::to_string(f) + " repeats a vertex");
        for (int v : face) {
            if (v < 0 || v >= vertex_count)
                throw InvalidTriangulation("face " + std::to_string(f) +
                                           " references vertex " + std::to_string(v));
            tri.star_faces_[v].push_back(int(f));
        }
        for (int k = 0; k < 3; ++k) {
            const int u = face[k], v = face[(k + 1) % 3];
            ++edge_face_count[{std::min(u, v), std::max(u, v)}];
        }
    }
    for (const auto& [e, count] : edge_face_count)
        if (count != 2)
            throw InvalidTriangulation("edge (" + std::to_string(e.first) + "," +
                                       std::to_string(e.second) + ") lies on " +
                                       std::to_string(count) + " faces, expected 2");
    for (const auto& [e, count] : edge_face_count) {
        tri.edge_lookup_[e] = int(tri.edges.size());
        tri.edges.push_back(e);
    }

    // vertex links must be single cycles
    for (int v = 0; v < vertex_count; ++v) {
        if (tri.star_faces_[v].empty())
            throw InvalidTriangulation("vertex " + std::to_string(v) + " is isolated");
        std::map<int, int> link_degree;
        std::map<int, std::vector<int>> link_adj;
        for (int f : tri.star_faces_[v]) {
            std::array<int, 2> other{};
            int k = 0;
            for (int w : tri.faces[f])
                if (w != v) other[k++] = w;
            link_adj[other[0]].push_back(other[1]);
            link_adj[other[1]].push_back(other[0]);
        }
        for (const auto& [w, nbrs] : link_adj)
            if (nbrs.size() != 2)
                throw InvalidTriangulation("link of vertex " + std::to_string(v) +
                                           " is not a cycle at vertex " + std::to_string(w));
        // connectivity of the link
        std::set<int> seen;
        std::vector<int> stack = {link_adj.begin()->first};
        while (!stack.empty()) {
            const int w = stack.back();
            stack.pop_back();
            if (!seen.insert(w).second) continue;
            for (int u : link_adj[w]) stack.push_back(u);
        }
        if (seen.size() != link_adj.size())
            throw InvalidTriangulation("link of vertex " + std::to_string(v) +
                                       " is disconnected");
    }

    tri.euler_characteristic =
        vertex_count - int(tri.edges.size()) + int(tri.faces.size());
    return tri;
}

int Triangulation::edge_index(int u, int v) const {
    const auto it = edge_lookup_.find({std::min(u, v), std::max(u, v)});
    if (it == edge_lookup_.end())
        throw InvalidTriangulation("no edge (" + std::to_string(u) + "," + std::to_string(v) +
                                   ")");
    return it->second;
}

double edge_length_spherical(double r_u, double r_v, double I) {
    if (!(r_u > 0.0 && r_u < M_PI / 2.0 && r_v > 0.0 && r_v < M_PI / 2.0))
        throw Error("edge_length_spherical: radii must lie in (0, pi/2)");
    const double arg = std::cos(r_u) * std::cos(r_v) - I * std::sin(r_u) * std::sin(r_v);
    if (std::abs(arg) >= 1.0)
        throw Infeasible("edge_length_spherical: cos(l) = " + std::to_string(arg) +
                         " has no spherical realization");
    return std::acos(arg);
}

double edge_length_euclidean(double r_u, double r_v, double I) {
    return std::sqrt(r_u * r_u + r_v * r_v + 2.0 * r_u * r_v * I);
}

MetricVerdict validate_polyhedral(const Triangulation& tri, const std::vector<double>& lengths,
                                  bool spherical) {
    MetricVerdict verdict;
    for (std::size_t f = 0; f < tri.faces.size(); ++f) {
        const auto& face = tri.faces[f];
        const double l0 = lengths[tri.edge_index(face[0], face[1])];
        const double l1 = lengths[tri.edge_index(face[1], face[2])];
        const double l2 = lengths[tri.edge_index(face[2], face[0])];
        const double sides[3] = {l0, l1, l2};
        for (int k = 0; k < 3; ++k) {
            const double margin = sides[k] + sides[(k + 1) % 3] - sides[(k + 2) % 3];
            if (margin <= 0.0)
                verdict.violations.push_back(
                    {int(f), "triangle inequality", margin});
        }
        if (spherical) {
            const double perimeter = l0 + l1 + l2;
            if (perimeter >= 2.0 * M_PI)
                verdict.violations.push_back({int(f), "perimeter bound", 2.0 * M_PI - perimeter});
        }
    }
    verdict.valid = verdict.violations.empty();
    return verdict;
}

std::array<double, 3> triangle_angles_spherical(double l1, double l2, double l3,
                                                const Tolerances& tol) {
    const double s1 = std::sin(l1), s2 = std::sin(l2), s3 = std::sin(l3);
    if (s2 * s3 <= tol.eps_model || s3 * s1 <= tol.eps_model || s1 * s2 <= tol.eps_model)
        throw DegenerateTriangle("triangle_angles_spherical: vanishing sine product");
    const auto ang = [](double a, double b, double c) {
        return std::acos(
            std::clamp((std::cos(a) - std::cos(b) * std::cos(c)) / (std::sin(b) * std::sin(c)),
                       -1.0, 1.0));
    };
    return {ang(l1, l2, l3), ang(l2, l3, l1), ang(l3, l1, l2)};
}

std::vector<double> discrete_curvature(const Triangulation& tri,
                                       const std::vector<double>& lengths) {
    std::vector<double> k(tri.vertex_count, 2.0 * M_PI);
    for (const auto& face : tri.faces) {
        const double l0 = lengths[tri.edge_index(face[1], face[2])]; // opposite face[0]
        const double l1 = lengths[tri.edge_index(face[2], face[0])];
        const double l2 = lengths[tri.edge_index(face[0], face[1])];
        const auto angles = triangle_angles_spherical(l0, l1, l2);
        for (int i = 0; i < 3; ++i) k[face[i]] -= angles[i];
    }
    return k;
}

PackingResult packing_from_circles(const Triangulation& tri, const CircleConfiguration& config) {
    if (int(config.size()) != tri.vertex_count)
        throw Error("packing_from_circles: one circle per vertex required");
    PackingResult out;
    out.packing.radii.reserve(config.size());
    for (const SphericalCircle& c : config.circles) {
        if (c.radius >= M_PI / 2.0)
            throw Error("packing_from_circles: radii must be below pi/2");
        out.packing.radii.push_back(c.radius);
    }
    out.metric.geometry = Geometry::Spherical;
    out.packing.inversive.resize(tri.edges.size());
    out.metric.lengths.resize(tri.edges.size());
    for (std::size_t e = 0; e < tri.edges.size(); ++e) {
        const auto [u, v] = tri.edges[e];
        out.packing.inversive[e] = inversive_distance(config.circles[u], config.circles[v]);
        out.metric.lengths[e] = std::acos(
            std::clamp(config.circles[u].center.dot(config.circles[v].center), -1.0, 1.0));
        // consistency: the metric length must reproduce from the radii and I
        const double rederived = edge_length_spherical(out.packing.radii[u],
                                                       out.packing.radii[v],
                                                       out.packing.inversive[e]);
        if (std::abs(rederived - out.metric.lengths[e]) > 1e-10)
            throw Error("packing_from_circles: inversive-distance/length inconsistency on edge " +
                        std::to_string(e));
    }
    return out;
}

PackingInput parse_packing_input(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidTriangulation(std::string("packing input is not valid JSON: ") + e.what());
    }
    if (!doc.contains("faces") || !doc.contains("radii"))
        throw InvalidTriangulation("packing input needs \"faces\" and \"radii\"");

    std::vector<std::array<int, 3>> faces;
    for (const auto& f : doc["faces"]) {
        if (!f.is_array() || f.size() != 3)
            throw InvalidTriangulation("each face must be a triple of vertex indices");
        faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
    }
    PackingInput input;
    input.packing.radii = doc["radii"].get<std::vector<double>>();
    input.tri = Triangulation::from_faces(int(input.packing.radii.size()), std::move(faces));

    const std::string geom = doc.value("geometry", "spherical");
    if (geom == "spherical")
        input.geometry = Geometry::Spherical;
    else if (geom == "euclidean")
        input.geometry = Geometry::Euclidean;
    else
        throw InvalidTriangulation("unknown geometry \"" + geom + "\"");

    input.packing.inversive.assign(input.tri.edges.size(),
                                   std::numeric_limits<double>::quiet_NaN());
    std::set<int> assigned;
    for (const auto& entry : doc.value("inversive", nlohmann::json::array())) {
        const auto& e = entry.at("edge");
        const int idx = input.tri.edge_index(e[0].get<int>(), e[1].get<int>());
        if (!assigned.insert(idx).second)
            throw InvalidTriangulation("duplicate inversive value for edge (" +
                                       std::to_string(e[0].get<int>()) + "," +
                                       std::to_string(e[1].get<int>()) + ")");
        const double value = entry.at("value").get<double>();
        if (value < -1.0)
            throw InvalidTriangulation("inversive distance below -1 on edge (" +
                                       std::to_string(e[0].get<int>()) + "," +
                                       std::to_string(e[1].get<int>()) + ")");
        input.packing.inversive[idx] = value;
    }
    if (assigned.size() != input.tri.edges.size())
        throw InvalidTriangulation("missing inversive value for " +
                                   std::to_string(input.tri.edges.size() - assigned.size()) +
                                   " edge(s)");
    for (double r : input.packing.radii) {
        const bool ok = input.geometry == Geometry::Spherical ? (r > 0.0 && r < M_PI / 2.0)
                                                              : (r > 0.0);
        if (!ok) throw InvalidTriangulation("radius out of range: " + std::to_string(r));
    }
    return input;
}

} // namespace prl
