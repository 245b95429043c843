#pragma once

#include "prl/circles.hpp"
#include "prl/lorentz.hpp"

#include <array>
#include <map>
#include <vector>

namespace prl {

struct Infeasible : Error {
    using Error::Error;
};
struct DegenerateTriangle : Error {
    using Error::Error;
};
struct InvalidTriangulation : Error {
    using Error::Error;
};

// Closed triangulated surface: every edge on exactly two faces, vertex links single cycles.
struct Triangulation {
    int vertex_count = 0;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::pair<int, int>> edges; // i < j, sorted lexicographically
    int euler_characteristic = 0;

    static Triangulation from_faces(int vertex_count, std::vector<std::array<int, 3>> faces);

    int edge_index(int u, int v) const; // throws InvalidTriangulation if absent
    const std::vector<std::vector<int>>& vertex_faces() const { return star_faces_; }

  private:
    std::map<std::pair<int, int>, int> edge_lookup_;
    std::vector<std::vector<int>> star_faces_; // faces incident to each vertex
};

enum class Geometry { Spherical, Euclidean };

struct PackingData {
    std::vector<double> inversive; // per edge, parallel to Triangulation::edges
    std::vector<double> radii;     // per vertex
};

struct PolyhedralMetric {
    std::vector<double> lengths; // per edge
    Geometry geometry = Geometry::Spherical;
};

struct FaceViolation {
    int face = -1;
    std::string reason;
    double margin = 0.0;
};

struct MetricVerdict {
    bool valid = true;
    std::vector<FaceViolation> violations;
};

double edge_length_spherical(double r_u, double r_v, double I);
double edge_length_euclidean(double r_u, double r_v, double I);

MetricVerdict validate_polyhedral(const Triangulation& tri, const std::vector<double>& lengths,
                                  bool spherical);

// Angle opposite l1 first; spherical law of cosines.
std::array<double, 3> triangle_angles_spherical(double l1, double l2, double l3,
                                                const Tolerances& tol = default_tol());

std::vector<double> discrete_curvature(const Triangulation& tri,
                                       const std::vector<double>& lengths);

struct PackingResult {
    PackingData packing;
    PolyhedralMetric metric;
};

// Reads radii and pairwise inversive distances off a circle configuration; the metric is
// the spherical distance between circle centers, consistent with the packing by duality.
PackingResult packing_from_circles(const Triangulation& tri, const CircleConfiguration& config);

struct PackingInput {
    Triangulation tri;
    PackingData packing;
    Geometry geometry = Geometry::Spherical;
};

// Parses {"faces": [[i,j,k],...], "inversive": [{"edge":[i,j],"value":x},...],
//         "radii": [...], "geometry": "spherical"|"euclidean"}; 0-based indices.
PackingInput parse_packing_input(const std::string& json_text);

} // namespace prl
