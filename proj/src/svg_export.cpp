#include "prl/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace prl {

namespace {

double round_sig(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

// Stereographic projection from the north pole (0,0,1) onto the equatorial plane.
Eigen::Vector2d stereographic(const Vec3& u) {
    return Eigen::Vector2d(u.x(), u.y()) / (1.0 - u.z());
}

struct ProjectedCircle {
    bool is_line = false;
    Eigen::Vector2d center = Eigen::Vector2d::Zero(); // circle case
    double radius = 0.0;
    Eigen::Vector2d p0 = Eigen::Vector2d::Zero(), p1 = Eigen::Vector2d::Zero(); // line case
};

ProjectedCircle project_circle(const SphericalCircle& c) {
    static const Vec3 pole(0, 0, 1);
    // in-plane direction toward the pole; arbitrary when the center is (anti)polar
    Vec3 w = pole - pole.dot(c.center) * c.center;
    if (w.norm() < 1e-12) w = Vec3(1, 0, 0);
    w.normalize();

    const double pole_angle = std::acos(std::clamp(c.center.dot(pole), -1.0, 1.0));
    ProjectedCircle out;
    if (std::abs(pole_angle - c.radius) < 1e-6) {
        // circle passes (numerically) through the projection pole: image is a line
        out.is_line = true;
        const Vec3 tangent = c.center.cross(w).normalized();
        out.p0 = stereographic(std::cos(c.radius) * c.center + std::sin(c.radius) * tangent);
        out.p1 = stereographic(std::cos(c.radius) * c.center - std::sin(c.radius) * tangent);
        return out;
    }
    // the two circle points nearest/farthest from the pole project to a diameter
    const Vec3 near = std::cos(c.radius) * c.center + std::sin(c.radius) * w;
    const Vec3 far = std::cos(c.radius) * c.center - std::sin(c.radius) * w;
    const Eigen::Vector2d a = stereographic(near), b = stereographic(far);
    out.center = 0.5 * (a + b);
    out.radius = 0.5 * (a - b).norm();
    return out;
}

void clip_line_to_box(Eigen::Vector2d& p0, Eigen::Vector2d& p1, double half) {
    // extend the segment's supporting line and clip against [-half, half]^2
    const Eigen::Vector2d d = (p1 - p0).normalized();
    const Eigen::Vector2d mid = 0.5 * (p0 + p1);
    double tmin = -4.0 * half, tmax = 4.0 * half;
    for (int axis = 0; axis < 2; ++axis) {
        if (std::abs(d[axis]) < 1e-15) continue;
        double t0 = (-half - mid[axis]) / d[axis];
        double t1 = (half - mid[axis]) / d[axis];
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
    }
    p0 = mid + tmin * d;
    p1 = mid + tmax * d;
}

} // namespace

std::string export_circles(const std::vector<CircleConfiguration>& configs,
                           const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json doc;
        nlohmann::ordered_json packings = nlohmann::ordered_json::array();
        for (const CircleConfiguration& cfg : configs) {
            nlohmann::ordered_json circles = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < cfg.size(); ++i)
                circles.push_back({{"label", cfg.labels[i]},
                                   {"center",
                                    {round_sig(cfg.circles[i].center.x(), 10),
                                     round_sig(cfg.circles[i].center.y(), 10),
                                     round_sig(cfg.circles[i].center.z(), 10)}},
                                   {"radius", round_sig(cfg.circles[i].radius, 10)}});
            packings.push_back({{"circles", circles}});
        }
        doc["packings"] = packings;
        return doc.dump(2);
    }
    if (format != "svg") throw UnsupportedFormat("export_circles: unknown format " + format);

    const double half = 6.0;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -half << " " << -half
        << " " << 2 * half << " " << 2 * half << "\">\n";
    svg << "  <style>.packing-a{stroke:#1f6fb2;fill:none;stroke-width:0.02}"
           ".packing-b{stroke:#c2401f;fill:none;stroke-width:0.02;stroke-dasharray:0.08 0.05}"
           "</style>\n";
    svg << "  <circle cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#999\" fill=\"none\" "
           "stroke-width=\"0.01\"/>\n";
    for (std::size_t k = 0; k < configs.size(); ++k) {
        const char* cls = k == 0 ? "packing-a" : "packing-b";
        for (std::size_t i = 0; i < configs[k].size(); ++i) {
            const ProjectedCircle pc = project_circle(configs[k].circles[i]);
            if (pc.is_line) {
                Eigen::Vector2d p0 = pc.p0, p1 = pc.p1;
                clip_line_to_box(p0, p1, half);
                svg << "  <!-- warning: circle " << configs[k].labels[i]
                    << " passes through the projection pole; rendered as a clipped line -->\n";
                svg << "  <line class=\"" << cls << "\" x1=\"" << p0.x() << "\" y1=\"" << p0.y()
                    << "\" x2=\"" << p1.x() << "\" y2=\"" << p1.y() << "\"/>\n";
            } else {
                svg << "  <circle class=\"" << cls << "\" cx=\"" << pc.center.x() << "\" cy=\""
                    << pc.center.y() << "\" r=\"" << pc.radius << "\"/>\n";
            }
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace prl
