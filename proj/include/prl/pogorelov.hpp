#pragma once

#include "prl/lorentz.hpp"

#include <cstdint>
#include <vector>

namespace prl {

struct OutOfDomain : Error {
    using Error::Error;
};
struct NormalizationFailure : Error {
    using Error::Error;
};
struct InsufficientSamples : Error {
    using Error::Error;
};

struct PointPairE3 {
    EuclideanPoint3 xi;
    EuclideanPoint3 eta;
};

struct PointPairDS {
    DeSitterPoint first;
    DeSitterPoint second;
};

// Transport map from pairs of upper de Sitter points to pairs of Euclidean points,
// (x,y) -> 2(x_s, y_s)/(x0 + y0). Restricts to the Klein projection on the diagonal.
PointPairE3 phi(const PointPairDS& pair);

// Image domain: both points outside the closed unit ball and -4 < |xi|^2 - |eta|^2 < 4.
bool in_phi_image(const PointPairE3& pair);

// g(a,b) = -(a^2-b^2)^2 + 8(a^2+b^2-2); positive throughout the image domain.
double domain_margin_g(double a, double b);

PointPairDS phi_inverse(const PointPairE3& pair, const Tolerances& tol = default_tol());

struct IsometryTransportReport {
    int samples_used = 0;
    double max_residual = 0.0;
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity(); // fitted orthogonal part
    Vec3 translation = Vec3::Zero();
    bool pass = false;
};

struct LengthTransportReport {
    int samples_used = 0;
    int samples_discarded = 0;
    double max_deviation = 0.0;
    bool pass = false;
};

struct SpeedTransportReport {
    int samples_used = 0;
    int samples_discarded = 0;
    double max_collinearity_defect = 0.0;
    double max_gap_mismatch = 0.0;
    bool pass = false;
};

// Samples x with x and alpha(x) admissible, fits the rigid Euclidean motion carrying
// the first Phi components onto the second, and reports the worst residual.
IsometryTransportReport verify_isometry_transport(const Mat4& alpha, int samples,
                                                  std::uint64_t seed);

// For congruent time-like segments (images of each base segment under seeded
// time-orientation-preserving Lorentz maps) checks that both Euclidean components
// of the transported segment have equal length.
LengthTransportReport verify_timelike_length_transport(const std::vector<PointPairDS>& base_segments,
                                                       int samples_per_segment,
                                                       std::uint64_t seed);

// For pairs of equal-speed space-like geodesics checks that both image components are
// straight and traverse matching chord gaps at the five sample parameters.
SpeedTransportReport verify_spacelike_speed_transport(std::uint64_t seed, int samples);

// Best orthogonal + translation fit from src onto dst; returns the max point residual.
double fit_rigid_motion(const std::vector<Vec3>& src, const std::vector<Vec3>& dst,
                        Eigen::Matrix3d* rotation_out = nullptr, Vec3* translation_out = nullptr);

// Deterministic sampling helpers shared by the verification drivers and tests.
DeSitterPoint sample_de_sitter_point(std::uint64_t& state);
Mat4 sample_lorentz_map(std::uint64_t& state, double max_rapidity = 0.3);
double rng_uniform(std::uint64_t& state, double lo, double hi);

} // namespace prl
