#pragma once

#include "hrcm/quadrature.hpp"

#include <vector>

namespace hrcm {

/// A point of H^d in Poincare-ball coordinates (Euclidean norm strictly < 1).
struct HPoint {
    std::vector<double> coords;

    int dim() const { return static_cast<int>(coords.size()); }
};

HPoint origin(int d);

/// Throws std::invalid_argument (d < 2) or std::domain_error (norm >= 1).
void validate_point(const HPoint& x);
void check_dimension(int d);

/// Surface measure of the Euclidean unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_constant(int d);

/// Hyperbolic distance between two ball-model points.
/// acosh(1 + 2|x-y|^2 / ((1-|x|^2)(1-|y|^2))), evaluated in log1p form.
double dist(const HPoint& x, const HPoint& y);

/// Closed-form integral of sinh^{d-1} over [0, L] (binomial expansion).
double sinh_power_integral(int d, double L);

/// Hyperbolic volume of a radius-r ball: S_{d-1} * int_0^r sinh^{d-1}.
double ball_volume(int d, double r);

/// Integral of sin^{d-2} over [0, theta]; exact recursion, no quadrature.
double angular_cap_integral(int d, double theta);

/// S_{d-1} * int_0^{r_max} g(r) sinh^{d-1}(r) dr. Pass r_max = infinity for a
/// decaying tail (throws IntegrationError if it fails to converge).
IntegralResult radial_integral(const std::function<double(double)>& g, int d, double r_max,
                               const std::vector<double>& breakpoints = {},
                               const QuadratureOptions& opts = {});

/// Signed horocycle coordinate A(x, b) = log((1-|z|^2) / |z-b|^2), |b| = 1.
double horocycle_coordinate(const HPoint& x, const std::vector<double>& b);

/// Cross-section geometry of the two-ball lens (radius L, centre separation r).
struct LensGeometry {
    double L = 0.0;      ///< ball radius
    double r = 0.0;      ///< centre separation
    double alpha = 0.0;  ///< half-angle at a ball centre, cos(alpha) = tanh(r/2)/tanh(L)
    double a = 0.0;      ///< centre-axis to rim distance, sinh(a) = sin(alpha) sinh(L)
    bool empty = false;  ///< r > 2L: the balls do not meet
};

LensGeometry lens_geometry(int d, double L, double r);

enum class LensMethod {
    Direct,       ///< polar quadrature about one centre
    SegmentCone,  ///< spherical segment minus cone, integrated over the rim angle
};

/// Volume of B_L(o) together with B_L at distance r; two independent routes.
IntegralResult ball_intersection_volume(int d, double L, double r, LensMethod method);
double ball_intersection_volume(int d, double L, double r);

struct TriangleReport {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;  // angles solved by the cosine rule
    double sine_residual = 0.0;                   // max mismatch of sin/sinh ratios
    double cosine_residual = 0.0;                 // max residual of the three cosine rules
    double right_angle_residual = 0.0;  // right triangle on legs (a,b): cos = tanh/tanh
    double area_defect = 0.0;           // pi - alpha - beta - gamma (d=2 area)
    double area_residual = 0.0;         // defect vs the side-only half-perimeter formula
};

/// Solve angles of the triangle with side lengths (a, b, c) and report the
/// residuals of the Appendix identities. Sides must satisfy the strict
/// triangle inequality (throws std::domain_error otherwise).
TriangleReport triangle_checks(double a, double b, double c);

}  // namespace hrcm
