#include "hrcm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hrcm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sq_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

double acosh1p(double u) {
    // acosh(1 + u) without cancellation for small u.
    if (u <= 0.0) return 0.0;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

double clamp_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }

}  // namespace

HPoint origin(int d) {
    check_dimension(d);
    return HPoint{std::vector<double>(static_cast<size_t>(d), 0.0)};
}

void check_dimension(int d) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
}

void validate_point(const HPoint& x) {
    check_dimension(x.dim());
    if (!(sq_norm(x.coords) < 1.0))
        throw std::domain_error("ball-model point must have Euclidean norm < 1");
}

double sphere_constant(int d) {
    check_dimension(d);
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

double dist(const HPoint& x, const HPoint& y) {
    validate_point(x);
    validate_point(y);
    if (x.dim() != y.dim()) throw std::invalid_argument("dist: dimension mismatch");
    double diff = 0.0;
    for (int i = 0; i < x.dim(); ++i) {
        double t = x.coords[i] - y.coords[i];
        diff += t * t;
    }
    double u = 2.0 * diff / ((1.0 - sq_norm(x.coords)) * (1.0 - sq_norm(y.coords)));
    return acosh1p(u);
}

double sinh_power_integral(int d, double L) {
    check_dimension(d);
    if (L < 0.0) throw std::domain_error("sinh_power_integral: negative length");
    if (L == 0.0) return 0.0;
    if (d == 2) return std::cosh(L) - 1.0;
    // sinh^{d-1} t = 2^{1-d} sum_k C(d-1,k) (-1)^k e^{(d-1-2k)t}
    const int n = d - 1;
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        int m = n - 2 * k;
        double term = (m == 0) ? L : std::expm1(m * L) / m;
        sum += sign * binom * term;
        binom = binom * (n - k) / (k + 1);
    }
    return std::ldexp(sum, 1 - d);
}

double ball_volume(int d, double r) {
    if (r < 0.0) throw std::domain_error("ball_volume: negative radius");
    return sphere_constant(d) * sinh_power_integral(d, r);
}

double angular_cap_integral(int d, double theta) {
    check_dimension(d);
    // I_n(theta) = int_0^theta sin^n, n = d-2, by the stable downward recursion
    // I_n = (-sin^{n-1} cos + (n-1) I_{n-2}) / n,  I_0 = theta, I_1 = 1 - cos.
    int n = d - 2;
    if (n == 0) return theta;
    double prev = theta;                 // I_0
    double cur = 1.0 - std::cos(theta);  // I_1
    if (n == 1) return cur;
    double s = std::sin(theta), c = std::cos(theta);
    for (int k = 2; k <= n; ++k) {
        double next = (-std::pow(s, k - 1) * c + (k - 1) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

IntegralResult radial_integral(const std::function<double(double)>& g, int d, double r_max,
                               const std::vector<double>& breakpoints,
                               const QuadratureOptions& opts) {
    check_dimension(d);
    double S = sphere_constant(d);
    auto integrand = [&g, d](double r) { return g(r) * std::pow(std::sinh(r), d - 1); };
    IntegralResult res;
    if (std::isinf(r_max)) {
        // Finite head with declared breakpoints, rational-mapped tail.
        double head = 1.0;
        for (double b : breakpoints) head = std::max(head, b);
        IntegralResult h = integrate(integrand, 0.0, head, breakpoints, opts);
        IntegralResult t = integrate_to_inf(integrand, head, opts);
        res = {h.value + t.value, h.error + t.error};
    } else {
        res = integrate(integrand, 0.0, r_max, breakpoints, opts);
    }
    return {S * res.value, S * res.error};
}

double horocycle_coordinate(const HPoint& x, const std::vector<double>& b) {
    validate_point(x);
    if (static_cast<int>(b.size()) != x.dim())
        throw std::invalid_argument("horocycle_coordinate: dimension mismatch");
    double bn = sq_norm(b);
    if (std::abs(bn - 1.0) > 1e-9)
        throw std::invalid_argument("horocycle_coordinate: b must be a unit vector");
    double diff = 0.0;
    for (int i = 0; i < x.dim(); ++i) {
        double t = x.coords[i] - b[i];
        diff += t * t;
    }
    if (diff == 0.0) throw std::domain_error("horocycle_coordinate: point on the boundary");
    return std::log1p(-sq_norm(x.coords)) - std::log(diff);
}

LensGeometry lens_geometry(int d, double L, double r) {
    check_dimension(d);
    if (L <= 0.0) throw std::domain_error("lens_geometry: L must be positive");
    if (r < 0.0) throw std::domain_error("lens_geometry: negative separation");
    LensGeometry g;
    g.L = L;
    g.r = r;
    if (r > 2.0 * L * (1.0 + 1e-12)) {
        g.empty = true;
        return g;
    }
    double ratio = std::tanh(0.5 * r) / std::tanh(L);
    g.alpha = std::acos(clamp_unit(ratio));
    g.a = std::asinh(std::sin(g.alpha) * std::sinh(L));
    return g;
}

IntegralResult ball_intersection_volume(int d, double L, double r, LensMethod method) {
    check_dimension(d);
    if (L <= 0.0) throw std::domain_error("ball_intersection_volume: L must be positive");
    if (r < 0.0) throw std::domain_error("ball_intersection_volume: negative separation");
    if (r >= 2.0 * L) return {0.0, 0.0};
    if (r == 0.0) return {ball_volume(d, L), 0.0};
    // S_{d-2}: measure of S^{d-2}; equals 2 for d = 2 (two points).
    const double Sdm2 = 2.0 * std::pow(kPi, 0.5 * (d - 1)) / std::tgamma(0.5 * (d - 1));

    if (method == LensMethod::Direct) {
        auto integrand = [&](double rho) {
            double theta;
            if (rho <= 0.0) {
                theta = (r < L) ? kPi : 0.0;
            } else {
                double num = std::cosh(rho) * std::cosh(r) - std::cosh(L);
                double den = std::sinh(rho) * std::sinh(r);
                double c = num / den;
                if (c <= -1.0)
                    theta = kPi;
                else if (c >= 1.0)
                    theta = 0.0;
                else
                    theta = std::acos(c);
            }
            return std::pow(std::sinh(rho), d - 1) * angular_cap_integral(d, theta);
        };
        std::vector<double> breaks{std::abs(L - r)};
        IntegralResult res = integrate(integrand, 0.0, L, breaks);
        return {Sdm2 * res.value, Sdm2 * res.error};
    }

    LensGeometry g = lens_geometry(d, L, r);
    double SL = sinh_power_integral(d, L);
    double tr2 = std::tanh(0.5 * r);
    auto integrand = [&](double theta) {
        double ct = std::cos(theta);
        double ratio = std::min(tr2 / ct, 1.0 - 1e-16);
        double ctheta = std::atanh(ratio);
        double cap = SL - sinh_power_integral(d, std::min(ctheta, L));
        double w = (d == 2) ? 1.0 : std::pow(std::sin(theta), d - 2);
        return w * cap;
    };
    IntegralResult res = integrate(integrand, 0.0, g.alpha);
    return {2.0 * Sdm2 * res.value, 2.0 * Sdm2 * res.error};
}

double ball_intersection_volume(int d, double L, double r) {
    return ball_intersection_volume(d, L, r, LensMethod::SegmentCone).value;
}

TriangleReport triangle_checks(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw std::domain_error("triangle_checks: sides must be positive");
    if (a + b <= c || b + c <= a || c + a <= b)
        throw std::domain_error("triangle_checks: triangle inequality violated");

    auto angle = [](double opp, double s1, double s2) {
        double cosv = (std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) /
                      (std::sinh(s1) * std::sinh(s2));
        return std::acos(clamp_unit(cosv));
    };
    TriangleReport rep;
    rep.alpha = angle(a, b, c);
    rep.beta = angle(b, c, a);
    rep.gamma = angle(c, a, b);

    double ra = std::sin(rep.alpha) / std::sinh(a);
    double rb = std::sin(rep.beta) / std::sinh(b);
    double rc = std::sin(rep.gamma) / std::sinh(c);
    double rmax = std::max({ra, rb, rc, std::numeric_limits<double>::min()});
    rep.sine_residual =
        (std::max({ra, rb, rc}) - std::min({ra, rb, rc})) / rmax;

    auto cos_residual = [](double alpha, double opp, double s1, double s2) {
        double lhs = std::cos(alpha) * std::sinh(s1) * std::sinh(s2);
        double rhs = std::cosh(s1) * std::cosh(s2) - std::cosh(opp);
        return std::abs(lhs - rhs) / (std::cosh(s1) * std::cosh(s2));
    };
    rep.cosine_residual = std::max({cos_residual(rep.alpha, a, b, c),
                                    cos_residual(rep.beta, b, c, a),
                                    cos_residual(rep.gamma, c, a, b)});

    // Right triangle with legs a, b meeting at the right angle; hypotenuse h
    // from cosh h = cosh a cosh b, angle at the vertex adjacent to leg b.
    double h = acosh1p(std::cosh(a) * std::cosh(b) - 1.0);
    double alpha_r = angle(a, b, h);
    rep.right_angle_residual = std::abs(std::cos(alpha_r) - std::tanh(b) / std::tanh(h));

    rep.area_defect = kPi - rep.alpha - rep.beta - rep.gamma;
    double s = 0.5 * (a + b + c);
    double prod = std::tanh(0.5 * s) * std::tanh(0.5 * (s - a)) * std::tanh(0.5 * (s - b)) *
                  std::tanh(0.5 * (s - c));
    double defect_sides = 4.0 * std::atan(std::sqrt(std::max(0.0, prod)));
    rep.area_residual = std::abs(rep.area_defect - defect_sides);
    return rep;
}

}  // namespace hrcm
