#include "hrcm/geometry.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

using namespace hrcm;

namespace {

constexpr double kPi = 3.14159265358979323846;

HPoint pt2(double x, double y) { return HPoint{{x, y}}; }

// Independent oracle: length of the circular geodesic arc between two points
// of the Poincare disc, integrating the metric 2|dz|/(1-|z|^2) numerically.
double geodesic_arc_length(const HPoint& a, const HPoint& b) {
    double ax = a.coords[0], ay = a.coords[1];
    double bx = b.coords[0], by = b.coords[1];
    // Geodesic circle: |z - w| = R with |w|^2 = R^2 + 1 (orthogonal to the
    // unit circle). 2 z.w = |z|^2 + 1 on the circle gives a linear system.
    double a_rhs = (ax * ax + ay * ay + 1.0) / 2.0;
    double b_rhs = (bx * bx + by * by + 1.0) / 2.0;
    double det = ax * by - ay * bx;
    REQUIRE(std::abs(det) > 1e-12);  // callers avoid collinear-with-origin pairs
    double wx = (a_rhs * by - b_rhs * ay) / det;
    double wy = (ax * b_rhs - bx * a_rhs) / det;
    double R = std::sqrt(wx * wx + wy * wy - 1.0);
    double phi_a = std::atan2(ay - wy, ax - wx);
    double phi_b = std::atan2(by - wy, bx - wx);
    double dphi = phi_b - phi_a;
    while (dphi > kPi) dphi -= 2.0 * kPi;
    while (dphi < -kPi) dphi += 2.0 * kPi;
    auto integrand = [&](double t) {
        double phi = phi_a + t * dphi;
        double x = wx + R * std::cos(phi);
        double y = wy + R * std::sin(phi);
        return 2.0 * R * std::abs(dphi) / (1.0 - x * x - y * y);
    };
    return integrate(integrand, 0.0, 1.0).value;
}

}  // namespace

TEST_CASE("dist basics") {
    HPoint o = origin(2);
    CHECK(dist(o, o) == 0.0);
    CHECK(dist(pt2(0.5, 0.0), o) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(dist(pt2(0.3, -0.2), pt2(0.3, -0.2)) == 0.0);
    CHECK_THROWS_AS((void)dist(HPoint{{0.5, 0.0, 0.0}}, o), std::invalid_argument);
    CHECK_THROWS_AS((void)dist(HPoint{{1.0, 0.0}}, o), std::domain_error);
}

TEST_CASE("dist equals the integrated geodesic length") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(-0.85, 0.85);
    int checked = 0;
    while (checked < 25) {
        HPoint a = pt2(u(gen), u(gen)), b = pt2(u(gen), u(gen));
        if (a.coords[0] * a.coords[0] + a.coords[1] * a.coords[1] >= 0.8) continue;
        if (b.coords[0] * b.coords[0] + b.coords[1] * b.coords[1] >= 0.8) continue;
        if (std::abs(a.coords[0] * b.coords[1] - a.coords[1] * b.coords[0]) < 1e-3) continue;
        CHECK(dist(a, b) == doctest::Approx(geodesic_arc_length(a, b)).epsilon(1e-8));
        ++checked;
    }
}

TEST_CASE("dist symmetry, triangle inequality, rotation invariance") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int it = 0; it < 200; ++it) {
        HPoint x = pt2(u(gen), u(gen)), y = pt2(u(gen), u(gen)), z = pt2(u(gen), u(gen));
        CHECK(std::abs(dist(x, y) - dist(y, x)) < 1e-12);
        CHECK(dist(x, z) <= dist(x, y) + dist(y, z) + 1e-10);
        double th = ang(gen);
        double c = std::cos(th), s = std::sin(th);
        auto rot = [&](const HPoint& p) {
            return pt2(c * p.coords[0] - s * p.coords[1], s * p.coords[0] + c * p.coords[1]);
        };
        CHECK(dist(rot(x), rot(y)) == doctest::Approx(dist(x, y)).epsilon(1e-12));
    }
    // d = 3 triangle inequality on random triples
    std::uniform_real_distribution<double> u3(-0.45, 0.45);
    for (int it = 0; it < 200; ++it) {
        HPoint x{{u3(gen), u3(gen), u3(gen)}}, y{{u3(gen), u3(gen), u3(gen)}},
            z{{u3(gen), u3(gen), u3(gen)}};
        CHECK(dist(x, z) <= dist(x, y) + dist(y, z) + 1e-10);
    }
}

TEST_CASE("sphere_constant known values") {
    CHECK(sphere_constant(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(sphere_constant(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(sphere_constant(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("ball_volume") {
    CHECK(ball_volume(2, 0.0) == 0.0);
    CHECK(ball_volume(5, 0.0) == 0.0);
    // unit mu-volume disc radius
    double r0 = 2.0 * std::asinh(0.5 / std::sqrt(kPi));
    CHECK(ball_volume(2, r0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ball_volume(3, 1.0) == doctest::Approx(kPi * (std::sinh(2.0) - 2.0)).epsilon(1e-12));
    // strictly increasing
    CHECK(ball_volume(4, 2.0) > ball_volume(4, 1.9));
    CHECK_THROWS_AS((void)ball_volume(2, -1.0), std::domain_error);
}

TEST_CASE("ball_volume agrees with radial quadrature") {
    for (int d : {2, 3, 4, 5}) {
        for (double L : {0.5, 1.0, 2.0, 4.0}) {
            auto r = radial_integral([L](double t) { return t < L ? 1.0 : 0.0; }, d, L);
            CHECK(r.value == doctest::Approx(ball_volume(d, L)).epsilon(1e-10));
        }
    }
}

TEST_CASE("radial_integral closed-form oracle") {
    // S_1 int_0^inf e^{-2r} sinh r dr = 2 pi (1/2 - 1/6) = 2 pi / 3
    auto r = radial_integral([](double t) { return std::exp(-2.0 * t); }, 2,
                             std::numeric_limits<double>::infinity());
    CHECK(r.value == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-10));
}

TEST_CASE("radial_integral divergent tail raises") {
    CHECK_THROWS_AS((void)radial_integral([](double) { return 1.0; }, 2,
                                          std::numeric_limits<double>::infinity()),
                    IntegrationError);
}

TEST_CASE("horocycle coordinate") {
    HPoint o = origin(2);
    CHECK(horocycle_coordinate(o, {1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(horocycle_coordinate(o, {0.0, 1.0}) == doctest::Approx(0.0));
    for (double t : {0.3, 1.0, 2.5}) {
        CHECK(horocycle_coordinate(pt2(std::tanh(0.5 * t), 0.0), {1.0, 0.0}) ==
              doctest::Approx(t).epsilon(1e-12));
        CHECK(horocycle_coordinate(pt2(-std::tanh(0.5 * t), 0.0), {1.0, 0.0}) ==
              doctest::Approx(-t).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)horocycle_coordinate(pt2(0.5, 0.0), {2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("lens geometry") {
    auto g = lens_geometry(2, 2.0, 0.0);
    CHECK(g.alpha == doctest::Approx(0.5 * kPi));
    g = lens_geometry(2, 2.0, 4.0);
    CHECK(g.alpha == doctest::Approx(0.0));
    CHECK_FALSE(g.empty);
    g = lens_geometry(2, 2.0, 4.5);
    CHECK(g.empty);
    g = lens_geometry(3, 2.0, 1.0);
    CHECK(g.alpha == doctest::Approx(std::acos(std::tanh(0.5) / std::tanh(2.0))).epsilon(1e-14));
    CHECK(std::sinh(g.a) == doctest::Approx(std::sin(g.alpha) * std::sinh(2.0)).epsilon(1e-12));
}

TEST_CASE("ball intersection volume: trivial anchors") {
    for (int d : {2, 3}) {
        CHECK(ball_intersection_volume(d, 2.0, 0.0) ==
              doctest::Approx(ball_volume(d, 2.0)).epsilon(1e-12));
        CHECK(ball_intersection_volume(d, 2.0, 4.0) == 0.0);
        CHECK(ball_intersection_volume(d, 2.0, 5.0) == 0.0);
        // monotone non-increasing in r
        double prev = ball_intersection_volume(d, 2.0, 0.0);
        for (double r = 0.25; r <= 4.0; r += 0.25) {
            double v = ball_intersection_volume(d, 2.0, r);
            CHECK(v <= prev * (1.0 + 1e-12));
            prev = v;
        }
    }
}

TEST_CASE("ball intersection volume: both routes agree") {
    for (int d : {2, 3}) {
        for (double L : {1.0, 2.0, 4.0}) {
            for (double frac : {0.0, 0.5, 1.0, 1.5}) {
                double r = frac * L;
                auto direct = ball_intersection_volume(d, L, r, LensMethod::Direct);
                auto seg = ball_intersection_volume(d, L, r, LensMethod::SegmentCone);
                double scale = std::max(std::abs(seg.value), 1e-300);
                CHECK(std::abs(direct.value - seg.value) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("ball intersection volume: Monte Carlo oracle (d=2, L=2, r=1)") {
    // Rejection sampling over the Poincare disc with the hyperbolic density.
    std::mt19937 gen(42);
    double L = 2.0, r = 1.0;
    double t_ball = std::tanh(0.5 * L);  // Euclidean radius of B_L(o)
    std::uniform_real_distribution<double> u(-t_ball, t_ball);
    HPoint centre = pt2(std::tanh(0.5 * r), 0.0);
    const int n = 400000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = u(gen), y = u(gen);
        double w = 0.0;
        if (x * x + y * y < t_ball * t_ball) {
            HPoint p = pt2(x, y);
            if (dist(p, origin(2)) < L && dist(p, centre) < L) {
                double q = 1.0 - x * x - y * y;
                w = 4.0 / (q * q);
            }
        }
        sum += w;
        sumsq += w * w;
    }
    double box = 4.0 * t_ball * t_ball;
    double mean = sum / n;
    double est = box * mean;
    double se = box * std::sqrt((sumsq / n - mean * mean) / n);
    double v = ball_intersection_volume(2, L, r);
    CHECK(std::abs(v - est) < 3.0 * se);
}

TEST_CASE("lens asymptote ratio approaches 1") {
    // at r = L the asymptote is (4 S_{d-2}/(d-1)^2) e^{(d-1)L/2}
    for (int d : {2, 3}) {
        double Sdm2 = (d == 2) ? 2.0 : 2.0 * kPi;
        double prev_gap = 1e9;
        for (double L : {4.0, 6.0, 8.0}) {
            double asym = 4.0 * Sdm2 / ((d - 1) * (d - 1)) * std::exp(0.5 * (d - 1) * L);
            double ratio = ball_intersection_volume(d, L, L) / asym;
            double gap = std::abs(ratio - 1.0);
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
        CHECK(prev_gap < 0.2);
    }
}

TEST_CASE("triangle identities") {
    auto eq = triangle_checks(1.3, 1.3, 1.3);
    CHECK(eq.alpha == doctest::Approx(eq.beta).epsilon(1e-14));
    CHECK(eq.beta == doctest::Approx(eq.gamma).epsilon(1e-14));

    auto rep = triangle_checks(1.0, 1.5, 2.0);
    CHECK(rep.sine_residual < 1e-10);
    CHECK(rep.cosine_residual < 1e-10);
    CHECK(rep.right_angle_residual < 1e-12);
    CHECK(rep.area_residual < 1e-10);
    CHECK(rep.area_defect > 0.0);

    CHECK_THROWS_AS((void)triangle_checks(1.0, 1.0, 3.0), std::domain_error);
    CHECK_THROWS_AS((void)triangle_checks(-1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("1000 random feasible triangles") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int it = 0; it < 1000; ++it) {
        double a = u(gen), b = u(gen);
        std::uniform_real_distribution<double> uc(std::abs(a - b) + 0.01, a + b - 0.01);
        double c = uc(gen);
        auto rep = triangle_checks(a, b, c);
        CHECK(rep.sine_residual < 1e-9);
        CHECK(rep.cosine_residual < 1e-9);
        CHECK(rep.right_angle_residual < 1e-9);
        CHECK(rep.area_residual < 1e-9);
    }
}
