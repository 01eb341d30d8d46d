#include "hrcm/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace hrcm;

TEST_CASE("polynomials and smooth integrands") {
    auto r = integrate([](double x) { return x * x; }, 0.0, 3.0);
    CHECK(r.value == doctest::Approx(9.0).epsilon(1e-12));
    r = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.error < 1e-8);
}

TEST_CASE("breakpoints handle jumps") {
    auto step = [](double x) { return x < 1.0 ? 1.0 : 0.0; };
    auto r = integrate(step, 0.0, 2.0, std::vector<double>{1.0});
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero integrand converges immediately") {
    auto r = integrate([](double) { return 0.0; }, 0.0, 10.0);
    CHECK(r.value == 0.0);
    CHECK(r.error == 0.0);
}

TEST_CASE("semi-infinite tail") {
    auto r = integrate_to_inf([](double x) { return std::exp(-2.0 * x); }, 0.0);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-10));
    r = integrate_to_inf([](double x) { return std::exp(-x) * x * x; }, 0.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("divergent integrand raises") {
    CHECK_THROWS_AS((void)integrate_to_inf([](double x) { return 1.0 / (1.0 + x); }, 0.0),
                    IntegrationError);
}

TEST_CASE("oscillatory sine integrals") {
    // int_0^inf sin(s)/s ds truncated: int_0^(200 pi) sin(w s)/s with w=1
    auto r = integrate_oscillatory_sin([](double s) { return s > 0 ? 1.0 / s : 1.0; }, 1.0,
                                       1e-12, 200.0 * 3.14159265358979323846);
    CHECK(r.value == doctest::Approx(1.5707963267948966).epsilon(1e-6));

    // int_0^10 s sin(20 s) ds = [sin(20s)/400 - s cos(20s)/20]
    double w = 20.0, b = 10.0;
    double exact = std::sin(w * b) / (w * w) - b * std::cos(w * b) / w;
    auto r2 = integrate_oscillatory_sin([](double s) { return s; }, w, 0.0, b);
    CHECK(r2.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("relative tolerance is honoured") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 0.0;
    auto r = integrate([](double x) { return std::sin(x) * std::sin(x); }, 0.0, 6.0, opts);
    double exact = 3.0 - std::sin(12.0) / 4.0;
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-12));
}
