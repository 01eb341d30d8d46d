#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace hrcm {

/// Raised when an integral fails to converge to the requested tolerance.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Value of an integral together with the quadrature error estimate.
struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_panels = 20000;
    bool throw_on_failure = true;
};

/// Adaptive Gauss-Kronrod integration of f over [a, b].
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureOptions& opts = {});

/// Same, but the initial panel decomposition is split at the given interior
/// breakpoints (integrand kinks/jumps), so no panel straddles one.
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const std::vector<double>& breakpoints,
                         const QuadratureOptions& opts = {});

/// Integral of f over [a, inf) via the rational map t -> a + t/(1-t).
IntegralResult integrate_to_inf(const std::function<double(double)>& f, double a,
                                const QuadratureOptions& opts = {});

/// Sum of an alternating-ish series s_0 + s_1 + ... by Euler transformation.
/// Used for oscillatory integrals split into half-period panels.
double euler_accelerate(const std::vector<double>& terms);

/// Integral of g(s)*sin(s*omega) over [a, b], computed panel-by-panel between
/// the zeros of the sine factor with Euler acceleration of the panel sums.
IntegralResult integrate_oscillatory_sin(const std::function<double(double)>& g,
                                         double omega, double a, double b,
                                         const QuadratureOptions& opts = {});

}  // namespace hrcm
