#pragma once

#include "hrcm/quadrature.hpp"
#include "hrcm/radial_function.hpp"

namespace hrcm {

/// Spherical transform of a radial profile, tabulated on an s-grid.
/// Values are real for real isometry-invariant kernels; linear interpolation
/// between nodes, zero beyond the grid.
struct SpectralFunction {
    std::vector<double> s_grid;
    std::vector<double> values;

    double operator()(double s) const;
};

/// Spherical function at spectral parameter 0; equals r/sinh(r) for d = 3,
/// angular quadrature otherwise. Q_d(0) = 1.
double q_function(int d, double r);

/// d = 3 spherical transform: f~(s) = (4 pi / s) int f(r) sin(sr) sinh(r) dr.
SpectralFunction sph_transform_d3(const RadialFunction& f, const std::vector<double>& s_grid);

/// d = 3 inverse: f(r) = (1 / (2 pi^2 sinh r)) int s F(s) sin(sr) ds.
RadialFunction sph_inverse_d3(const SpectralFunction& F, const std::vector<double>& r_grid);

/// Radial convolution by direct polar quadrature (any d >= 2):
/// (f*g)(r) = S_{d-2} int int f(c(r,s,theta)) g(s) sinh^{d-1}(s) sin^{d-2}(theta) dtheta ds
/// with cosh c = cosh(r-s) + 2 sinh(r) sinh(s) sin^2(theta/2).
RadialFunction convolve_radial(const RadialFunction& f, const RadialFunction& g, int threads = 0);

/// k-fold convolution power of f (k >= 1).
RadialFunction convolution_power(const RadialFunction& f, int k, int threads = 0);

/// S_{d-1} int prod_i f_i(r) sinh^{d-1}(r) dr over the common support.
IntegralResult radial_product_integral(const std::vector<const RadialFunction*>& fs, int d);

/// Loop diagram f^{*n}(o,o), computed as the radial integral of
/// f^{*floor(n/2)} . f^{*ceil(n/2)}.
double loop_value(const RadialFunction& f, int n, int threads = 0);

/// Run body(i) for i in [0, n), optionally across threads. The work items must
/// be independent; results are schedule-independent by construction.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace hrcm
