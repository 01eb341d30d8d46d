#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hrcm {

enum class RadialTail { Zero, ExponentialFit };

/// A radial profile r -> f(r) on a quadrature grid; the currency of the
/// convolution engine. An optional analytic evaluator makes model profiles
/// exact; grid + monotone-cubic interpolation is the fallback (and the only
/// form that survives serialization).
struct RadialFunction {
    int d = 3;
    std::vector<double> grid;    // strictly increasing, grid[0] == 0
    std::vector<double> values;  // finite
    RadialTail tail = RadialTail::Zero;
    std::vector<double> jumps;  // declared discontinuity radii (quadrature splits)

    std::function<double(double)> exact;  // optional, overrides interpolation
    std::vector<double> deriv;            // interpolation derivatives

    double operator()(double r) const;
    double range() const { return grid.empty() ? 0.0 : grid.back(); }
    double interpolated(double r) const;  // ignore `exact`, evaluate the grid
};

/// Build a RadialFunction from samples; validates the grid and precomputes
/// monotone-cubic (Fritsch-Carlson) derivatives.
RadialFunction make_radial(int d, std::vector<double> grid, std::vector<double> values,
                           RadialTail tail = RadialTail::Zero, std::vector<double> jumps = {});

/// Sample a callable onto a grid, keeping it as the exact evaluator.
RadialFunction make_radial_exact(int d, std::function<double(double)> f,
                                 std::vector<double> grid, RadialTail tail = RadialTail::Zero,
                                 std::vector<double> jumps = {});

/// n nodes on [0, r_max], denser near 0 and near each refine point.
std::vector<double> graded_grid(double r_max, int n, const std::vector<double>& refine_at = {});

std::string radial_to_csv(const RadialFunction& f);
RadialFunction radial_from_csv(const std::string& csv, int d);
std::string radial_to_json(const RadialFunction& f);
RadialFunction radial_from_json(const std::string& json_text);

}  // namespace hrcm
