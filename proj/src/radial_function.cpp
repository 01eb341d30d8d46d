#include "hrcm/radial_function.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hrcm {

namespace {

// Fritsch-Carlson monotone-cubic derivatives.
std::vector<double> pchip_derivatives(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> h(n - 1), slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        slope[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = slope[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (slope[i - 1] * slope[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double s0, double s1) {
        double dv = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (dv * s0 <= 0.0) return 0.0;
        if (s0 * s1 < 0.0 && std::abs(dv) > 3.0 * std::abs(s0)) return 3.0 * s0;
        return dv;
    };
    d[0] = endpoint(h[0], h[1], slope[0], slope[1]);
    d[n - 1] = endpoint(h[n - 2], h[n - 3], slope[n - 2], slope[n - 3]);
    return d;
}

}  // namespace

double RadialFunction::interpolated(double r) const {
    if (grid.empty()) return 0.0;
    if (r <= grid.front()) return values.front();
    if (r >= grid.back()) {
        if (r == grid.back()) return values.back();
        if (tail == RadialTail::Zero) return 0.0;
        // Exponential continuation fitted to the last two nodes.
        std::size_t n = grid.size();
        double v1 = values[n - 2], v2 = values[n - 1];
        if (!(v1 > 0.0 && v2 > 0.0 && v2 < v1)) return 0.0;
        double k = std::log(v1 / v2) / (grid[n - 1] - grid[n - 2]);
        return v2 * std::exp(-k * (r - grid[n - 1]));
    }
    auto it = std::upper_bound(grid.begin(), grid.end(), r);
    std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
    double h = grid[i + 1] - grid[i];
    double t = (r - grid[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    double h10 = t3 - 2.0 * t2 + t;
    double h01 = -2.0 * t3 + 3.0 * t2;
    double h11 = t3 - t2;
    return h00 * values[i] + h10 * h * deriv[i] + h01 * values[i + 1] + h11 * h * deriv[i + 1];
}

double RadialFunction::operator()(double r) const {
    if (exact) return exact(r);
    return interpolated(r);
}

RadialFunction make_radial(int d, std::vector<double> grid, std::vector<double> values,
                           RadialTail tail, std::vector<double> jumps) {
    if (grid.size() != values.size()) throw std::invalid_argument("make_radial: size mismatch");
    if (grid.size() < 2) throw std::invalid_argument("make_radial: need at least two nodes");
    if (grid.front() != 0.0) throw std::invalid_argument("make_radial: grid must start at 0");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i + 1] > grid[i]))
            throw std::invalid_argument("make_radial: grid must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("make_radial: non-finite value");
    RadialFunction f;
    f.d = d;
    f.grid = std::move(grid);
    f.values = std::move(values);
    f.tail = tail;
    f.jumps = std::move(jumps);
    f.deriv = pchip_derivatives(f.grid, f.values);
    return f;
}

RadialFunction make_radial_exact(int d, std::function<double(double)> fn,
                                 std::vector<double> grid, RadialTail tail,
                                 std::vector<double> jumps) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = fn(grid[i]);
    RadialFunction f = make_radial(d, std::move(grid), std::move(values), tail, std::move(jumps));
    f.exact = std::move(fn);
    return f;
}

std::vector<double> graded_grid(double r_max, int n, const std::vector<double>& refine_at) {
    if (!(r_max > 0.0)) throw std::invalid_argument("graded_grid: r_max must be positive");
    if (n < 16) n = 16;
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n) + 16 * refine_at.size());
    // Power grading: denser near 0.
    for (int i = 0; i <= n; ++i) {
        double u = static_cast<double>(i) / n;
        g.push_back(r_max * std::pow(u, 1.5));
    }
    // Geometric clusters straddling each refinement point.
    for (double c : refine_at) {
        if (!(c > 0.0 && c < r_max)) continue;
        double w = r_max / n;
        for (int j = 0; j < 8; ++j) {
            g.push_back(c - w);
            g.push_back(c + w);
            w *= 0.25;
        }
        g.push_back(c);
    }
    std::sort(g.begin(), g.end());
    std::vector<double> out;
    out.reserve(g.size());
    double min_sep = r_max * 1e-12;
    for (double x : g) {
        if (x < 0.0 || x > r_max) continue;
        if (out.empty() || x - out.back() > min_sep) out.push_back(x);
    }
    if (out.front() != 0.0) out.insert(out.begin(), 0.0);
    if (out.back() < r_max) out.push_back(r_max);
    return out;
}

std::string radial_to_csv(const RadialFunction& f) {
    std::string out = "r,value\n";
    char buf[64];
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", f.grid[i], f.values[i]);
        out += buf;
    }
    return out;
}

RadialFunction radial_from_csv(const std::string& csv, int d) {
    std::istringstream in(csv);
    std::string line;
    std::vector<double> grid, values;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {  // header
            first = false;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("radial_from_csv: bad row");
        grid.push_back(std::stod(line.substr(0, comma)));
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    return make_radial(d, std::move(grid), std::move(values));
}

std::string radial_to_json(const RadialFunction& f) {
    nlohmann::ordered_json j;
    j["d"] = f.d;
    j["grid"] = f.grid;
    j["values"] = f.values;
    return j.dump();
}

RadialFunction radial_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    return make_radial(j.at("d").get<int>(), j.at("grid").get<std::vector<double>>(),
                       j.at("values").get<std::vector<double>>());
}

}  // namespace hrcm
