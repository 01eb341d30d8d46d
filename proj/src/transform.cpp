#include "hrcm/transform.hpp"

#include "hrcm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hrcm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere_measure(int k) {  // measure of S^k, k >= 0
    return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t nthreads = std::min<std::size_t>(threads, n);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nthreads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

double q_function(int d, double r) {
    check_dimension(d);
    if (r < 0.0) throw std::domain_error("q_function: negative radius");
    if (r == 0.0) return 1.0;
    if (d == 3) return r / std::sinh(r);
    double t = std::tanh(0.5 * r);
    double omt2 = 1.0 - t * t;  // = sech^2(r/2), positive
    auto integrand = [&](double theta) {
        double s = std::sin(0.5 * theta);
        double denom = omt2 + 4.0 * t * s * s;  // |z - b|^2 rewritten without cancellation
        double base = omt2 / denom;
        double w = (d == 2) ? 1.0 : std::pow(std::sin(theta), d - 2);
        return std::pow(base, 0.5 * (d - 1)) * w;
    };
    // The integrand peaks at theta = 0 with width ~ e^{-r}; seed the panels there.
    std::vector<double> breaks;
    for (double sc : {1.0, 8.0, 64.0, 512.0}) {
        double b = sc * omt2;
        if (b < 2.0) breaks.push_back(b);
    }
    breaks.push_back(0.5);
    breaks.push_back(1.5);
    IntegralResult res = integrate(integrand, 0.0, kPi, breaks);
    double front = (d == 2 ? 2.0 : sphere_measure(d - 2)) / sphere_constant(d);
    return front * res.value;
}

SpectralFunction sph_transform_d3(const RadialFunction& f, const std::vector<double>& s_grid) {
    if (f.d != 3) throw std::invalid_argument("sph_transform_d3: profile must have d = 3");
    if (f.grid.empty()) throw std::invalid_argument("sph_transform_d3: empty profile");
    double r_max = f.range();
    auto g = [&f](double r) { return f(r) * std::sinh(r); };
    QuadratureOptions opts;
    opts.rel_tol = 1e-11;
    SpectralFunction out;
    out.s_grid = s_grid;
    out.values.resize(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        double s = s_grid[i];
        if (s < 0.0) throw std::invalid_argument("sph_transform_d3: negative spectral parameter");
        if (s < 1e-12) {
            // limit kernel sin(sr)/s -> r
            auto g0 = [&f](double r) { return f(r) * r * std::sinh(r); };
            out.values[i] = 4.0 * kPi * integrate(g0, 0.0, r_max, f.jumps, opts).value;
        } else {
            IntegralResult res = integrate_oscillatory_sin(g, s, 0.0, r_max, opts);
            out.values[i] = 4.0 * kPi / s * res.value;
        }
    }
    return out;
}

double SpectralFunction::operator()(double s) const {
    if (s_grid.empty()) return 0.0;
    if (s <= s_grid.front()) return values.front();
    if (s >= s_grid.back()) return 0.0;
    auto it = std::upper_bound(s_grid.begin(), s_grid.end(), s);
    std::size_t i = static_cast<std::size_t>(it - s_grid.begin()) - 1;
    double w = (s - s_grid[i]) / (s_grid[i + 1] - s_grid[i]);
    return (1.0 - w) * values[i] + w * values[i + 1];
}

RadialFunction sph_inverse_d3(const SpectralFunction& F, const std::vector<double>& r_grid) {
    if (F.s_grid.empty()) throw std::invalid_argument("sph_inverse_d3: empty spectrum");
    double s_max = F.s_grid.back();
    auto g = [&F](double s) { return s * F(s); };
    QuadratureOptions opts;
    opts.rel_tol = 1e-10;
    opts.max_panels = 40000;
    std::vector<double> vals(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double r = r_grid[i];
        if (r < 0.0) throw std::invalid_argument("sph_inverse_d3: negative radius");
        if (r < 1e-12) {
            auto g0 = [&F](double s) { return s * s * F(s); };
            vals[i] = integrate(g0, 0.0, s_max, opts).value / (2.0 * kPi * kPi);
        } else {
            IntegralResult res = integrate_oscillatory_sin(g, r, 0.0, s_max, opts);
            vals[i] = res.value / (2.0 * kPi * kPi * std::sinh(r));
        }
    }
    std::vector<double> grid = r_grid;
    return make_radial(3, std::move(grid), std::move(vals));
}

RadialFunction convolve_radial(const RadialFunction& f, const RadialFunction& g, int threads) {
    if (f.d != g.d) throw std::invalid_argument("convolve_radial: dimension mismatch");
    const int d = f.d;
    check_dimension(d);
    const double Rf = f.range(), Rg = g.range();
    if (Rf <= 0.0 || Rg <= 0.0) throw std::invalid_argument("convolve_radial: empty profile");
    const double Sdm2 = (d == 2) ? 2.0 : sphere_measure(d - 2);

    // Radii where f effectively jumps (declared jumps plus the support end).
    std::vector<double> f_cuts = f.jumps;
    f_cuts.push_back(Rf);
    std::vector<double> g_cuts = g.jumps;
    g_cuts.push_back(Rg);

    // Output grid: denser near 0 and near images of the cut radii.
    std::vector<double> refine;
    for (double a : f_cuts)
        for (double b : g_cuts) {
            refine.push_back(a + b);
            refine.push_back(std::abs(a - b));
        }
    const int n_nodes = 2048;
    std::vector<double> out_grid = graded_grid(Rf + Rg, n_nodes, refine);

    QuadratureOptions inner;
    inner.abs_tol = 0.0;
    inner.rel_tol = 1e-9;
    inner.max_panels = 4000;
    inner.throw_on_failure = false;

    auto theta_integral = [&](double r, double s) {
        if (r + s <= 0.0) return f(0.0) * ((d == 2) ? kPi : sphere_measure(d - 1) / Sdm2);
        double shr_shs = std::sinh(r) * std::sinh(s);
        double ch_diff = std::cosh(r - s);
        auto c_of = [&](double theta) {
            double sn = std::sin(0.5 * theta);
            double ch = ch_diff + 2.0 * shr_shs * sn * sn;
            return std::acosh(std::max(1.0, ch));
        };
        auto integrand = [&](double theta) {
            double w = (d == 2) ? 1.0 : std::pow(std::sin(theta), d - 2);
            return f(c_of(theta)) * w;
        };
        // Split at the angular pre-image of each f cut radius.
        std::vector<double> breaks;
        for (double c : f_cuts) {
            double s2 = (std::cosh(c) - ch_diff) / (2.0 * shr_shs);
            if (s2 > 0.0 && s2 < 1.0) breaks.push_back(2.0 * std::asin(std::sqrt(s2)));
        }
        return integrate(integrand, 0.0, kPi, breaks, inner).value;
    };

    QuadratureOptions outer;
    outer.abs_tol = 0.0;
    outer.rel_tol = 1e-9;
    outer.max_panels = 8000;
    outer.throw_on_failure = false;

    std::vector<double> out_vals(out_grid.size(), 0.0);
    parallel_for(out_grid.size(), threads, [&](std::size_t i) {
        double r = out_grid[i];
        double lo = std::max(0.0, r - Rf);
        double hi = std::min(Rg, r + Rf);
        if (hi <= lo) return;
        auto integrand = [&](double s) {
            return g(s) * std::pow(std::sinh(s), d - 1) * theta_integral(r, s);
        };
        std::vector<double> breaks;
        for (double c : f_cuts) {
            breaks.push_back(std::abs(r - c));
            breaks.push_back(r + c);
        }
        for (double c : g.jumps) breaks.push_back(c);
        out_vals[i] = Sdm2 * integrate(integrand, lo, hi, breaks, outer).value;
    });

    std::vector<double> out_jumps;  // convolution smooths the declared jumps away
    return make_radial(d, std::move(out_grid), std::move(out_vals), RadialTail::Zero,
                       std::move(out_jumps));
}

RadialFunction convolution_power(const RadialFunction& f, int k, int threads) {
    if (k < 1) throw std::invalid_argument("convolution_power: k must be >= 1");
    if (k == 1) return f;
    RadialFunction acc = convolve_radial(f, f, threads);
    for (int i = 3; i <= k; ++i) acc = convolve_radial(acc, f, threads);
    return acc;
}

IntegralResult radial_product_integral(const std::vector<const RadialFunction*>& fs,
                                       int d) {
    if (fs.empty()) throw std::invalid_argument("radial_product_integral: no factors");
    double r_max = fs[0]->range();
    std::vector<double> breaks;
    for (const auto* f : fs) {
        if (f->d != d) throw std::invalid_argument("radial_product_integral: dimension mismatch");
        r_max = std::min(r_max, f->range());
        for (double j : f->jumps) breaks.push_back(j);
    }
    auto g = [&fs](double r) {
        double v = 1.0;
        for (const auto* f : fs) v *= (*f)(r);
        return v;
    };
    QuadratureOptions opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-9;
    opts.throw_on_failure = false;
    return radial_integral(g, d, r_max, breaks, opts);
}

double loop_value(const RadialFunction& f, int n, int threads) {
    if (n < 2) throw std::invalid_argument("loop_value: n must be >= 2");
    // Split as (floor(n/2), ceil(n/2)) to keep the convolution depth minimal.
    int a = n / 2, b = n - a;
    RadialFunction pa = convolution_power(f, a, threads);
    if (a == b) return radial_product_integral({&pa, &pa}, f.d).value;
    RadialFunction pb = (b == a + 1 && a >= 2) ? convolve_radial(pa, f, threads)
                                               : convolution_power(f, b, threads);
    return radial_product_integral({&pa, &pb}, f.d).value;
}

}  // namespace hrcm
