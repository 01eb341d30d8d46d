#include "hrcm/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>

namespace hrcm {

namespace {

using PanelRule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    Panel p{a, b, 0.0, 0.0};
    // max_depth = 0: a single 15-point Kronrod rule, error from the embedded Gauss rule.
    p.value = PanelRule::integrate(f, a, b, 0, 0.0, &p.error);
    if (!std::isfinite(p.value))
        throw IntegrationError("non-finite integrand on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "]");
    return p;
}

struct WorstFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;  // deterministic tie-break
    }
};

IntegralResult adapt(const std::function<double(double)>& f, std::vector<double> edges,
                     const QuadratureOptions& opts) {
    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
    double sum_value = 0.0, sum_error = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] > edges[i]) {
            Panel p = eval_panel(f, edges[i], edges[i + 1]);
            sum_value += p.value;
            sum_error += p.error;
            queue.push(p);
        }
    }
    if (queue.empty()) return {0.0, 0.0};

    int panels = static_cast<int>(queue.size());
    std::vector<Panel> done;

    while (!queue.empty()) {
        double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(sum_value));
        if (sum_error <= tol) break;
        if (panels >= opts.max_panels) {
            if (opts.throw_on_failure)
                throw IntegrationError("quadrature did not converge: error " +
                                       std::to_string(sum_error) + " > tol " + std::to_string(tol));
            break;
        }
        Panel worst = queue.top();
        queue.pop();
        double tol_here = tol * (worst.b - worst.a) /
                          std::max(edges.back() - edges.front(), worst.b - worst.a);
        if (worst.error <= std::max(tol_here, 0.25 * opts.abs_tol)) {
            done.push_back(worst);
            continue;
        }
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at machine resolution
            done.push_back(worst);
            continue;
        }
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        sum_value += left.value + right.value - worst.value;
        sum_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    while (!queue.empty()) { done.push_back(queue.top()); queue.pop(); }
    // Fixed summation order (by position) so the result does not depend on the
    // order panels were retired in.
    std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    IntegralResult out;
    double comp = 0.0;  // Neumaier compensation
    for (const auto& p : done) {
        double t = out.value + p.value;
        if (std::abs(out.value) >= std::abs(p.value))
            comp += (out.value - t) + p.value;
        else
            comp += (p.value - t) + out.value;
        out.value = t;
        out.error += p.error;
    }
    out.value += comp;
    return out;
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureOptions& opts) {
    return integrate(f, a, b, {}, opts);
}

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const std::vector<double>& breakpoints, const QuadratureOptions& opts) {
    if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
    if (a == b) return {0.0, 0.0};
    std::vector<double> edges{a};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return adapt(f, std::move(edges), opts);
}

IntegralResult integrate_to_inf(const std::function<double(double)>& f, double a,
                                const QuadratureOptions& opts) {
    auto mapped = [&f, a](double t) {
        double u = 1.0 - t;
        double x = a + t / u;
        return f(x) / (u * u);
    };
    // Stop just short of t=1; the omitted sliver is below machine weight for
    // integrands that decay (precondition of every caller).
    return integrate(mapped, 0.0, 1.0 - 1e-14, {0.5, 0.9, 0.99}, opts);
}

IntegralResult integrate_oscillatory_sin(const std::function<double(double)>& g, double omega,
                                         double a, double b, const QuadratureOptions& opts) {
    if (!(b >= a)) throw std::invalid_argument("integrate_oscillatory_sin: b < a");
    auto f = [&g, omega](double s) { return g(s) * std::sin(s * omega); };
    const double pi = 3.14159265358979323846;
    if (omega <= 0.0 || (b - a) * omega < 8.0 * pi) {
        return integrate(f, a, b, opts);
    }
    // Half-period panels between the zeros of the sine factor, summed exactly
    // with compensation. The caller chooses b so the omitted tail is
    // negligible; panels never straddle a sign change.
    double period = pi / omega;
    QuadratureOptions panel_opts = opts;
    panel_opts.throw_on_failure = false;
    panel_opts.abs_tol = 0.0;
    panel_opts.rel_tol = std::min(opts.rel_tol, 1e-10);
    double sum = 0.0, comp = 0.0, err = 0.0;
    double lo = a;
    std::size_t k = static_cast<std::size_t>(std::floor(a / period)) + 1;
    while (lo < b) {
        double hi = std::min(b, static_cast<double>(k) * period);
        ++k;
        if (hi <= lo) continue;
        IntegralResult piece = integrate(f, lo, hi, panel_opts);
        double t = sum + piece.value;
        if (std::abs(sum) >= std::abs(piece.value))
            comp += (sum - t) + piece.value;
        else
            comp += (piece.value - t) + sum;
        sum = t;
        err += piece.error;
        lo = hi;
    }
    return {sum + comp, err};
}

}  // namespace hrcm
