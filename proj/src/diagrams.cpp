#include "hrcm/diagrams.hpp"

#include "hrcm/geometry.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hrcm {

namespace {

// E(L) integrand positive part; drop_first_term selects the E*(L) variant.
double positive_part_integral(const ProfilePowers& p, int d, double norm1, double C,
                              bool drop_first_term) {
    const RadialFunction& f = p.f;
    const RadialFunction& f2 = p.f2;
    double r_max = f2.range();
    auto integrand = [&](double r) {
        double v2 = f2(r);
        double v1 = f(r);
        double e = (C * C / (2.0 * norm1 * norm1)) * v2 * v2 - 0.5 * v1;
        if (!drop_first_term) e += (C / norm1) * v2 * v1;
        return e > 0.0 ? e : 0.0;
    };
    std::vector<double> breaks = f.jumps;
    for (double j : f.jumps) breaks.push_back(2.0 * j);
    breaks.push_back(f.range());
    // Seed panels across the short scale where the positive part lives.
    for (double b = 0.25; b < r_max; b *= 2.0) breaks.push_back(b);
    QuadratureOptions opts;
    opts.abs_tol = 1e-14 * norm1;
    opts.rel_tol = 1e-8;
    opts.throw_on_failure = false;
    IntegralResult res = radial_integral(integrand, d, r_max, breaks, opts);
    return res.value / norm1;
}

}  // namespace

ProfilePowers ProfilePowers::compute(const AdjacencySpec& spec, int threads, int nodes) {
    ProfilePowers p;
    p.f = radial_profile(spec, nodes);
    p.f2 = convolve_radial(p.f, p.f, threads);
    p.f3 = convolve_radial(p.f2, p.f, threads);
    return p;
}

const RadialFunction& ProfilePowers::power(int n) const {
    switch (n) {
        case 1: return f;
        case 2: return f2;
        case 3: return f3;
        default: throw std::invalid_argument("ProfilePowers: power not precomputed");
    }
}

double mixed_diagram(const ProfilePowers& powers, int d, int n1, int n2, int n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1)
        throw std::invalid_argument("mixed_diagram: orders must be >= 1");
    return radial_product_integral(
               {&powers.power(n1), &powers.power(n2), &powers.power(n3)}, d)
        .value;
}

double mixed_diagram(const AdjacencySpec& spec, int n1, int n2, int n3, int threads) {
    int top = std::max({n1, n2, n3});
    if (top > 3) throw std::invalid_argument("mixed_diagram: orders beyond 3 not supported");
    ProfilePowers p = ProfilePowers::compute(spec, threads);
    return mixed_diagram(p, spec.d, n1, n2, n3);
}

double beta(const AdjacencySpec& spec, int threads) {
    ProfilePowers p = ProfilePowers::compute(spec, threads);
    double n1 = norm_1to1(spec);
    double n2 = norm_2to2(spec);
    double loop2 = radial_product_integral({&p.f, &p.f}, spec.d).value;
    return std::sqrt((n2 / n1) * (loop2 / n1));
}

double omega(const AdjacencySpec& spec, int threads) {
    return diagram_report(spec, 2.0, threads).omega;
}

double error_E(const AdjacencySpec& spec, double C, int threads) {
    if (!(C > 0.0)) throw std::invalid_argument("error_E: C must be positive");
    ProfilePowers p = ProfilePowers::compute(spec, threads);
    return positive_part_integral(p, spec.d, norm_1to1(spec), C, false);
}

double error_E_star(const AdjacencySpec& spec, double C, int threads) {
    if (!(C > 0.0)) throw std::invalid_argument("error_E_star: C must be positive");
    ProfilePowers p = ProfilePowers::compute(spec, threads);
    return positive_part_integral(p, spec.d, norm_1to1(spec), C, true);
}

DiagramReport diagram_report(const AdjacencySpec& spec, double C, int threads) {
    spec.validate();
    if (!(C > 0.0)) throw std::invalid_argument("diagram_report: C must be positive");
    DiagramReport rep;
    rep.spec = spec;
    rep.C_used = C;
    rep.norm1 = norm_1to1(spec);
    rep.norm2 = norm_2to2(spec);

    ProfilePowers p = ProfilePowers::compute(spec, threads);
    auto prod = [&](std::vector<const RadialFunction*> fs) {
        return radial_product_integral(fs, spec.d).value;
    };
    rep.loops[2] = prod({&p.f, &p.f});
    rep.loops[3] = prod({&p.f, &p.f2});
    rep.loops[4] = prod({&p.f2, &p.f2});
    rep.loops[5] = prod({&p.f2, &p.f3});
    rep.loops[6] = prod({&p.f3, &p.f3});
    rep.mixed[{2, 2, 1}] = mixed_diagram(p, spec.d, 2, 2, 1);
    rep.mixed[{1, 2, 2}] = mixed_diagram(p, spec.d, 1, 2, 2);
    rep.mixed[{2, 2, 2}] = mixed_diagram(p, spec.d, 2, 2, 2);

    rep.beta = std::sqrt((rep.norm2 / rep.norm1) * (rep.loops[2] / rep.norm1));
    double n1 = rep.norm1;
    rep.omega = rep.mixed[{2, 2, 1}] / (n1 * n1 * n1) + rep.loops[5] / (n1 * n1 * n1 * n1) +
                rep.mixed[{2, 2, 2}] / (n1 * n1 * n1 * n1) +
                rep.loops[6] / (n1 * n1 * n1 * n1 * n1);
    rep.errE = positive_part_integral(p, spec.d, n1, C, false);
    rep.errEstar = positive_part_integral(p, spec.d, n1, C, true);
    return rep;
}

nlohmann::ordered_json report_to_json(const DiagramReport& rep) {
    nlohmann::ordered_json j;
    j["spec"] = spec_to_json(rep.spec);
    j["norm1"] = rep.norm1;
    j["norm2"] = rep.norm2;
    nlohmann::ordered_json loops;
    for (const auto& [n, v] : rep.loops) loops[std::to_string(n)] = v;
    j["loops"] = std::move(loops);
    auto mixed = nlohmann::ordered_json::array();
    for (const auto& [k, v] : rep.mixed)
        mixed.push_back({{"n", {k[0], k[1], k[2]}}, {"value", v}});
    j["mixed"] = std::move(mixed);
    j["beta"] = rep.beta;
    j["omega"] = rep.omega;
    j["errE"] = rep.errE;
    j["errEstar"] = rep.errEstar;
    j["C_used"] = rep.C_used;
    return j;
}

std::string report_to_table(const DiagramReport& rep) {
    std::string out;
    char buf[128];
    auto row = [&](const char* name, double v) {
        std::snprintf(buf, sizeof(buf), "%-22s %.12g\n", name, v);
        out += buf;
    };
    row("norm_1to1", rep.norm1);
    row("norm_2to2", rep.norm2);
    for (const auto& [n, v] : rep.loops) {
        std::snprintf(buf, sizeof(buf), "loop[%d]", n);
        std::string name = buf;
        row(name.c_str(), v);
    }
    for (const auto& [k, v] : rep.mixed) {
        std::snprintf(buf, sizeof(buf), "mixed[%d,%d,%d]", k[0], k[1], k[2]);
        std::string name = buf;
        row(name.c_str(), v);
    }
    row("beta", rep.beta);
    row("omega", rep.omega);
    row("E", rep.errE);
    row("E_star", rep.errEstar);
    row("C_used", rep.C_used);
    return out;
}

}  // namespace hrcm
