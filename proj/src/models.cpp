#include "hrcm/models.hpp"

#include "hrcm/geometry.hpp"
#include "hrcm/transform.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hrcm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double heat_phi(const HeatKernel3& h, double r) {
    double front = h.amplitude / std::pow(2.0 * kPi * h.L, 1.5);
    double sinc = (r < 1e-8) ? 1.0 - r * r / 6.0 : r / std::sinh(r);
    return front * sinc * std::exp(-0.5 * h.L - 0.5 * r * r / h.L);
}

double custom_phi(const CustomRadial& c, double r) {
    if (r > c.table.range()) return 0.0;
    return std::clamp(c.table.interpolated(r), 0.0, 1.0);
}

}  // namespace

double default_heat_amplitude(double L) {
    return std::pow(2.0 * kPi * L, 1.5) * std::exp(0.5 * L);
}

AdjacencySpec boolean_spec(int d, double L) {
    AdjacencySpec s{d, BooleanDisc{L}};
    s.validate();
    return s;
}

AdjacencySpec heat_spec(double L, double amplitude) {
    if (amplitude <= 0.0) amplitude = default_heat_amplitude(L);
    AdjacencySpec s{3, HeatKernel3{L, amplitude}};
    s.validate();
    return s;
}

AdjacencySpec custom_spec(int d, RadialFunction table) {
    table.d = d;
    AdjacencySpec s{d, CustomRadial{std::move(table)}};
    s.validate();
    return s;
}

void AdjacencySpec::validate() const {
    check_dimension(d);
    if (const auto* b = std::get_if<BooleanDisc>(&family)) {
        if (!(b->L > 0.0)) throw std::invalid_argument("BooleanDisc: L must be positive");
    } else if (const auto* h = std::get_if<HeatKernel3>(&family)) {
        if (d != 3) throw std::invalid_argument("HeatKernel3: requires d = 3");
        if (!(h->L > 0.0)) throw std::invalid_argument("HeatKernel3: L must be positive");
        double cap = default_heat_amplitude(h->L);
        if (!(h->amplitude > 0.0) || h->amplitude > cap * (1.0 + 1e-12))
            throw std::invalid_argument("HeatKernel3: amplitude outside (0, (2 pi L)^{3/2} e^{L/2}]");
    } else {
        const auto& c = std::get<CustomRadial>(family);
        if (c.table.grid.size() < 2) throw std::invalid_argument("CustomRadial: table too short");
        for (double v : c.table.values)
            if (v < -1e-12 || v > 1.0 + 1e-12)
                throw std::invalid_argument("CustomRadial: values must lie in [0, 1]");
    }
}

double phi(const AdjacencySpec& spec, double r) {
    if (r < 0.0) throw std::domain_error("phi: negative radius");
    if (const auto* b = std::get_if<BooleanDisc>(&spec.family)) return r < b->L ? 1.0 : 0.0;
    if (const auto* h = std::get_if<HeatKernel3>(&spec.family)) return heat_phi(*h, r);
    return custom_phi(std::get<CustomRadial>(spec.family), r);
}

double norm_1to1(const AdjacencySpec& spec) {
    spec.validate();
    if (const auto* b = std::get_if<BooleanDisc>(&spec.family))
        return sphere_constant(spec.d) * sinh_power_integral(spec.d, b->L);
    if (const auto* h = std::get_if<HeatKernel3>(&spec.family)) return h->amplitude;
    const auto& c = std::get<CustomRadial>(spec.family);
    auto g = [&](double r) { return custom_phi(c, r); };
    IntegralResult res = radial_integral(g, spec.d, c.table.range(), c.table.jumps);
    if (!(res.value > 0.0))
        throw std::domain_error("norm_1to1: adjacency function integrates to zero");
    return res.value;
}

double norm_2to2(const AdjacencySpec& spec) {
    spec.validate();
    if (const auto* h = std::get_if<HeatKernel3>(&spec.family))
        return h->amplitude * std::exp(-0.5 * h->L);
    // phi~(0) = S_{d-1} int phi(r) Q_d(r) sinh^{d-1}(r) dr
    auto g = [&](double r) { return phi(spec, r) * q_function(spec.d, r); };
    double r_max;
    std::vector<double> breaks;
    if (const auto* b = std::get_if<BooleanDisc>(&spec.family)) {
        r_max = b->L;
    } else {
        const auto& c = std::get<CustomRadial>(spec.family);
        r_max = c.table.range();
        breaks = c.table.jumps;
    }
    return radial_integral(g, spec.d, r_max, breaks).value;
}

double effective_range(const AdjacencySpec& spec, double eps) {
    spec.validate();
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("effective_range: eps in (0,1)");
    if (const auto* b = std::get_if<BooleanDisc>(&spec.family)) return b->L;
    if (const auto* c = std::get_if<CustomRadial>(&spec.family)) return c->table.range();

    const auto& h = std::get<HeatKernel3>(spec.family);
    double target = eps * h.amplitude;
    auto integrand = [&](double r) { return heat_phi(h, r) * std::sinh(r) * std::sinh(r); };
    double S = sphere_constant(3);
    // The Gaussian factor makes everything beyond L + 12 sqrt(L) + 40 weightless.
    double hi = h.L + 12.0 * std::sqrt(h.L) + 40.0;
    auto tail = [&](double r) { return S * integrate(integrand, r, hi).value; };
    if (tail(0.0) <= 0.0) throw std::domain_error("effective_range: degenerate kernel");
    double lo = 0.0;
    double up = hi;
    for (int it = 0; it < 80 && up - lo > 1e-9 * (1.0 + up); ++it) {
        double mid = 0.5 * (lo + up);
        if (tail(mid) > target)
            lo = mid;
        else
            up = mid;
    }
    return up;
}

RadialFunction radial_profile(const AdjacencySpec& spec, int nodes, double eps) {
    spec.validate();
    double r_max = effective_range(spec, eps);
    std::vector<double> jumps;
    if (const auto* b = std::get_if<BooleanDisc>(&spec.family)) jumps.push_back(b->L);
    if (const auto* c = std::get_if<CustomRadial>(&spec.family))
        jumps = c->table.jumps;
    std::vector<double> grid = graded_grid(r_max, nodes, jumps);
    AdjacencySpec copy = spec;
    return make_radial_exact(
        spec.d, [copy](double r) { return phi(copy, r); }, std::move(grid), RadialTail::Zero,
        std::move(jumps));
}

nlohmann::ordered_json spec_to_json(const AdjacencySpec& spec) {
    nlohmann::ordered_json j;
    j["d"] = spec.d;
    if (const auto* b = std::get_if<BooleanDisc>(&spec.family)) {
        j["family"] = "boolean";
        j["L"] = b->L;
        j["amplitude"] = nullptr;
        j["table"] = nullptr;
    } else if (const auto* h = std::get_if<HeatKernel3>(&spec.family)) {
        j["family"] = "heat3";
        j["L"] = h->L;
        j["amplitude"] = h->amplitude;
        j["table"] = nullptr;
    } else {
        const auto& c = std::get<CustomRadial>(spec.family);
        j["family"] = "custom";
        j["L"] = nullptr;
        j["amplitude"] = nullptr;
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < c.table.grid.size(); ++i)
            rows.push_back({c.table.grid[i], c.table.values[i]});
        j["table"] = rows;
    }
    return j;
}

AdjacencySpec spec_from_json(const nlohmann::json& j) {
    for (const auto& [key, _] : j.items()) {
        if (key != "d" && key != "family" && key != "L" && key != "amplitude" && key != "table")
            throw std::invalid_argument("AdjacencySpec: unknown key '" + key + "'");
    }
    int d = j.at("d").get<int>();
    std::string family = j.at("family").get<std::string>();
    if (family == "boolean") return boolean_spec(d, j.at("L").get<double>());
    if (family == "heat3") {
        double A = 0.0;
        if (j.contains("amplitude") && !j["amplitude"].is_null())
            A = j["amplitude"].get<double>();
        double L = j.at("L").get<double>();
        return heat_spec(L, A > 0.0 ? A : default_heat_amplitude(L));
    }
    if (family == "custom") {
        const auto& rows = j.at("table");
        std::vector<double> grid, vals;
        for (const auto& row : rows) {
            grid.push_back(row.at(0).get<double>());
            vals.push_back(row.at(1).get<double>());
        }
        return custom_spec(d, make_radial(d, std::move(grid), std::move(vals)));
    }
    throw std::invalid_argument("AdjacencySpec: unknown family '" + family + "'");
}

}  // namespace hrcm
