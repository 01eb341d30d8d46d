#include "hrcm/asymptotics.hpp"

#include "hrcm/diagrams.hpp"
#include "hrcm/geometry.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hrcm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere_measure(int k) {  // S^k measure, k >= 0
    return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

}  // namespace

ExpansionReport general_expansion(const AdjacencySpec& spec, double C, int N, int threads) {
    if (N < 1) throw std::invalid_argument("general_expansion: N must be >= 1");
    DiagramReport d = diagram_report(spec, C, threads);
    double n1 = d.norm1;
    double t3 = d.loops.at(3) / (n1 * n1);
    double t4 = 1.5 * d.loops.at(4) / (n1 * n1 * n1);
    ExpansionReport rep;
    rep.model = "general";
    rep.leading = 1.0;
    rep.correction_terms.push_back({"loop3/norm1^2", t3});
    rep.correction_terms.push_back({"(3/2) loop4/norm1^3", t4});
    rep.error_envelope.push_back({"(loop3/norm1^2)^2 [envelope, constant unknown]", t3 * t3});
    rep.error_envelope.push_back(
        {"(loop4/norm1^3)^2 [envelope, constant unknown]",
         (d.loops.at(4) / (n1 * n1 * n1)) * (d.loops.at(4) / (n1 * n1 * n1))});
    rep.error_envelope.push_back({"Omega [envelope, constant unknown]", d.omega});
    rep.error_envelope.push_back({"E [envelope, constant unknown]", d.errE});
    rep.error_envelope.push_back(
        {"beta^N [envelope, constant unknown]", std::pow(d.beta, N)});
    rep.predicted_expected_degree = 1.0 + t3 + t4;
    rep.predicted_lambda_c = rep.predicted_expected_degree / n1;
    return rep;
}

ExpansionReport boolean_expected_degree_expansion(int d, double L) {
    check_dimension(d);
    if (!(L > 0.0)) throw std::invalid_argument("boolean_expected_degree_expansion: L <= 0");
    double ratio = sphere_measure(d - 2) / sphere_constant(d);
    double rate = 0.5 * (d - 1) * L;
    double corr = ratio * std::pow(2.0, d + 2) / (d - 1) * std::exp(-rate);
    ExpansionReport rep;
    rep.model = "boolean expected degree (d=" + std::to_string(d) + ")";
    rep.leading = 1.0;
    rep.correction_terms.push_back(
        {"(S_{d-2}/S_{d-1}) 2^{d+2}/(d-1) e^{-(d-1)L/2}", corr});
    rep.error_envelope.push_back({"o(e^{-(d-1)L/2}) [envelope, constant unknown]",
                                  std::exp(-rate)});
    // Diagram asymptotics backing the expansion terms.
    double l4 = ratio * ratio * std::pow(2.0, 2 * d + 3) / (d - 1) * L *
                std::exp(-(d - 1) * L);
    rep.diagnostics.push_back({"loop3/norm1^2 ~ (same as correction)", corr});
    rep.diagnostics.push_back({"loop4/norm1^3 ~ (S/S)^2 2^{2d+3}/(d-1) L e^{-(d-1)L}", l4});
    rep.diagnostics.push_back(
        {"mixed(1,2,2)/norm1^3 ~ (S/S)^2 2^{2d+2}/(d-1) L e^{-(d-1)L}", 0.5 * l4});
    rep.predicted_expected_degree = 1.0 + corr;
    rep.predicted_lambda_c = rep.predicted_expected_degree / ball_volume(d, L);
    return rep;
}

ExpansionReport boolean_lambda_c_expansion(int d, double L) {
    check_dimension(d);
    if (!(L > 0.0)) throw std::invalid_argument("boolean_lambda_c_expansion: L <= 0");
    double prefactor =
        (d - 1) * std::pow(2.0, d - 1) / sphere_constant(d) * std::exp(-(d - 1) * L);
    double corr = 0.0;
    std::string formula;
    switch (d) {
        case 2: corr = 16.0 / kPi * std::exp(-0.5 * L); formula = "(16/pi) e^{-L/2}"; break;
        case 3: corr = 8.0 * std::exp(-L); formula = "8 e^{-L}"; break;
        case 4: corr = 128.0 / (3.0 * kPi) * std::exp(-1.5 * L); formula = "(128/(3 pi)) e^{-3L/2}"; break;
        case 5: corr = 32.0 * std::exp(-2.0 * L); formula = "32 e^{-2L}"; break;
        default:
            corr = static_cast<double>(d - 1) * (d - 1) / (d - 3) * std::exp(-2.0 * L);
            formula = "((d-1)^2/(d-3)) e^{-2L}";
            break;
    }
    ExpansionReport rep;
    rep.model = "boolean lambda_c (d=" + std::to_string(d) + ")";
    rep.leading = prefactor;
    rep.correction_terms.push_back({formula, corr});
    if (d == 5) {
        // The volume-correction term competes at the same order; report it too.
        rep.diagnostics.push_back({"volume correction (d-1)^2/(d-3) e^{-2L} (competing)",
                                   16.0 / 2.0 * std::exp(-2.0 * L)});
    }
    rep.error_envelope.push_back(
        {"o(correction) [envelope, constant unknown]", corr});
    rep.predicted_lambda_c = prefactor * (1.0 + corr);
    rep.predicted_expected_degree = rep.predicted_lambda_c * ball_volume(d, L);
    return rep;
}

ExpansionReport heat_expansion(double L, double A_L) {
    if (!(L > 0.0)) throw std::invalid_argument("heat_expansion: L <= 0");
    double cap = default_heat_amplitude(L);
    if (A_L <= 0.0) A_L = cap;
    if (A_L > cap * (1.0 + 1e-12))
        throw std::invalid_argument("heat_expansion: amplitude above (2 pi L)^{3/2} e^{L/2}");
    double t3 = A_L / std::pow(6.0 * kPi, 1.5) * std::pow(L, -1.5) * std::exp(-1.5 * L);
    double t4 = 1.5 * A_L / std::pow(8.0 * kPi, 1.5) * std::pow(L, -1.5) * std::exp(-2.0 * L);
    ExpansionReport rep;
    rep.model = "heat kernel (d=3)";
    rep.leading = 1.0;
    rep.correction_terms.push_back({"(A/(6 pi)^{3/2}) L^{-3/2} e^{-3L/2}", t3});
    rep.correction_terms.push_back({"(3/2)(A/(8 pi)^{3/2}) L^{-3/2} e^{-2L}", t4});
    rep.error_envelope.push_back({"O(A L^{-3/2} e^{-5L/2}) [envelope, constant unknown]",
                                  A_L * std::pow(L, -1.5) * std::exp(-2.5 * L)});
    rep.error_envelope.push_back({"O(A^2 L^{-9/2} e^{-5L/2}) [envelope, constant unknown]",
                                  A_L * A_L * std::pow(L, -4.5) * std::exp(-2.5 * L)});
    if (std::abs(A_L - cap) <= 1e-9 * cap) {
        // Normalised amplitude: the specialised display coefficients.
        rep.diagnostics.push_back({"specialised: (1/(3 sqrt 3)) e^{-L}",
                                   std::exp(-L) / (3.0 * std::sqrt(3.0))});
        rep.diagnostics.push_back(
            {"specialised: (3/16) e^{-3L/2}", 3.0 / 16.0 * std::exp(-1.5 * L)});
        rep.diagnostics.push_back(
            {"specialised leading: (1/(2 pi)^{3/2}) L^{-3/2} e^{-L/2}",
             std::pow(2.0 * kPi, -1.5) * std::pow(L, -1.5) * std::exp(-0.5 * L)});
    }
    rep.predicted_expected_degree = 1.0 + t3 + t4;
    rep.predicted_lambda_c = rep.predicted_expected_degree / A_L;
    return rep;
}

BooleanNormReport boolean_norm_closed_forms(int d, double L) {
    check_dimension(d);
    if (!(L > 0.0)) throw std::invalid_argument("boolean_norm_closed_forms: L <= 0");
    BooleanNormReport rep;
    rep.exact = sphere_constant(d) * sinh_power_integral(d, L);
    rep.leading = sphere_constant(d) / ((d - 1) * std::pow(2.0, d - 1)) * std::exp((d - 1) * L);
    if (d == 2) {
        rep.paper_correction = std::exp(-L);
        rep.correction_formula = "e^{-L}";
    } else if (d == 3) {
        rep.paper_correction = 4.0 * L * std::exp(-2.0 * L);
        rep.correction_formula = "4 L e^{-2L}";
    } else {
        rep.paper_correction =
            static_cast<double>(d - 1) * (d - 1) / (d - 3) * std::exp(-2.0 * L);
        rep.correction_formula = "((d-1)^2/(d-3)) e^{-2L}";
    }
    rep.measured_correction = 1.0 - rep.exact / rep.leading;
    return rep;
}

nlohmann::ordered_json expansion_to_json(const ExpansionReport& r) {
    nlohmann::ordered_json j;
    j["model"] = r.model;
    j["leading"] = r.leading;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : r.correction_terms)
        terms.push_back({{"name", t.name}, {"value", t.value}});
    j["correction_terms"] = std::move(terms);
    auto env = nlohmann::ordered_json::array();
    for (const auto& t : r.error_envelope) env.push_back({{"name", t.name}, {"value", t.value}});
    j["error_envelope"] = std::move(env);
    auto diag = nlohmann::ordered_json::array();
    for (const auto& t : r.diagnostics) diag.push_back({{"name", t.name}, {"value", t.value}});
    j["diagnostics"] = std::move(diag);
    j["predicted_lambda_c"] = r.predicted_lambda_c;
    j["predicted_expected_degree"] = r.predicted_expected_degree;
    return j;
}

std::string expansion_to_table(const ExpansionReport& r) {
    std::string out = r.model + "\n";
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%-58s %.12g\n", "leading", r.leading);
    out += buf;
    for (const auto& t : r.correction_terms) {
        std::snprintf(buf, sizeof(buf), "%-58s %.12g\n", t.name.c_str(), t.value);
        out += buf;
    }
    for (const auto& t : r.error_envelope) {
        std::snprintf(buf, sizeof(buf), "%-58s %.12g\n", t.name.c_str(), t.value);
        out += buf;
    }
    for (const auto& t : r.diagnostics) {
        std::snprintf(buf, sizeof(buf), "%-58s %.12g\n", t.name.c_str(), t.value);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "%-58s %.12g\n", "predicted_lambda_c", r.predicted_lambda_c);
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-58s %.12g\n", "predicted_expected_degree",
                  r.predicted_expected_degree);
    out += buf;
    return out;
}

}  // namespace hrcm
