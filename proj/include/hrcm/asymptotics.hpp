#pragma once

#include "hrcm/models.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace hrcm {

struct NamedTerm {
    std::string name;
    double value = 0.0;
};

/// Term-by-term evaluation of a critical-intensity expansion. Envelope terms
/// carry unknown constants set to 1 and are never added to point predictions.
struct ExpansionReport {
    std::string model;
    double leading = 1.0;
    std::vector<NamedTerm> correction_terms;
    std::vector<NamedTerm> error_envelope;
    std::vector<NamedTerm> diagnostics;  // supplementary values, not part of the prediction
    double predicted_lambda_c = 0.0;
    double predicted_expected_degree = 0.0;  // = predicted_lambda_c * norm_1to1
};

/// norm1 * lambda_c ~ 1 + loop3/norm1^2 + (3/2) loop4/norm1^3, diagrams from
/// the convolution engine; envelope from the squared terms, Omega, E, beta^N.
ExpansionReport general_expansion(const AdjacencySpec& spec, double C = 2.0, int N = 4,
                                  int threads = 0);

/// mu(B_L) lambda_c = 1 + (S_{d-2}/S_{d-1}) 2^{d+2}/(d-1) e^{-(d-1)L/2} + o(...),
/// plus the three Boolean diagram asymptotics.
ExpansionReport boolean_expected_degree_expansion(int d, double L);

/// lambda_c = ((d-1) 2^{d-1} / S_{d-1}) e^{-(d-1)L} (1 + correction(d)).
ExpansionReport boolean_lambda_c_expansion(int d, double L);

/// A_L lambda_c = 1 + (A_L/(6 pi)^{3/2}) L^{-3/2} e^{-3L/2}
///              + (3/2)(A_L/(8 pi)^{3/2}) L^{-3/2} e^{-2L} + O(...).
ExpansionReport heat_expansion(double L, double A_L = -1.0);  // <= 0 means default

struct BooleanNormReport {
    double exact = 0.0;           // binomial closed form
    double leading = 0.0;         // (S_{d-1}/((d-1) 2^{d-1})) e^{(d-1)L}
    double paper_correction = 0.0;        // displayed correction term (relative)
    double measured_correction = 0.0;     // 1 - exact/leading
    std::string correction_formula;
};

BooleanNormReport boolean_norm_closed_forms(int d, double L);

nlohmann::ordered_json expansion_to_json(const ExpansionReport& r);
std::string expansion_to_table(const ExpansionReport& r);

}  // namespace hrcm
