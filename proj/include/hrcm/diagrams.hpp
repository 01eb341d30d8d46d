#pragma once

#include "hrcm/models.hpp"
#include "hrcm/transform.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <map>

namespace hrcm {

/// All scalar diagram quantities for one (model, L).
struct DiagramReport {
    AdjacencySpec spec;
    double norm1 = 0.0;
    double norm2 = 0.0;
    std::map<int, double> loops;                         // n -> phi^{*n}(o,o), n = 2..6
    std::map<std::array<int, 3>, double> mixed;          // (n1,n2,n3) -> phi^{*n1*n2.n3}(o,o)
    double beta = 0.0;
    double omega = 0.0;
    double errE = 0.0;
    double errEstar = 0.0;
    double C_used = 2.0;
};

/// Convolution powers of the adjacency profile, shared between diagrams.
struct ProfilePowers {
    RadialFunction f;   // phi
    RadialFunction f2;  // phi * phi
    RadialFunction f3;  // phi * phi * phi

    static ProfilePowers compute(const AdjacencySpec& spec, int threads = 0, int nodes = 2048);
    const RadialFunction& power(int n) const;
};

/// phi^{*n1} * (phi^{*n2} . phi^{*n3}) (o,o) = int of the three-power product.
double mixed_diagram(const AdjacencySpec& spec, int n1, int n2, int n3, int threads = 0);
double mixed_diagram(const ProfilePowers& powers, int d, int n1, int n2, int n3);

double beta(const AdjacencySpec& spec, int threads = 0);

double omega(const AdjacencySpec& spec, int threads = 0);

double error_E(const AdjacencySpec& spec, double C, int threads = 0);
double error_E_star(const AdjacencySpec& spec, double C, int threads = 0);

DiagramReport diagram_report(const AdjacencySpec& spec, double C = 2.0, int threads = 0);

nlohmann::ordered_json report_to_json(const DiagramReport& report);
std::string report_to_table(const DiagramReport& report);

}  // namespace hrcm
