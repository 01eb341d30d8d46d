#pragma once

#include "hrcm/radial_function.hpp"

#include <nlohmann/json_fwd.hpp>

#include <variant>

namespace hrcm {

struct BooleanDisc {
    double L = 1.0;  // edge iff dist < L
};

struct HeatKernel3 {
    double L = 1.0;
    double amplitude = 1.0;  // A_L in (0, (2 pi L)^{3/2} e^{L/2}]
};

struct CustomRadial {
    RadialFunction table;  // clamped to [0,1] between nodes, 0 beyond support
};

/// A parametrised radial adjacency-function family.
struct AdjacencySpec {
    int d = 2;
    std::variant<BooleanDisc, HeatKernel3, CustomRadial> family;

    void validate() const;  // throws std::invalid_argument on a bad spec
};

/// Amplitude that normalises the heat kernel to phi(0) = 1: (2 pi L)^{3/2} e^{L/2}.
double default_heat_amplitude(double L);

AdjacencySpec boolean_spec(int d, double L);
AdjacencySpec heat_spec(double L, double amplitude = -1.0);  // <= 0 means default
AdjacencySpec custom_spec(int d, RadialFunction table);

/// Connection probability at hyperbolic distance r; always in [0, 1].
double phi(const AdjacencySpec& spec, double r);

/// Truncation radius: smallest r with S_{d-1} int_r^inf phi sinh^{d-1} <= eps * norm_1to1.
double effective_range(const AdjacencySpec& spec, double eps);

/// L1->L1 operator norm: int phi(x,o) mu(dx). Closed form for the built-ins.
double norm_1to1(const AdjacencySpec& spec);

/// L2->L2 operator norm phi~(0) = S_{d-1} int phi Q_d sinh^{d-1}; closed form
/// A_L e^{-L/2} for the heat kernel.
double norm_2to2(const AdjacencySpec& spec);

/// Profile of phi as a RadialFunction on [0, effective_range(eps)], carrying
/// an exact evaluator and the jump locations.
RadialFunction radial_profile(const AdjacencySpec& spec, int nodes = 2048, double eps = 1e-12);

nlohmann::ordered_json spec_to_json(const AdjacencySpec& spec);
AdjacencySpec spec_from_json(const nlohmann::json& j);

}  // namespace hrcm
