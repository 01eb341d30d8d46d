#pragma once

#include "hrcm/rcm.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>

namespace hrcm {

/// Thrown when the lambda bracket fails to straddle the p = 1/2 crossing.
class BracketingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MCResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t replicas = 0;
    std::uint64_t seed_root = 0;
    std::map<std::string, double> params;  // echo of inputs + op-specific extras
};

struct TwoPointRow {
    double r = 0.0;
    double tau_hat = 0.0;
    double std_error = 0.0;
    double direct_hat = 0.0;  // empirical direct-edge frequency (tau_hat >= this)
};

struct SweepRow {
    double R = 0.0;
    double lambda = 0.0;
    double p_hat = 0.0;
    double std_error = 0.0;
};

struct LambdaCEstimate {
    double lambda_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::vector<SweepRow> per_R_crossings;  // every (R, lambda) evaluation
    std::string method;
    std::uint64_t seed_root = 0;
};

/// Mean Palm degree over replicas, against the analytic lambda * norm_1to1.
/// Extras: "analytic", "z_score".
MCResult mecke_degree_check(const AdjacencySpec& spec, double lambda, double R,
                            std::uint64_t replicas, const Seed& seed, int threads = 0);

/// Empirical two-point function at the given bin radii.
std::vector<TwoPointRow> two_point_estimate(const AdjacencySpec& spec, double lambda, double R,
                                            const std::vector<double>& r_bins,
                                            std::uint64_t replicas, const Seed& seed,
                                            int threads = 0);

/// Fraction of replicas whose origin cluster reaches the shell R - shell_margin.
MCResult crossing_probability(const AdjacencySpec& spec, double lambda, double R,
                              double shell_margin, std::uint64_t replicas, const Seed& seed,
                              int threads = 0);

/// Bisection on lambda to the p = 1/2 crossing per R, then linear-in-1/R
/// extrapolation of the crossing points.
LambdaCEstimate estimate_lambda_c(const AdjacencySpec& spec, const std::vector<double>& R_list,
                                  std::uint64_t replicas,
                                  std::pair<double, double> lambda_bracket, const Seed& seed,
                                  int threads = 0, int bisection_steps = 10);

nlohmann::ordered_json mc_to_json(const MCResult& r);
nlohmann::ordered_json lambda_c_to_json(const LambdaCEstimate& e);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string two_point_to_csv(const std::vector<TwoPointRow>& rows);

}  // namespace hrcm
