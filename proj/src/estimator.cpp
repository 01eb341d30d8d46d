#include "hrcm/estimator.hpp"

#include "hrcm/transform.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hrcm {

namespace {

// Streams for replica k: even for the cloud, odd for the edges.
Seed cloud_seed(const Seed& base, std::uint64_t k) { return base.with_stream(2 * k); }
Seed edge_seed(const Seed& base, std::uint64_t k) { return base.with_stream(2 * k + 1); }

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return std::sqrt(s / (static_cast<double>(xs.size() - 1) * static_cast<double>(xs.size())));
}

void check_range_precondition(const AdjacencySpec& spec, double R, const char* who) {
    double range = effective_range(spec, 1e-3);
    if (R + 1e-9 < range)
        throw std::invalid_argument(std::string(who) +
                                    ": R smaller than the adjacency effective range");
}

}  // namespace

MCResult mecke_degree_check(const AdjacencySpec& spec, double lambda, double R,
                            std::uint64_t replicas, const Seed& seed, int threads) {
    spec.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("mecke_degree_check: lambda must be > 0");
    if (replicas < 2) throw std::invalid_argument("mecke_degree_check: need >= 2 replicas");
    check_range_precondition(spec, R, "mecke_degree_check");

    const HPoint o = origin(spec.d);
    std::vector<double> degrees(replicas, 0.0);
    parallel_for(replicas, threads, [&](std::size_t k) {
        PointCloud cloud = sample_ppp(spec.d, lambda, R, cloud_seed(seed, k));
        Seed es = edge_seed(seed, k);
        std::size_t palm = cloud.points.size();  // index o will get after insertion
        int deg = 0;
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            double r = dist(cloud.points[i], o);
            if (edge_decision(spec, es, i, palm, r)) ++deg;
        }
        degrees[k] = deg;
    });

    MCResult res;
    res.replicas = replicas;
    res.seed_root = seed.root;
    res.estimate = mean_of(degrees);
    res.std_error = stderr_of(degrees, res.estimate);
    double analytic = lambda * norm_1to1(spec);
    res.params["lambda"] = lambda;
    res.params["R"] = R;
    res.params["analytic"] = analytic;
    res.params["z_score"] =
        res.std_error > 0.0 ? (res.estimate - analytic) / res.std_error : 0.0;
    return res;
}

std::vector<TwoPointRow> two_point_estimate(const AdjacencySpec& spec, double lambda, double R,
                                            const std::vector<double>& r_bins,
                                            std::uint64_t replicas, const Seed& seed,
                                            int threads) {
    spec.validate();
    if (!(lambda >= 0.0)) throw std::invalid_argument("two_point_estimate: negative lambda");
    if (replicas < 2) throw std::invalid_argument("two_point_estimate: need >= 2 replicas");
    for (double r : r_bins)
        if (r < 0.0 || r > R)
            throw std::invalid_argument("two_point_estimate: bin outside the simulation ball");

    std::optional<double> range = finite_range(spec);
    std::vector<std::uint64_t> connect(r_bins.size(), 0), direct(r_bins.size(), 0);
    std::vector<std::vector<std::uint64_t>> conn_local(replicas), dir_local(replicas);
    parallel_for(replicas, threads, [&](std::size_t k) {
        conn_local[k].assign(r_bins.size(), 0);
        dir_local[k].assign(r_bins.size(), 0);
        PointCloud base = sample_ppp(spec.d, lambda, R, cloud_seed(seed, k));
        Seed es = edge_seed(seed, k);
        for (std::size_t b = 0; b < r_bins.size(); ++b) {
            double r = r_bins[b];
            if (r == 0.0) {  // x = y convention
                conn_local[k][b] = 1;
                dir_local[k][b] = 1;
                continue;
            }
            HPoint x;
            x.coords.assign(spec.d, 0.0);
            x.coords[0] = std::tanh(0.5 * r);
            PointCloud cloud = add_palm(base, {origin(spec.d), x});
            std::size_t o_idx = cloud.palm_indices[0];
            std::size_t x_idx = cloud.palm_indices[1];
            if (edge_decision(spec, es, o_idx, x_idx, r)) ++dir_local[k][b];
            NeighborIndex index(cloud, range);
            if (points_connect(cloud, spec, es, o_idx, x_idx, index)) ++conn_local[k][b];
        }
    });
    for (std::uint64_t k = 0; k < replicas; ++k)
        for (std::size_t b = 0; b < r_bins.size(); ++b) {
            connect[b] += conn_local[k][b];
            direct[b] += dir_local[k][b];
        }

    std::vector<TwoPointRow> rows(r_bins.size());
    for (std::size_t b = 0; b < r_bins.size(); ++b) {
        double p = static_cast<double>(connect[b]) / static_cast<double>(replicas);
        rows[b].r = r_bins[b];
        rows[b].tau_hat = p;
        rows[b].std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(replicas));
        rows[b].direct_hat = static_cast<double>(direct[b]) / static_cast<double>(replicas);
    }
    return rows;
}

MCResult crossing_probability(const AdjacencySpec& spec, double lambda, double R,
                              double shell_margin, std::uint64_t replicas, const Seed& seed,
                              int threads) {
    spec.validate();
    if (!(lambda >= 0.0)) throw std::invalid_argument("crossing_probability: negative lambda");
    if (replicas < 2) throw std::invalid_argument("crossing_probability: need >= 2 replicas");
    double shell = R - shell_margin;
    if (!(shell > 0.0)) throw std::invalid_argument("crossing_probability: empty shell");

    std::optional<double> range = finite_range(spec);
    std::vector<std::uint8_t> hit(replicas, 0);
    parallel_for(replicas, threads, [&](std::size_t k) {
        PointCloud cloud =
            add_palm(sample_ppp(spec.d, lambda, R, cloud_seed(seed, k)), {origin(spec.d)});
        std::size_t o_idx = cloud.palm_indices[0];
        NeighborIndex index(cloud, range);
        hit[k] = cluster_reaches_shell(cloud, spec, edge_seed(seed, k), o_idx, shell, index);
    });
    std::uint64_t successes = 0;
    for (auto h : hit) successes += h;

    MCResult res;
    res.replicas = replicas;
    res.seed_root = seed.root;
    res.estimate = static_cast<double>(successes) / static_cast<double>(replicas);
    res.std_error =
        std::sqrt(res.estimate * (1.0 - res.estimate) / static_cast<double>(replicas));
    res.params["lambda"] = lambda;
    res.params["R"] = R;
    res.params["shell_margin"] = shell_margin;
    res.params["shell"] = shell;
    return res;
}

LambdaCEstimate estimate_lambda_c(const AdjacencySpec& spec, const std::vector<double>& R_list,
                                  std::uint64_t replicas,
                                  std::pair<double, double> lambda_bracket, const Seed& seed,
                                  int threads, int bisection_steps) {
    spec.validate();
    if (R_list.empty()) throw std::invalid_argument("estimate_lambda_c: empty R list");
    for (std::size_t i = 0; i + 1 < R_list.size(); ++i)
        if (!(R_list[i] < R_list[i + 1]))
            throw std::invalid_argument("estimate_lambda_c: R list must be increasing");
    auto [lam_lo, lam_hi] = lambda_bracket;
    if (!(lam_lo < lam_hi)) throw BracketingError("estimate_lambda_c: degenerate bracket");
    if (replicas < 2) throw std::invalid_argument("estimate_lambda_c: need >= 2 replicas");

    LambdaCEstimate est;
    est.seed_root = seed.root;
    est.method = "one-arm p=1/2 bisection, linear extrapolation in 1/R";

    // Shell margin: the adjacency range, capped so the shell keeps most of the ball.
    double range = effective_range(spec, 1e-3);
    auto shell_margin = [&](double R) { return std::min(range, 0.45 * R); };

    // Distinct seed roots per evaluation block keep every replica independent.
    std::uint64_t block = 0;
    auto p_hat = [&](double lambda, double R) {
        Seed base{rng::mix64(seed.root ^ rng::mix64(0x1a3bda17 + block)), 0};
        ++block;
        MCResult r =
            crossing_probability(spec, lambda, R, shell_margin(R), replicas, base, threads);
        est.per_R_crossings.push_back({R, lambda, r.estimate, r.std_error});
        return r.estimate;
    };

    // Bracket check at the largest R first (the precondition of the protocol).
    double R_top = R_list.back();
    if (p_hat(lam_lo, R_top) >= 0.5 || p_hat(lam_hi, R_top) < 0.5) {
        std::string diag = "estimate_lambda_c: bracket does not straddle p=1/2 at R=" +
                           std::to_string(R_top) + "; evaluations:";
        for (const auto& row : est.per_R_crossings)
            diag += " (lambda=" + std::to_string(row.lambda) + ", p=" + std::to_string(row.p_hat) +
                    ")";
        throw BracketingError(diag);
    }

    std::vector<double> crossings(R_list.size()), sigmas(R_list.size());
    for (std::size_t ri = 0; ri < R_list.size(); ++ri) {
        double R = R_list[ri];
        double lo = lam_lo, hi = lam_hi;
        std::vector<std::pair<double, double>> evals;  // (lambda, p_hat)
        for (int step = 0; step < bisection_steps; ++step) {
            double mid = 0.5 * (lo + hi);
            double p = p_hat(mid, R);
            evals.emplace_back(mid, p);
            if (p < 0.5)
                lo = mid;
            else
                hi = mid;
        }
        crossings[ri] = 0.5 * (lo + hi);
        // Statistical width: binomial noise over the local slope of p(lambda).
        double slope = 0.0;
        {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            int m = 0;
            for (auto [lam, p] : evals) {
                if (std::abs(p - 0.5) > 0.35) continue;
                sx += lam; sy += p; sxx += lam * lam; sxy += lam * p;
                ++m;
            }
            if (m >= 2 && sxx * m - sx * sx > 0.0)
                slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        }
        double se_p = 0.5 / std::sqrt(static_cast<double>(replicas));
        double stat = slope > 0.0 ? se_p / slope : (lam_hi - lam_lo);
        sigmas[ri] = std::hypot(0.5 * (hi - lo), stat);
    }

    if (R_list.size() == 1) {
        est.lambda_hat = crossings[0];
        est.ci_low = crossings[0] - 2.0 * sigmas[0];
        est.ci_high = crossings[0] + 2.0 * sigmas[0];
        return est;
    }

    // Weighted least squares of crossing(R) against x = 1/R; intercept = estimate.
    double Sw = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (std::size_t i = 0; i < R_list.size(); ++i) {
        double w = 1.0 / (sigmas[i] * sigmas[i] + 1e-300);
        double x = 1.0 / R_list[i];
        Sw += w; Sx += w * x; Sy += w * crossings[i];
        Sxx += w * x * x; Sxy += w * x * crossings[i];
    }
    double det = Sw * Sxx - Sx * Sx;
    double a = (Sxx * Sy - Sx * Sxy) / det;  // intercept (1/R -> 0)
    double b = (Sw * Sxy - Sx * Sy) / det;
    double var_a = Sxx / det;
    if (R_list.size() > 2) {
        double chi2 = 0.0;
        for (std::size_t i = 0; i < R_list.size(); ++i) {
            double fit = a + b / R_list[i];
            double w = 1.0 / (sigmas[i] * sigmas[i] + 1e-300);
            chi2 += w * (crossings[i] - fit) * (crossings[i] - fit);
        }
        chi2 /= static_cast<double>(R_list.size() - 2);
        var_a *= std::max(1.0, chi2);
    }
    est.lambda_hat = a;
    est.ci_low = a - 2.0 * std::sqrt(var_a);
    est.ci_high = a + 2.0 * std::sqrt(var_a);
    return est;
}

nlohmann::ordered_json mc_to_json(const MCResult& r) {
    nlohmann::ordered_json j;
    j["estimate"] = r.estimate;
    j["std_error"] = r.std_error;
    j["replicas"] = r.replicas;
    j["seed_root"] = r.seed_root;
    j["params"] = r.params;
    return j;
}

nlohmann::ordered_json lambda_c_to_json(const LambdaCEstimate& e) {
    nlohmann::ordered_json j;
    j["lambda_hat"] = e.lambda_hat;
    j["ci_low"] = e.ci_low;
    j["ci_high"] = e.ci_high;
    j["method"] = e.method;
    j["seed_root"] = e.seed_root;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : e.per_R_crossings)
        rows.push_back({{"R", row.R},
                        {"lambda", row.lambda},
                        {"p_hat", row.p_hat},
                        {"stderr", row.std_error}});
    j["per_R_crossings"] = std::move(rows);
    return j;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "R,lambda,p_hat,stderr\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.R, r.lambda, r.p_hat,
                      r.std_error);
        out += buf;
    }
    return out;
}

std::string two_point_to_csv(const std::vector<TwoPointRow>& rows) {
    std::string out = "r,tau_hat,stderr,direct_hat\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.r, r.tau_hat, r.std_error,
                      r.direct_hat);
        out += buf;
    }
    return out;
}

}  // namespace hrcm
