#include "hrcm/sampler.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hrcm {

namespace {

constexpr int kTableNodes = 4096;

// Poisson(mean) by counting unit exponentials; exact and O(mean).
std::uint64_t poisson_count(rng::CounterRng& gen, double mean) {
    std::uint64_t n = 0;
    double acc = gen.exponential();
    while (acc <= mean) {
        ++n;
        acc += gen.exponential();
    }
    return n;
}

}  // namespace

RadialLaw::RadialLaw(int d, double R) : d_(d), R_(R) {
    check_dimension(d);
    if (!(R > 0.0)) throw std::invalid_argument("RadialLaw: R must be positive");
    total_ = sinh_power_integral(d, R);
    if (d_ == 2) return;  // closed-form inverse
    table_.resize(kTableNodes + 1);
    table_[0] = 0.0;
    table_[kTableNodes] = R;
    // Solve F(r) = u_k by Newton from the closed-form CDF; monotone by
    // construction, interpolated linearly between nodes at sample time.
    double r = 0.0;
    for (int k = 1; k < kTableNodes; ++k) {
        double target = total_ * static_cast<double>(k) / kTableNodes;
        for (int it = 0; it < 60; ++it) {
            double val = sinh_power_integral(d_, r) - target;
            double der = std::pow(std::sinh(r), d_ - 1);
            double step = (der > 0.0) ? val / der : (val > 0.0 ? -1e-3 : 1e-3);
            double next = r - step;
            if (next < 0.0) next = 0.5 * r;
            if (next > R) next = 0.5 * (r + R);
            if (std::abs(next - r) < 1e-15 * (1.0 + r)) {
                r = next;
                break;
            }
            r = next;
        }
        table_[k] = std::clamp(r, table_[k - 1], R);
    }
}

double RadialLaw::cdf(double r) const {
    if (r <= 0.0) return 0.0;
    if (r >= R_) return 1.0;
    return sinh_power_integral(d_, r) / total_;
}

double RadialLaw::sample(double u) const {
    if (u < 0.0) u = 0.0;
    if (d_ == 2) {
        // F(r) = sinh^2(r/2) / sinh^2(R/2)
        return 2.0 * std::asinh(std::sqrt(u) * std::sinh(0.5 * R_));
    }
    double pos = u * kTableNodes;
    int k = std::min(static_cast<int>(pos), kTableNodes - 1);
    double w = pos - k;
    return (1.0 - w) * table_[k] + w * table_[k + 1];
}

PointCloud sample_ppp(int d, double lambda, double R, const Seed& seed, std::uint64_t hard_cap) {
    check_dimension(d);
    if (lambda < 0.0) throw std::invalid_argument("sample_ppp: negative intensity");
    if (!(R > 0.0)) throw std::invalid_argument("sample_ppp: R must be positive");
    double mean = lambda * ball_volume(d, R);
    if (mean > static_cast<double>(hard_cap))
        throw std::runtime_error("sample_ppp: expected count " + std::to_string(mean) +
                                 " exceeds cap " + std::to_string(hard_cap));
    PointCloud cloud;
    cloud.d = d;
    cloud.R = R;
    cloud.seed = seed;
    if (lambda == 0.0) return cloud;

    rng::CounterRng count_gen(seed, rng::kCount);
    std::uint64_t n = poisson_count(count_gen, mean);
    cloud.points.reserve(n);

    RadialLaw law(d, R);
    rng::CounterRng radius_gen(seed, rng::kRadius);
    rng::CounterRng dir_gen(seed, rng::kDirection);
    for (std::uint64_t k = 0; k < n; ++k) {
        double r = law.sample(radius_gen.uniform());
        double t = std::tanh(0.5 * r);  // Euclidean radius in ball coordinates
        HPoint p;
        p.coords.resize(d);
        if (d == 2) {
            double a = 6.283185307179586476925286766559 * dir_gen.uniform();
            p.coords[0] = t * std::cos(a);
            p.coords[1] = t * std::sin(a);
        } else {
            double norm2 = 0.0;
            for (int i = 0; i < d; ++i) {
                p.coords[i] = dir_gen.normal();
                norm2 += p.coords[i] * p.coords[i];
            }
            double scale = (norm2 > 0.0) ? t / std::sqrt(norm2) : 0.0;
            for (int i = 0; i < d; ++i) p.coords[i] *= scale;
        }
        cloud.points.push_back(std::move(p));
    }
    return cloud;
}

PointCloud add_palm(PointCloud cloud, const std::vector<HPoint>& points) {
    for (const HPoint& p : points) {
        validate_point(p);
        if (p.dim() != cloud.d) throw std::invalid_argument("add_palm: dimension mismatch");
        double r = dist(p, origin(cloud.d));
        if (r > cloud.R * (1.0 + 1e-12))
            throw std::invalid_argument("add_palm: point outside the simulation ball");
        cloud.palm_indices.push_back(cloud.points.size());
        cloud.points.push_back(p);
    }
    return cloud;
}

std::string cloud_to_csv(const PointCloud& cloud) {
    std::string out;
    char buf[64];
    for (const auto& p : cloud.points) {
        for (int i = 0; i < cloud.d; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g%c", p.coords[i], i + 1 == cloud.d ? '\n' : ',');
            out += buf;
        }
    }
    return out;
}

nlohmann::ordered_json cloud_to_json(const PointCloud& cloud) {
    nlohmann::ordered_json j;
    j["d"] = cloud.d;
    j["R"] = cloud.R;
    j["seed"] = {{"root", cloud.seed.root}, {"stream", cloud.seed.stream}};
    auto pts = nlohmann::ordered_json::array();
    for (const auto& p : cloud.points) pts.push_back(p.coords);
    j["points"] = std::move(pts);
    j["palm_indices"] = cloud.palm_indices;
    return j;
}

PointCloud cloud_from_json(const nlohmann::json& j) {
    PointCloud cloud;
    cloud.d = j.at("d").get<int>();
    cloud.R = j.at("R").get<double>();
    cloud.seed.root = j.at("seed").at("root").get<std::uint64_t>();
    cloud.seed.stream = j.at("seed").at("stream").get<std::uint64_t>();
    for (const auto& row : j.at("points"))
        cloud.points.push_back(HPoint{row.get<std::vector<double>>()});
    cloud.palm_indices = j.at("palm_indices").get<std::vector<std::size_t>>();
    return cloud;
}

}  // namespace hrcm
