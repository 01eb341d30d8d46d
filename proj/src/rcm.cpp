#include "hrcm/rcm.hpp"

#include "hrcm/transform.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <stdexcept>

namespace hrcm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.283185307179586476925286766559;

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> rank;

    explicit UnionFind(std::size_t n) : parent(n), rank(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank[a] < rank[b]) std::swap(a, b);
        parent[b] = a;
        if (rank[a] == rank[b]) ++rank[a];
    }
};

double hyper_radius(const HPoint& p) {
    double n2 = 0.0;
    for (double c : p.coords) n2 += c * c;
    double t = std::sqrt(n2);
    return 2.0 * std::atanh(std::min(t, 1.0 - 1e-16));
}

// Max angular separation at which two points at radii r1, r2 can be within
// hyperbolic distance `range`. pi when either point is near the centre.
double max_delta_theta(double r1, double r2, double range) {
    if (std::abs(r1 - r2) >= range) return 0.0;
    double s = std::sinh(r1) * std::sinh(r2);
    if (s <= 0.0) return kPi;
    double c = (std::cosh(r1) * std::cosh(r2) - std::cosh(range)) / s;
    if (c <= -1.0) return kPi;
    if (c >= 1.0) return 0.0;
    return std::acos(c);
}

}  // namespace

std::optional<double> finite_range(const AdjacencySpec& spec) {
    if (const auto* b = std::get_if<BooleanDisc>(&spec.family)) return b->L;
    if (const auto* c = std::get_if<CustomRadial>(&spec.family)) return c->table.range();
    return std::nullopt;
}

bool edge_decision(const AdjacencySpec& spec, const Seed& seed, std::size_t i, std::size_t j,
                   double distance) {
    if (const auto* b = std::get_if<BooleanDisc>(&spec.family)) return distance < b->L;
    double p = phi(spec, distance);
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return rng::pair_uniform(seed, i, j) < p;
}

NeighborIndex::NeighborIndex(const PointCloud& cloud, std::optional<double> range)
    : cloud_(cloud) {
    const std::size_t n = cloud.points.size();
    if (!range || cloud.d != 2 || n < 64) return;
    accelerated_ = true;
    range_ = *range;
    band_width_ = std::max(range_, 0.25);
    radius_.resize(n);
    theta_.resize(n);
    std::size_t n_bands = static_cast<std::size_t>(cloud.R / band_width_) + 2;
    bands_.assign(n_bands, {});
    for (std::size_t i = 0; i < n; ++i) {
        radius_[i] = hyper_radius(cloud.points[i]);
        theta_[i] = std::atan2(cloud.points[i].coords[1], cloud.points[i].coords[0]);
        std::size_t b = std::min(static_cast<std::size_t>(radius_[i] / band_width_), n_bands - 1);
        bands_[b].emplace_back(theta_[i], static_cast<std::uint32_t>(i));
    }
    for (auto& band : bands_) std::sort(band.begin(), band.end());
}

void NeighborIndex::for_candidates(std::size_t i,
                                   const std::function<void(std::size_t)>& visit) const {
    const std::size_t n = cloud_.points.size();
    if (!accelerated_) {
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) visit(j);
        return;
    }
    double r = radius_[i], th = theta_[i];
    long b_lo = static_cast<long>(std::floor((r - range_) / band_width_));
    long b_hi = static_cast<long>(std::floor((r + range_) / band_width_));
    b_lo = std::max(b_lo, 0L);
    b_hi = std::min(b_hi, static_cast<long>(bands_.size()) - 1);
    for (long b = b_lo; b <= b_hi; ++b) {
        const auto& band = bands_[static_cast<std::size_t>(b)];
        if (band.empty()) continue;
        double lo_r = b * band_width_, hi_r = (b + 1) * band_width_;
        double dt = std::max({max_delta_theta(r, lo_r, range_), max_delta_theta(r, hi_r, range_),
                              (r >= lo_r && r <= hi_r) ? max_delta_theta(r, r, range_) : 0.0});
        dt = std::min(dt + 1e-12, kPi);
        auto emit_range = [&](double lo_t, double hi_t) {
            auto first = std::lower_bound(band.begin(), band.end(),
                                          std::pair<double, std::uint32_t>{lo_t, 0});
            for (auto it = first; it != band.end() && it->first <= hi_t; ++it)
                if (it->second != i) visit(it->second);
        };
        if (dt >= kPi) {
            emit_range(-kPi - 1.0, kPi + 1.0);
        } else {
            double lo_t = th - dt, hi_t = th + dt;
            if (lo_t < -kPi) {
                emit_range(lo_t + kTwoPi, kPi + 1.0);
                emit_range(-kPi - 1.0, hi_t);
            } else if (hi_t > kPi) {
                emit_range(lo_t, kPi + 1.0);
                emit_range(-kPi - 1.0, hi_t - kTwoPi);
            } else {
                emit_range(lo_t, hi_t);
            }
        }
    }
}

Configuration build_graph(const PointCloud& cloud, const AdjacencySpec& spec, const Seed& seed,
                          int threads) {
    spec.validate();
    if (spec.d != cloud.d) throw std::invalid_argument("build_graph: dimension mismatch");
    Configuration config{cloud, spec, {}, seed};
    const std::size_t n = cloud.points.size();
    if (n < 2) return config;

    std::optional<double> range = finite_range(spec);
    NeighborIndex index(cloud, range);

    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> local(n);
    parallel_for(n, threads, [&](std::size_t i) {
        auto& out = local[i];
        auto consider = [&](std::size_t j) {
            if (j <= i) return;
            double dij = dist(cloud.points[i], cloud.points[j]);
            if (edge_decision(spec, seed, i, j, dij))
                out.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        };
        if (index.accelerated()) {
            index.for_candidates(i, consider);
        } else if (range) {
            // Pairs beyond the Euclidean image radius of B_range(x_i) cannot connect.
            double ri = hyper_radius(cloud.points[i]);
            double t = std::tanh(0.5 * ri);
            double t_out = std::tanh(0.5 * (ri + *range)) - t;
            double t_in = t - std::tanh(0.5 * (ri - *range));
            double eps2 = std::max(t_out, t_in);
            eps2 = eps2 * eps2 * (1.0 + 1e-12);
            for (std::size_t j = i + 1; j < n; ++j) {
                double diff2 = 0.0;
                for (int k = 0; k < cloud.d; ++k) {
                    double dd = cloud.points[i].coords[k] - cloud.points[j].coords[k];
                    diff2 += dd * dd;
                }
                if (diff2 <= eps2) consider(j);
            }
        } else {
            for (std::size_t j = i + 1; j < n; ++j) consider(j);
        }
    });
    for (auto& v : local) {
        std::sort(v.begin(), v.end());
        config.edges.insert(config.edges.end(), v.begin(), v.end());
    }
    return config;
}

ClusterLabels clusters(const Configuration& config) {
    const std::size_t n = config.cloud.points.size();
    UnionFind uf(n);
    for (const auto& [i, j] : config.edges) {
        if (i >= n || j >= n) throw std::invalid_argument("clusters: edge index out of range");
        uf.unite(i, j);
    }
    ClusterLabels out;
    out.label.assign(n, 0);
    std::vector<std::uint32_t> root_to_label(n, UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t r = uf.find(static_cast<std::uint32_t>(i));
        if (root_to_label[r] == UINT32_MAX) {
            root_to_label[r] = next++;
            out.sizes.push_back(0);
        }
        out.label[i] = root_to_label[r];
        ++out.sizes[out.label[i]];
    }
    return out;
}

bool origin_cluster_reaches(const Configuration& config, const ClusterLabels& labels,
                            double shell) {
    if (config.cloud.palm_indices.empty())
        throw std::invalid_argument("origin_cluster_reaches: no palm point in the cloud");
    std::size_t o_idx = config.cloud.palm_indices.front();
    std::uint32_t lab = labels.label[o_idx];
    for (std::size_t i = 0; i < config.cloud.points.size(); ++i) {
        if (labels.label[i] != lab) continue;
        if (hyper_radius(config.cloud.points[i]) >= shell) return true;
    }
    return false;
}

int degree_of(const Configuration& config, std::size_t index) {
    if (index >= config.cloud.points.size())
        throw std::invalid_argument("degree_of: index out of range");
    int deg = 0;
    for (const auto& [i, j] : config.edges)
        if (i == index || j == index) ++deg;
    return deg;
}

namespace {

// Best-first exploration of the component containing `source`; outward-first
// pops reach a distant shell quickly in the supercritical phase.
template <typename StopFn>
bool lazy_search(const PointCloud& cloud, const AdjacencySpec& spec, const Seed& seed,
                 std::size_t source, const NeighborIndex& index, StopFn&& stop) {
    const std::size_t n = cloud.points.size();
    std::vector<bool> visited(n, false);
    using Entry = std::pair<double, std::uint32_t>;  // (radius, idx)
    std::priority_queue<Entry> frontier;
    visited[source] = true;
    frontier.emplace(hyper_radius(cloud.points[source]), static_cast<std::uint32_t>(source));
    while (!frontier.empty()) {
        auto [r, i] = frontier.top();
        frontier.pop();
        if (stop(static_cast<std::size_t>(i), r)) return true;
        index.for_candidates(i, [&](std::size_t j) {
            if (visited[j]) return;
            double dij = dist(cloud.points[i], cloud.points[j]);
            if (!edge_decision(spec, seed, i, j, dij)) return;
            visited[j] = true;
            frontier.emplace(hyper_radius(cloud.points[j]), static_cast<std::uint32_t>(j));
        });
    }
    return false;
}

}  // namespace

bool cluster_reaches_shell(const PointCloud& cloud, const AdjacencySpec& spec, const Seed& seed,
                           std::size_t source, double shell, const NeighborIndex& index) {
    if (shell <= 0.0) return true;
    return lazy_search(cloud, spec, seed, source, index,
                       [shell](std::size_t, double r) { return r >= shell; });
}

bool points_connect(const PointCloud& cloud, const AdjacencySpec& spec, const Seed& seed,
                    std::size_t source, std::size_t target, const NeighborIndex& index) {
    if (source == target) return true;
    return lazy_search(cloud, spec, seed, source, index,
                       [target](std::size_t i, double) { return i == target; });
}

nlohmann::ordered_json config_to_json(const Configuration& config) {
    nlohmann::ordered_json j;
    j["cloud"] = cloud_to_json(config.cloud);
    j["spec"] = spec_to_json(config.spec);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : config.edges) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    j["seed"] = {{"root", config.seed.root}, {"stream", config.seed.stream}};
    return j;
}

Configuration config_from_json(const nlohmann::json& j) {
    Configuration config{cloud_from_json(j.at("cloud")), spec_from_json(j.at("spec")), {}, {}};
    for (const auto& row : j.at("edges"))
        config.edges.emplace_back(row.at(0).get<std::uint32_t>(), row.at(1).get<std::uint32_t>());
    config.seed.root = j.at("seed").at("root").get<std::uint64_t>();
    config.seed.stream = j.at("seed").at("stream").get<std::uint64_t>();
    return config;
}

std::string edges_to_csv(const Configuration& config) {
    std::string out = "i,j\n";
    char buf[32];
    for (const auto& [a, b] : config.edges) {
        std::snprintf(buf, sizeof(buf), "%u,%u\n", a, b);
        out += buf;
    }
    return out;
}

}  // namespace hrcm
