#pragma once

#include "hrcm/models.hpp"
#include "hrcm/sampler.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hrcm {

/// A sampled RCM realisation: point cloud, adjacency spec, edge list.
struct Configuration {
    PointCloud cloud;
    AdjacencySpec spec;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, no duplicates
    Seed seed;                                                   // edge-decision seed
};

struct ClusterLabels {
    std::vector<std::uint32_t> label;  // per point, same label iff connected
    std::vector<std::size_t> sizes;    // indexed by label
};

/// L when the adjacency function has compact support, nullopt otherwise.
std::optional<double> finite_range(const AdjacencySpec& spec);

/// Edge indicator for the pair (i, j) at the given distance: a deterministic
/// distance test for Boolean specs, a pair-keyed coin otherwise.
bool edge_decision(const AdjacencySpec& spec, const Seed& seed, std::size_t i, std::size_t j,
                   double distance);

/// Angular band index over a d=2 cloud supporting "all points possibly within
/// hyperbolic distance `range`" queries; falls back to a full scan otherwise.
class NeighborIndex {
public:
    NeighborIndex(const PointCloud& cloud, std::optional<double> range);

    /// Invoke visit(j) for every candidate j != i (superset of true neighbours).
    void for_candidates(std::size_t i, const std::function<void(std::size_t)>& visit) const;

    bool accelerated() const { return accelerated_; }

private:
    const PointCloud& cloud_;
    double range_ = 0.0;
    bool accelerated_ = false;
    double band_width_ = 1.0;
    std::vector<double> radius_, theta_;
    std::vector<std::vector<std::pair<double, std::uint32_t>>> bands_;  // (theta, idx) sorted
};

/// Independent phi(dist)-edges over all pairs; deterministic in (cloud, spec, seed).
Configuration build_graph(const PointCloud& cloud, const AdjacencySpec& spec, const Seed& seed,
                          int threads = 0);

/// Union-find partition of the configuration; labels are canonical
/// (numbered by first appearance in point order).
ClusterLabels clusters(const Configuration& config);

/// True iff some point of the first palm point's cluster has dist(., o) >= shell.
bool origin_cluster_reaches(const Configuration& config, const ClusterLabels& labels,
                            double shell);

int degree_of(const Configuration& config, std::size_t index);

/// Lazy best-first search of the cluster containing `source`, without
/// materialising the graph; returns true once a point at hyperbolic radius
/// >= shell is reached. Identical edge decisions to build_graph.
bool cluster_reaches_shell(const PointCloud& cloud, const AdjacencySpec& spec, const Seed& seed,
                           std::size_t source, double shell, const NeighborIndex& index);

/// Lazy search for a path between two planted points; same edge coupling.
bool points_connect(const PointCloud& cloud, const AdjacencySpec& spec, const Seed& seed,
                    std::size_t source, std::size_t target, const NeighborIndex& index);

nlohmann::ordered_json config_to_json(const Configuration& config);
Configuration config_from_json(const nlohmann::json& j);
std::string edges_to_csv(const Configuration& config);

}  // namespace hrcm
