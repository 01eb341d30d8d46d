#pragma once

#include "hrcm/geometry.hpp"
#include "hrcm/rng.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace hrcm {

/// A sampled point set in the closed ball B_R, plus deterministically
/// inserted (Palm) points recorded by index.
struct PointCloud {
    int d = 2;
    double R = 1.0;  // simulation-ball hyperbolic radius
    std::vector<HPoint> points;
    std::vector<std::size_t> palm_indices;
    Seed seed;

    std::size_t size() const { return points.size(); }
};

/// Inverse-CDF sampler for the radial law density ~ sinh^{d-1} on [0, R].
/// Closed form for d = 2; a 4096-node monotone table otherwise.
class RadialLaw {
public:
    RadialLaw(int d, double R);
    double sample(double u) const;  // u in [0,1)
    double cdf(double r) const;

private:
    int d_;
    double R_;
    double total_;
    std::vector<double> table_;  // r at uniform CDF values (d >= 3)
};

/// Poisson point process with intensity lambda * mu on B_R. The expected
/// count lambda * mu(B_R) must not exceed the hard cap.
PointCloud sample_ppp(int d, double lambda, double R, const Seed& seed,
                      std::uint64_t hard_cap = 10'000'000);

/// Cloud with the given points appended and recorded as Palm insertions.
PointCloud add_palm(PointCloud cloud, const std::vector<HPoint>& points);

std::string cloud_to_csv(const PointCloud& cloud);
nlohmann::ordered_json cloud_to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const nlohmann::json& j);

}  // namespace hrcm
