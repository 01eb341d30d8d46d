#pragma once

#include "hrcm/rcm.hpp"

#include <string>

namespace hrcm {

/// Poincare-disc picture of a d=2 configuration: unit disc in a 1000x1000
/// viewBox, vertices drawn as the true Euclidean images of hyperbolic discs
/// of the given radius, edges as chords. Byte-stable for fixed input.
std::string render_configuration_svg(const Configuration& config, double vertex_disc_radius);

}  // namespace hrcm
