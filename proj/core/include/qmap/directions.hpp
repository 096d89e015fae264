#pragma once

#include "qmap/hyperhermitian.hpp"

#include <cstdint>
#include <vector>

namespace qmap {

struct DirectionSampling {
    std::size_t count = 64;
    std::uint64_t seed = 1;
    /// Half-width of the perturbation g = I + spread * (2u - 1) fed into the
    /// congruence a = g^H g. Larger values give more anisotropic directions.
    double spread = 0.5;
};

/// Positive hyperhermitian directions with Moore determinant 1. Element 0 is
/// always the identity; the rest come from a Cranley-Patterson rotated Sobol
/// sequence in the 4n^2 real entries of g.
std::vector<HyperhermitianD> sample_directions(std::size_t n, const DirectionSampling& sampling);

}  // namespace qmap
