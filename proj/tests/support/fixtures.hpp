#pragma once

#include "qmap/directions.hpp"
#include "qmap/solver.hpp"
#include "qmap/stencil.hpp"

#include <cmath>

namespace qmap::testing {

inline PointFunction psi_of(const LatticePtr& lattice) {
    return [lattice](std::span<const double> x) { return lattice->spec().psi.evaluate(x); };
}

inline std::vector<OperatorSample> samples_for(const LatticePtr& lattice, std::size_t count = 16,
                                               std::uint64_t seed = 1, int budget = 2) {
    const auto dirs = sample_directions(lattice->spec().n, {count, seed, 0.5});
    return make_operator_samples(dirs, lattice->h(), {budget, 1.0472});
}

inline BellmanScheme scheme_for(const LatticePtr& lattice, std::size_t count = 16, std::uint64_t seed = 1,
                                int budget = 2) {
    return BellmanScheme(lattice, samples_for(lattice, count, seed, budget), psi_of(lattice));
}

inline double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double c : x) s += c * c;
    return s;
}

}  // namespace qmap::testing
