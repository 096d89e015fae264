#include "qmap/directions.hpp"

#include <boost/random/sobol.hpp>

#include <cmath>
#include <random>

namespace qmap {

std::vector<HyperhermitianD> sample_directions(std::size_t n, const DirectionSampling& sampling) {
    if (n == 0) throw PreconditionError("sample_directions: n must be >= 1");
    if (sampling.count == 0) throw PreconditionError("sample_directions: count must be >= 1");

    std::vector<HyperhermitianD> out;
    out.reserve(sampling.count);
    out.push_back(HyperhermitianD::identity(n));

    const std::size_t dim = 4 * n * n;
    boost::random::sobol sobol(static_cast<unsigned>(dim));
    std::mt19937_64 rng(sampling.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> shift(dim);
    for (auto& s : shift) s = unit(rng);

    constexpr double scale = 0x1p-64;
    std::vector<double> point(dim);
    while (out.size() < sampling.count) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double raw = static_cast<double>(sobol()) * scale + shift[d];
            point[d] = raw - std::floor(raw);
        }
        QuatMatrix<double> g(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (int c = 0; c < 4; ++c)
                    g(j, k)[c] = sampling.spread * (2.0 * point[(j * n + k) * 4 + c] - 1.0);
        for (std::size_t j = 0; j < n; ++j) g(j, j).w += 1.0;

        HyperhermitianD a = HyperhermitianD::gram(g);
        const double det = moore_det(a);
        if (!(det > 1e-10)) continue;
        out.push_back(a.scaled(1.0 / std::pow(det, 1.0 / static_cast<double>(n))));
    }
    return out;
}

}  // namespace qmap
