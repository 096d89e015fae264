#include "qmap/capacity.hpp"

#include "qmap/error.hpp"
#include "qmap/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmap {
namespace {

PointFunction zero() {
    return [](std::span<const double>) { return 0.0; };
}

}  // namespace

bool CompactSpec::empty() const { return count() == 0; }

std::size_t CompactSpec::count() const {
    return static_cast<std::size_t>(std::count(nodes.begin(), nodes.end(), 1));
}

CompactSpec compact_ball(const Lattice& lattice, const std::vector<double>& center, double r, std::string name) {
    CompactSpec K{std::move(name), std::vector<char>(lattice.size(), 0)};
    std::vector<double> x(lattice.dim());
    const double r2 = r * r * (1.0 + 1e-12);
    for (std::size_t k : lattice.interior()) {
        lattice.point(k, x);
        double s = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) s += (x[c] - center[c]) * (x[c] - center[c]);
        if (s <= r2) K.nodes[k] = 1;
    }
    return K;
}

GridFunction relative_extremal(const CompactSpec& K, const CapacityEngine& engine) {
    const Lattice& lat = *engine.lattice;
    if (K.nodes.size() != lat.size()) throw PreconditionError("relative_extremal: compact set has the wrong size");
    for (std::size_t k = 0; k < lat.size(); ++k)
        if (K.nodes[k] && !lat.is_interior(k))
            throw PreconditionError("relative_extremal: K must lie in the interior of the domain");
    GridFunction zero_grid(engine.lattice, 0.0);
    if (K.empty()) return zero_grid;
    std::vector<double> obstacle(lat.size(), std::nan(""));
    for (std::size_t k = 0; k < lat.size(); ++k)
        if (K.nodes[k]) obstacle[k] = -1.0;
    BellmanScheme scheme(engine.lattice, engine.samples, zero());
    return scheme.solve(zero_grid, engine.options, &obstacle).u;
}

CapacityValue capacity_of_compact(const CompactSpec& K, const CapacityEngine& engine) {
    const Lattice& lat = *engine.lattice;
    CapacityValue v;
    v.extremal = relative_extremal(K, engine);
    v.volume = static_cast<double>(K.count()) * lat.cell_volume();
    if (K.empty()) return v;
    BellmanScheme scheme(engine.lattice, engine.samples, zero());
    const GridFunction dens = scheme.density(v.extremal);
    for (std::size_t k : lat.interior()) {
        v.over_omega += dens[k];
        if (K.nodes[k]) v.over_k += dens[k];
    }
    v.over_omega *= lat.cell_volume();
    v.over_k *= lat.cell_volume();
    return v;
}

SublevelReport sublevel_capacity_check(const GridFunction& u, const GridFunction& v, const BellmanScheme& u_scheme,
                                       const PointFunction& u_boundary, const PointFunction& v_boundary,
                                       const std::vector<double>& ts, const std::vector<double>& ss,
                                       const CapacityEngine& engine, double tolerance) {
    const Lattice& lat = *engine.lattice;
    if (&u.lattice() != &lat || &v.lattice() != &lat)
        throw PreconditionError("sublevel_capacity_check: grids must share the engine lattice");

    // liminf (u - v) at the boundary, sampled at projections of the outermost interior layer.
    SublevelReport rep;
    rep.min_boundary_gap = std::numeric_limits<double>::infinity();
    std::vector<double> x(lat.dim());
    std::vector<int> off(lat.dim(), 0);
    for (std::size_t k = 0; k < lat.size(); ++k) {
        bool layer = lat.kind(k) == NodeKind::boundary;
        for (std::size_t c = 0; c < lat.dim() && !layer && lat.is_interior(k); ++c)
            for (int s : {-1, 1}) {
                off[c] = s;
                const std::int64_t nb = lat.shifted(k, off);
                off[c] = 0;
                if (nb < 0 || !lat.is_interior(static_cast<std::size_t>(nb))) layer = true;
            }
        if (!layer) continue;
        lat.point(k, x);
        const auto y = lat.spec().project_to_boundary(x);
        rep.min_boundary_gap = std::min(rep.min_boundary_gap, u_boundary(y) - v_boundary(y));
    }
    if (!(rep.min_boundary_gap > 0.0))
        throw PreconditionError("sublevel_capacity_check: liminf (u - v) > 0 fails on the boundary");

    const GridFunction dens = u_scheme.density(u);
    const double n = static_cast<double>(lat.spec().n);
    for (double t : ts)
        for (double s : ss) {
            SublevelRow row;
            row.t = t;
            row.s = s;
            CompactSpec E{"sublevel", std::vector<char>(lat.size(), 0)};
            for (std::size_t k : lat.interior()) {
                const double d = u[k] - v[k];
                if (d < -t - s) E.nodes[k] = 1;
                if (d < -t) row.rhs += dens[k];
            }
            row.rhs *= lat.cell_volume();
            row.capacity = capacity_of_compact(E, engine).over_omega;
            row.lhs = std::pow(s, n) * row.capacity;
            row.holds = row.lhs <= row.rhs * (1.0 + tolerance) + 1e-12;
            rep.all_hold = rep.all_hold && row.holds;
            rep.rows.push_back(row);
        }
    return rep;
}

VolumeCapacityReport volume_capacity_fit(const GridFunction& f, const std::vector<CompactSpec>& sets,
                                         const Rational& p, const CapacityEngine& engine) {
    const ExponentBudget b = exponent_budget(p, engine.lattice->spec().n, Rational(2));
    VolumeCapacityReport rep;
    rep.exponent_used = rep.alpha / b.q.get_d();
    const Lattice& lat = *engine.lattice;
    for (const auto& E : sets) {
        VolumeCapacityRow row;
        row.name = E.name;
        for (std::size_t k : lat.interior())
            if (E.nodes[k]) row.f_integral += f[k];
        row.f_integral *= lat.cell_volume();
        row.capacity = capacity_of_compact(E, engine).over_omega;
        row.ratio = row.capacity > 0.0 ? row.f_integral / std::pow(row.capacity, rep.exponent_used) : 0.0;
        rep.D_fit = std::max(rep.D_fit, row.ratio);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace qmap
