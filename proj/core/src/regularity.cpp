#include "qmap/regularity.hpp"

#include "qmap/convolution.hpp"
#include "qmap/error.hpp"
#include "qmap/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qmap {

double ModulusCurve::at(double s) const {
    if (t.empty() || s <= 0.0) return 0.0;
    if (s <= t.front()) return theta.front() * s / t.front();
    if (s >= t.back()) return theta.back();
    const auto it = std::upper_bound(t.begin(), t.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double w = (s - t[i - 1]) / (t[i] - t[i - 1]);
    return theta[i - 1] + w * (theta[i] - theta[i - 1]);
}

ModulusCurve modulus_of_continuity(const GridFunction& u, const std::vector<double>& ts,
                                   const ModulusOptions& options) {
    const Lattice& lat = u.lattice();
    const std::size_t dim = lat.dim();
    const double h = lat.h();
    ModulusCurve curve;
    curve.diameter = lat.spec().diameter();
    curve.seed = options.seed;
    curve.t = ts;
    std::sort(curve.t.begin(), curve.t.end());
    for (double t : curve.t)
        if (!(t > 0.0) || t > curve.diameter * (1.0 + 1e-12))
            throw PreconditionError("modulus_of_continuity: t must lie in (0, diameter]");
    curve.theta.assign(curve.t.size(), 0.0);
    if (curve.t.empty()) return curve;

    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k < lat.size(); ++k)
        if (u.defined(k)) nodes.push_back(k);
    std::vector<int> coords(nodes.size() * dim);
    for (std::size_t i = 0; i < nodes.size(); ++i) lat.coords(nodes[i], std::span<int>(coords.data() + i * dim, dim));
    std::vector<std::int64_t> strides(dim, 1);
    for (std::size_t c = dim - 1; c > 0; --c) strides[c - 1] = strides[c] * lat.dims()[c];

    // Half of the offsets (first nonzero coordinate positive) suffices.
    auto offsets = ball_offsets(dim, h, curve.t.back());
    std::erase_if(offsets, [](const std::vector<int>& o) {
        const auto first = std::find_if(o.begin(), o.end(), [](int x) { return x != 0; });
        return first == o.end() || *first < 0;
    });
    std::vector<double> length(offsets.size());
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        double s = 0.0;
        for (int c : offsets[j]) s += static_cast<double>(c) * c;
        length[j] = std::sqrt(s) * h;
    }

    const std::size_t total = offsets.size() * nodes.size();
    const std::size_t stride = total <= options.pair_budget ? 1 : (total + options.pair_budget - 1) / options.pair_budget;
    curve.exhaustive = stride == 1;
    std::mt19937_64 rng(options.seed);

    for (std::size_t j = 0; j < offsets.size(); ++j) {
        const auto& o = offsets[j];
        std::int64_t shift = 0;
        for (std::size_t c = 0; c < dim; ++c) shift += o[c] * strides[c];
        const std::size_t start = stride == 1 ? 0 : static_cast<std::size_t>(rng() % stride);
        double best = 0.0;
        for (std::size_t i = start; i < nodes.size(); i += stride) {
            const int* c0 = coords.data() + i * dim;
            bool inside = true;
            for (std::size_t c = 0; c < dim && inside; ++c) {
                const int y = c0[c] + o[c];
                inside = y >= 0 && y < lat.dims()[c];
            }
            ++curve.pairs_examined;
            if (!inside) continue;
            const auto nb = static_cast<std::size_t>(static_cast<std::int64_t>(nodes[i]) + shift);
            if (!u.defined(nb)) continue;
            best = std::max(best, std::abs(u[nb] - u[nodes[i]]));
        }
        const auto first = std::lower_bound(curve.t.begin(), curve.t.end(), length[j] * (1.0 - 1e-12));
        for (auto it = first; it != curve.t.end(); ++it) {
            double& th = curve.theta[static_cast<std::size_t>(it - curve.t.begin())];
            th = std::max(th, best);
        }
    }
    return curve;
}

ModulusCurve concave_majorant(const ModulusCurve& curve) {
    std::vector<double> xs{0.0}, ys{0.0};
    xs.insert(xs.end(), curve.t.begin(), curve.t.end());
    ys.insert(ys.end(), curve.theta.begin(), curve.theta.end());
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            const double cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
            if (cross >= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    ModulusCurve out = curve;
    std::size_t seg = 0;
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
        const double x = curve.t[i];
        while (seg + 1 < hull.size() - 1 && xs[hull[seg + 1]] < x) ++seg;
        const std::size_t a = hull[seg], b = hull[std::min(seg + 1, hull.size() - 1)];
        out.theta[i] = a == b ? ys[a] : ys[a] + (ys[b] - ys[a]) * (x - xs[a]) / (xs[b] - xs[a]);
        out.theta[i] = std::max(out.theta[i], curve.theta[i]);
    }
    return out;
}

MajorantBoundCheck check_majorant_bounds(const ModulusCurve& curve, const ModulusCurve& majorant,
                                         const std::vector<double>& lambdas, double tol) {
    MajorantBoundCheck c;
    c.worst_lower = -std::numeric_limits<double>::infinity();
    c.worst_upper = -std::numeric_limits<double>::infinity();
    for (double t : curve.t)
        for (double l : lambdas) {
            const double s = l * t;
            if (s > curve.t.back() * (1.0 + 1e-12)) continue;
            const double lower = curve.at(s) - majorant.at(s);
            const double upper = majorant.at(s) - (1.0 + l) * curve.at(t);
            c.worst_lower = std::max(c.worst_lower, lower);
            c.worst_upper = std::max(c.worst_upper, upper);
            if (lower > tol || upper > tol) c.holds = false;
            ++c.checked;
        }
    return c;
}

double subadditivity_defect(const ModulusCurve& curve) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.t.size(); ++i)
        for (std::size_t j = i; j < curve.t.size(); ++j) {
            const double s = curve.t[i] + curve.t[j];
            if (s > curve.t.back() * (1.0 + 1e-12)) break;
            worst = std::max(worst, curve.at(s) - curve.theta[i] - curve.theta[j]);
        }
    return worst;
}

HolderFit power_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    if (lx.size() < 2) throw PreconditionError("power fit: degenerate window (fewer than 2 positive samples)");
    const double m = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx <= 0.0) throw PreconditionError("power fit: degenerate window (all abscissae equal)");
    HolderFit fit;
    fit.alpha = sxy / sxx;
    fit.C = std::exp(my - fit.alpha * mx);
    fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    fit.samples = lx.size();
    return fit;
}

HolderFit holder_fit(const ModulusCurve& curve, double t_lo, double t_hi) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < curve.t.size(); ++i)
        if (curve.t[i] >= t_lo * (1.0 - 1e-12) && curve.t[i] <= t_hi * (1.0 + 1e-12) && curve.theta[i] > 0.0) {
            x.push_back(curve.t[i]);
            y.push_back(curve.theta[i]);
        }
    if (x.size() < 5) throw PreconditionError("holder_fit: degenerate window (fewer than 5 samples)");
    return power_fit(x, y);
}

StabilityReport stability_check(const GridFunction& u1, const GridFunction& u2, const Rational& p,
                                const Rational& r, double gamma_fraction) {
    const Lattice& lat = u1.lattice();
    if (u2.size() != u1.size()) throw PreconditionError("stability_check: grids differ");
    for (std::size_t k = 0; k < lat.size(); ++k)
        if (lat.kind(k) == NodeKind::boundary && u1[k] < u2[k] - 1e-12)
            throw PreconditionError("stability_check: u1 >= u2 violated on the boundary");
    const ExponentBudget b = exponent_budget(p, lat.spec().n, r);
    StabilityReport rep;
    rep.gamma = gamma_fraction * b.gamma_r.get_d();
    const double rr = r.get_d();
    rep.lhs = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (!u1.defined(k) || !u2.defined(k)) continue;
        const double d = u2[k] - u1[k];
        rep.lhs = std::max(rep.lhs, d);
        if (d > 0.0) sum += std::pow(d, rr);
    }
    rep.l_r_norm = std::pow(sum * lat.cell_volume(), 1.0 / rr);
    rep.C_fit = rep.lhs > 0.0 ? rep.lhs / std::pow(rep.l_r_norm, rep.gamma) : 0.0;
    return rep;
}

GapReport convolution_gap_check(const GridFunction& u, const std::vector<double>& deltas, double beta) {
    if (deltas.size() < 3) throw PreconditionError("convolution_gap_check: need at least three deltas");
    const double ratio = deltas[1] / deltas[0];
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] > deltas[i - 1]) || std::abs(deltas[i] / deltas[i - 1] - ratio) > 1e-9 * ratio)
            throw PreconditionError("convolution_gap_check: deltas must form an increasing geometric sequence");
    const Lattice& lat = u.lattice();
    const double grad2 = std::pow(gradient_l2(u), 2);
    const double mass = ma_mass(u);
    GapReport rep;
    rep.beta = beta;
    std::vector<double> ds, sups, means;
    for (double d : deltas) {
        const GridFunction us = sup_convolution(u, d);
        const GridFunction um = mean_convolution(u, d);
        GapRow row;
        row.delta = d;
        for (std::size_t k = 0; k < lat.size(); ++k) {
            if (!us.defined(k)) continue;
            const double gs = us[k] - u[k], gm = um[k] - u[k];
            row.sup_gap = std::max(row.sup_gap, gs);
            row.mean_gap = std::max(row.mean_gap, gm);
            row.sup_l2_sq += gs * gs;
            row.mean_integral += gm;
        }
        row.sup_l2_sq *= lat.cell_volume();
        row.mean_integral *= lat.cell_volume();
        row.l2_ratio = grad2 > 0.0 ? row.sup_l2_sq / (grad2 * d * d) : 0.0;
        row.mass_ratio = mass > 0.0 ? row.mean_integral / (mass * d * d) : 0.0;
        rep.A1 = std::max(rep.A1, row.sup_gap / std::pow(d, beta));
        rep.A2 = std::max(rep.A2, row.mean_gap / std::pow(d, beta));
        ds.push_back(d);
        sups.push_back(row.sup_gap);
        means.push_back(row.mean_gap);
        rep.rows.push_back(row);
    }
    auto spread = [&](auto member) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& r : rep.rows) {
            lo = std::min(lo, r.*member);
            hi = std::max(hi, r.*member);
        }
        return lo > 0.0 ? hi / lo : 0.0;
    };
    rep.l2_ratio_spread = spread(&GapRow::l2_ratio);
    rep.mass_ratio_spread = spread(&GapRow::mass_ratio);
    const bool flat = std::all_of(sups.begin(), sups.end(), [](double g) { return g <= 0.0; }) &&
                      std::all_of(means.begin(), means.end(), [](double g) { return g <= 0.0; });
    if (flat) {
        rep.exponents_agree = true;
        return rep;
    }
    rep.sup_fit = power_fit(ds, sups);
    rep.mean_fit = power_fit(ds, means);
    rep.sup_exponent_capped = std::min(rep.sup_fit.alpha, 1.0);
    rep.mean_exponent_capped = std::min(rep.mean_fit.alpha, 1.0);
    rep.exponents_agree = std::abs(rep.sup_exponent_capped - rep.mean_exponent_capped) <= 0.1;
    return rep;
}

GridFunction barrier_shift(const GridFunction& v, const std::vector<double>& x0, double K1, double K2) {
    const Lattice& lat = v.lattice();
    if (x0.size() != lat.dim()) throw PreconditionError("barrier_shift: centre has the wrong dimension");
    GridFunction out = v;
    std::vector<double> x(lat.dim());
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (!v.defined(k)) continue;
        lat.point(k, x);
        double s = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) s += (x[c] - x0[c]) * (x[c] - x0[c]);
        out[k] = v[k] + K1 * s - K2;
    }
    return out;
}

}  // namespace qmap
