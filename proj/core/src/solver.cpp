#include "qmap/solver.hpp"

#include "qmap/baston.hpp"
#include "qmap/error.hpp"
#include "qmap/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

namespace qmap {

BellmanScheme::BellmanScheme(LatticePtr lattice, std::vector<OperatorSample> samples, PointFunction boundary)
    : lattice_(std::move(lattice)), samples_(std::move(samples)), boundary_(std::move(boundary)) {
    if (samples_.empty()) throw PreconditionError("BellmanScheme needs at least one operator sample");
    const Lattice& lat = *lattice_;
    const std::size_t dim = lat.dim();
    const double h = lat.h();

    std::map<std::vector<int>, std::size_t> dir_index;
    for (const auto& s : samples_) {
        std::vector<std::pair<std::size_t, double>> arms;
        for (const auto& arm : s.arms) {
            if (arm.v.size() != dim) throw PreconditionError("stencil dimension does not match the lattice");
            auto [it, inserted] = dir_index.try_emplace(arm.v, dirs_.size());
            if (inserted) {
                dirs_.push_back(arm.v);
                double len2 = 0.0;
                for (int x : arm.v) len2 += x * x;
                dir_length_.push_back(std::sqrt(len2) * h);
            }
            arms.emplace_back(it->second, arm.lambda);
        }
        if (arms.empty()) throw PreconditionError("operator sample has an empty stencil");
        sample_arms_.push_back(std::move(arms));
    }

    compact_of_.assign(lat.size(), -1);
    for (std::size_t i = 0; i < lat.interior_count(); ++i) compact_of_[lat.interior()[i]] = static_cast<std::int64_t>(i);

    const std::size_t nd = dirs_.size();
    refs_.resize(lat.interior_count() * nd * 2);
    std::vector<double> x(dim), step(dim), y(dim);
    std::vector<int> offset(dim);
    for (std::size_t i = 0; i < lat.interior_count(); ++i) {
        const std::size_t k = lat.interior()[i];
        lat.point(k, x);
        for (std::size_t d = 0; d < nd; ++d)
            for (int sign = 0; sign < 2; ++sign) {
                const int sg = sign == 0 ? 1 : -1;
                for (std::size_t c = 0; c < dim; ++c) {
                    offset[c] = sg * dirs_[d][c];
                    step[c] = offset[c] * h;
                }
                const std::int64_t nb = lat.shifted(k, offset);
                std::int32_t& ref = refs_[(i * nd + d) * 2 + static_cast<std::size_t>(sign)];
                if (nb >= 0 && lat.is_interior(static_cast<std::size_t>(nb))) {
                    ref = static_cast<std::int32_t>(compact_of_[static_cast<std::size_t>(nb)]);
                    continue;
                }
                const bool on_boundary = nb >= 0 && lat.kind(static_cast<std::size_t>(nb)) == NodeKind::boundary;
                const double theta = on_boundary ? 1.0 : lat.spec().exit_fraction(x, step);
                for (std::size_t c = 0; c < dim; ++c) y[c] = x[c] + theta * step[c];
                ref = -static_cast<std::int32_t>(slot_theta_.size()) - 1;
                slot_theta_.push_back(theta);
                slot_value_.push_back(boundary_(y));
            }
    }
}

double BellmanScheme::arm_value(const std::vector<double>& u, std::int32_t ref, double& theta) const {
    if (ref >= 0) {
        theta = 1.0;
        return u[static_cast<std::size_t>(ref)];
    }
    const auto slot = static_cast<std::size_t>(-ref - 1);
    theta = slot_theta_[slot];
    return slot_value_[slot];
}

double BellmanScheme::candidate(const std::vector<double>& u, std::size_t i, std::size_t sample, double g) const {
    const std::size_t nd = dirs_.size();
    double num = 0.0, den = 0.0;
    for (const auto& [d, lambda] : sample_arms_[sample]) {
        const std::size_t base = (i * nd + d) * 2;
        double tp, tm;
        const double up = arm_value(u, refs_[base], tp);
        const double um = arm_value(u, refs_[base + 1], tm);
        const double lp = tp * dir_length_[d], lm = tm * dir_length_[d];
        const double cp = 2.0 / (lp * (lp + lm)), cm = 2.0 / (lm * (lp + lm));
        num += lambda * (cp * up + cm * um);
        den += lambda * (cp + cm);
    }
    return (num - g) / den;
}

SolveResult BellmanScheme::solve(const GridFunction& density, const SolverOptions& options,
                                 const std::vector<double>* obstacle) const {
    const Lattice& lat = *lattice_;
    if (&density.lattice() != &lat) throw PreconditionError("density lives on a different lattice");
    if (!(options.omega > 0.0 && options.omega < 2.0)) throw PreconditionError("solver.omega must lie in (0, 2)");
    if (options.policy_sweeps < 1) throw PreconditionError("solver.policy_sweeps must be at least 1");
    if (obstacle && obstacle->size() != lat.size()) throw PreconditionError("obstacle has the wrong size");
    const std::size_t n = lat.spec().n;
    const double an = bellman_constant(n);
    const std::size_t count = lat.interior_count();

    std::vector<double> g(count), cap(count, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = lat.interior()[i];
        const double f = density[k];
        if (!(f >= 0.0)) {
            const auto x = lat.point(k);
            std::string where;
            for (double c : x) where += (where.empty() ? "" : ",") + std::to_string(c);
            throw PreconditionError("density f is negative or undefined at node (" + where + ")");
        }
        g[i] = an * (n == 1 ? f : std::pow(f, 1.0 / static_cast<double>(n)));
        if (obstacle) {
            const double o = (*obstacle)[k];
            if (!std::isnan(o)) cap[i] = o;
        }
    }

    double top = -std::numeric_limits<double>::infinity();
    for (double v : slot_value_) top = std::max(top, v);
    if (!std::isfinite(top)) top = 0.0;
    std::vector<double> u(count);
    for (std::size_t i = 0; i < count; ++i) u[i] = std::min(top, cap[i]);

    std::vector<std::uint32_t> policy(count, 0);
    const std::size_t ns = samples_.size();
    SolveResult result;
    SolveReport& rep = result.report;
    bool converged = false;
    int sweep = 0;
    for (; sweep < options.max_iter; ++sweep) {
        const bool full = sweep % options.policy_sweeps == 0;
        double biggest = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            double c;
            if (full) {
                c = std::numeric_limits<double>::infinity();
                for (std::size_t s = 0; s < ns; ++s) {
                    const double v = candidate(u, i, s, g[i]);
                    if (v < c) {
                        c = v;
                        policy[i] = static_cast<std::uint32_t>(s);
                    }
                }
            } else {
                c = candidate(u, i, policy[i], g[i]);
            }
            double next = u[i] + options.omega * (std::min(c, cap[i]) - u[i]);
            next = std::min(next, cap[i]);
            biggest = std::max(biggest, std::abs(next - u[i]));
            u[i] = next;
        }
        if (full) {
            rep.update_history.push_back(biggest);
            rep.last_update = biggest;
            if (biggest < options.tol) {
                converged = true;
                ++sweep;
                break;
            }
        }
    }
    rep.iterations = sweep;

    double residual = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        double c = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < ns; ++s) c = std::min(c, candidate(u, i, s, g[i]));
        residual = std::max(residual, std::abs(std::min(c, cap[i]) - u[i]));
    }
    rep.residual = residual;
    if (!converged)
        throw ConvergenceError("Bellman iteration did not converge in " + std::to_string(sweep) +
                                   " sweeps (last update " + std::to_string(rep.last_update) + ")",
                               residual, sweep);

    GridFunction out(lattice_);
    for (std::size_t i = 0; i < count; ++i) out[lat.interior()[i]] = u[i];
    result.u = with_boundary(out);
    return result;
}

GridFunction BellmanScheme::with_boundary(const GridFunction& u) const {
    const Lattice& lat = *lattice_;
    GridFunction out = u;
    std::vector<double> x(lat.dim());
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (lat.kind(k) == NodeKind::boundary) {
            lat.point(k, x);
            out[k] = boundary_(x);
        } else if (lat.kind(k) == NodeKind::exterior) {
            out[k] = std::nan("");
        }
    }
    return out;
}

double BellmanScheme::apply(const GridFunction& u, std::size_t k, std::size_t sample) const {
    const Lattice& lat = *lattice_;
    const std::int64_t i = compact_of_.at(k);
    if (i < 0) throw PreconditionError("apply: node is not interior");
    const std::size_t nd = dirs_.size();
    const auto& interior = lat.interior();
    auto value = [&](std::int32_t ref, double& theta) {
        if (ref >= 0) {
            theta = 1.0;
            return u[interior[static_cast<std::size_t>(ref)]];
        }
        const auto slot = static_cast<std::size_t>(-ref - 1);
        theta = slot_theta_[slot];
        return slot_value_[slot];
    };
    const double u0 = u[k];
    double total = 0.0;
    for (const auto& [d, lambda] : sample_arms_.at(sample)) {
        const std::size_t base = (static_cast<std::size_t>(i) * nd + d) * 2;
        double tp, tm;
        const double up = value(refs_[base], tp);
        const double um = value(refs_[base + 1], tm);
        const double lp = tp * dir_length_[d], lm = tm * dir_length_[d];
        total += lambda * 2.0 / (lp + lm) * ((up - u0) / lp + (um - u0) / lm);
    }
    return total;
}

GridFunction BellmanScheme::density(const GridFunction& u) const {
    const Lattice& lat = *lattice_;
    const std::size_t n = lat.spec().n;
    const double an = bellman_constant(n);
    GridFunction out(lattice_);
    for (std::size_t k = 0; k < lat.size(); ++k)
        if (lat.kind(k) == NodeKind::boundary) out[k] = std::nan("");
    for (std::size_t k : lat.interior()) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < samples_.size(); ++s) m = std::min(m, apply(u, k, s));
        out[k] = std::pow(std::max(0.0, m) / an, static_cast<double>(n));
    }
    return out;
}

SolveResult bellman_solve_dirichlet(const BellmanScheme& scheme, const SolverOptions& options) {
    return scheme.solve(density_field(scheme.lattice_ptr()), options);
}

GridFunction density_field(LatticePtr lattice) {
    const ExprAst& f = lattice->spec().f;
    return GridFunction::sample(lattice, [&](std::span<const double> x) { return f.evaluate(x); });
}

namespace {

// Delta_ij = sum_{p <= q} T_pq d_p d_q, one table per (i, j).
struct DeltaTables {
    std::size_t n = 0;
    std::vector<std::vector<std::complex<double>>> t;  // [(i * 2n + j)][p * dim + q]
};

const DeltaTables& delta_tables(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, DeltaTables> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const std::size_t dim = 4 * n, m = 2 * n;
    DeltaTables tab;
    tab.n = n;
    tab.t.assign(m * m, std::vector<std::complex<double>>(dim * dim));
    const std::vector<Rational> origin(dim, Rational(0));
    for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = p; q < dim; ++q) {
            RealPoly mono(dim);
            Monomial e(dim, 0);
            ++e[p];
            ++e[q];
            mono.add_term(e, Rational(1));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    GaussRational v = delta_ij(i, j, mono).evaluate(origin);
                    if (p == q) v = v * Rational(1, 2);
                    tab.t[i * m + j][p * dim + q] = {v.re.get_d(), v.im.get_d()};
                }
        }
    return cache.emplace(n, std::move(tab)).first->second;
}

int perm_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
    return inversions % 2 ? -1 : 1;
}

}  // namespace

GridFunction ma_density(const GridFunction& u, const Rational& c_n) {
    const Lattice& lat = u.lattice();
    const std::size_t n = lat.spec().n, dim = lat.dim(), m = 2 * n;
    const DeltaTables& tab = delta_tables(n);
    Rational fact(1);
    for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<long>(k);
    const double normaliser = Rational(c_n / fact).get_d();

    std::vector<int> perm(m);
    std::vector<std::pair<int, std::vector<int>>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do perms.emplace_back(perm_sign(perm), perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    GridFunction out(u.lattice_ptr());
    std::vector<double> hess(dim * dim);
    std::vector<std::complex<double>> delta(m * m);
    for (std::size_t k = 0; k < lat.size(); ++k) {
        out[k] = std::nan("");
        if (!lat.is_interior(k) || !central_hessian(u, k, hess)) continue;
        for (std::size_t ij = 0; ij < m * m; ++ij) {
            std::complex<double> s = 0.0;
            for (std::size_t p = 0; p < dim; ++p)
                for (std::size_t q = p; q < dim; ++q) s += tab.t[ij][p * dim + q] * hess[p * dim + q];
            delta[ij] = s;
        }
        std::complex<double> total = 0.0;
        for (const auto& [sign, pm] : perms) {
            std::complex<double> term = static_cast<double>(sign);
            for (std::size_t c = 0; c < n; ++c)
                term *= delta[static_cast<std::size_t>(pm[2 * c]) * m + static_cast<std::size_t>(pm[2 * c + 1])];
            total += term;
        }
        out[k] = total.real() / normaliser;
    }
    return out;
}

}  // namespace qmap
