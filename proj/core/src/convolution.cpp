#include "qmap/convolution.hpp"

#include "qmap/baston.hpp"
#include "qmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace qmap {
namespace {

void check_radius(const GridFunction& u, double delta, double min_steps, const char* what) {
    const Lattice& lat = u.lattice();
    if (delta < min_steps * lat.h() * (1.0 - 1e-12))
        throw PreconditionError(std::string(what) + ": radius below " + std::to_string(min_steps) + " h");
    if (delta > lat.spec().inradius()) throw PreconditionError(std::string(what) + ": radius exceeds the inradius");
}

template <class Reduce>
GridFunction ball_reduce(const GridFunction& u, double delta, Reduce reduce) {
    const Lattice& lat = u.lattice();
    const auto mask = eroded_mask(lat, delta);
    const auto offsets = ball_offsets(lat.dim(), lat.h(), delta);
    GridFunction out(u.lattice_ptr());
    std::vector<double> vals;
    vals.reserve(offsets.size());
    for (std::size_t k = 0; k < lat.size(); ++k) {
        out[k] = std::nan("");
        if (!mask[k]) continue;
        vals.clear();
        for (const auto& o : offsets) {
            const std::int64_t nb = lat.shifted(k, o);
            if (nb < 0 || !u.defined(static_cast<std::size_t>(nb))) continue;
            vals.push_back(u[static_cast<std::size_t>(nb)]);
        }
        out[k] = reduce(vals, k);
    }
    return out;
}

}  // namespace

std::vector<char> eroded_mask(const Lattice& lattice, double delta) {
    std::vector<char> mask(lattice.size(), 0);
    std::vector<double> x(lattice.dim());
    const double slack = 1e-9 * lattice.h();
    for (std::size_t k = 0; k < lattice.size(); ++k) {
        if (!lattice.is_closed(k)) continue;
        lattice.point(k, x);
        mask[k] = lattice.spec().signed_distance(x) >= delta - slack;
    }
    return mask;
}

std::vector<std::vector<int>> ball_offsets(std::size_t dim, double h, double delta) {
    const int m = static_cast<int>(std::floor(delta / h + 1e-9));
    const double r2 = (delta / h) * (delta / h) * (1.0 + 1e-12);
    std::vector<std::vector<int>> out;
    std::vector<int> o(dim, -m);
    for (;;) {
        double s = 0.0;
        for (int c : o) s += static_cast<double>(c) * c;
        if (s <= r2) out.push_back(o);
        std::size_t i = dim;
        while (i > 0 && o[i - 1] == m) o[--i] = -m;
        if (i == 0) break;
        ++o[i - 1];
    }
    return out;
}

double unit_ball_volume(std::size_t dim) {
    const double half = static_cast<double>(dim) / 2.0;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

GridFunction sup_convolution(const GridFunction& u, double delta) {
    check_radius(u, delta, 1.0, "sup_convolution");
    return ball_reduce(u, delta, [](const std::vector<double>& v, std::size_t) {
        return *std::max_element(v.begin(), v.end());
    });
}

GridFunction mean_convolution(const GridFunction& u, double delta) {
    check_radius(u, delta, 2.0, "mean_convolution");
    return ball_reduce(u, delta, [](const std::vector<double>& v, std::size_t) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    });
}

GlueResult glue_extension(const GridFunction& u, double delta, double beta, std::optional<double> c0) {
    const Lattice& lat = u.lattice();
    const GridFunction ud = sup_convolution(u, delta);
    const auto mask = eroded_mask(lat, delta);
    const double db = std::pow(delta, beta);
    GlueResult r;
    if (c0) {
        r.c0 = *c0;
    } else {
        double best = 0.0;
        std::vector<int> off(lat.dim(), 0);
        for (std::size_t k = 0; k < lat.size(); ++k) {
            if (!mask[k]) continue;
            bool seam = false;
            for (std::size_t c = 0; c < lat.dim() && !seam; ++c)
                for (int s : {-1, 1}) {
                    off[c] = s;
                    const std::int64_t nb = lat.shifted(k, off);
                    off[c] = 0;
                    if (nb < 0 || !mask[static_cast<std::size_t>(nb)]) seam = true;
                }
            if (seam) best = std::max(best, (ud[k] - u[k]) / db);
        }
        r.c0 = best;
    }
    r.u_tilde = GridFunction(u.lattice_ptr());
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (!u.defined(k)) {
            r.u_tilde[k] = std::nan("");
            continue;
        }
        const double lifted = u[k] + r.c0 * db;
        r.u_tilde[k] = mask[k] ? std::max(ud[k], lifted) : lifted;
    }
    return r;
}

GridFunction mollify(const GridFunction& u, double eps) {
    check_radius(u, eps, 2.0, "mollify");
    const Lattice& lat = u.lattice();
    const auto offsets = ball_offsets(lat.dim(), lat.h(), eps);
    std::vector<double> w(offsets.size());
    double total = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        double s = 0.0;
        for (int c : offsets[i]) s += static_cast<double>(c) * c;
        const double r2 = s * lat.h() * lat.h() / (eps * eps);
        w[i] = r2 < 1.0 ? std::pow(1.0 - r2, 4) : 0.0;
        total += w[i];
    }
    for (double& x : w) x /= total;
    const auto mask = eroded_mask(lat, eps);
    GridFunction out(u.lattice_ptr());
    for (std::size_t k = 0; k < lat.size(); ++k) {
        out[k] = std::nan("");
        if (!mask[k]) continue;
        double s = 0.0;
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            if (w[i] == 0.0) continue;
            const std::int64_t nb = lat.shifted(k, offsets[i]);
            if (nb < 0 || !u.defined(static_cast<std::size_t>(nb))) continue;
            s += w[i] * u[static_cast<std::size_t>(nb)];
        }
        out[k] = s;
    }
    return out;
}

double gradient_l2(const GridFunction& u) {
    const Lattice& lat = u.lattice();
    const double h = lat.h();
    std::vector<int> off(lat.dim(), 0);
    double sum = 0.0;
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (!u.defined(k)) continue;
        for (std::size_t c = 0; c < lat.dim(); ++c) {
            off[c] = 1;
            const std::int64_t nb = lat.shifted(k, off);
            off[c] = 0;
            if (nb < 0 || !u.defined(static_cast<std::size_t>(nb))) continue;
            const double g = (u[static_cast<std::size_t>(nb)] - u[k]) / h;
            // edges lying in a face of the domain carry half a cell
            const bool face = lat.kind(k) == NodeKind::boundary && lat.kind(static_cast<std::size_t>(nb)) == NodeKind::boundary;
            sum += (face ? 0.5 : 1.0) * g * g;
        }
    }
    return std::sqrt(sum * lat.cell_volume());
}

const std::vector<double>& ma_mass_operator(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::vector<double>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const std::size_t dim = 4 * n;
    const RealPoly beta = norm_squared(n).scale(Rational(1, 8));
    const std::vector<Rational> origin(dim, Rational(0));
    std::vector<double> m(dim * dim, 0.0);
    for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = p; q < dim; ++q) {
            RealPoly mono(dim);
            Monomial e(dim, 0);
            ++e[p];
            ++e[q];
            mono.add_term(e, Rational(1));
            std::vector<RealPoly> us(n, beta);
            us[0] = mono;
            GaussRational v = mixed_ma(us).evaluate(origin);
            if (!is_zero(v.im)) throw PreconditionError("ma_mass operator has a non-real coefficient");
            m[p * dim + q] = (p == q ? Rational(v.re / 2) : v.re).get_d();
        }
    return cache.emplace(n, std::move(m)).first->second;
}

double ma_mass(const GridFunction& u) {
    const Lattice& lat = u.lattice();
    const std::size_t dim = lat.dim();
    const auto& m = ma_mass_operator(lat.spec().n);
    std::vector<double> hess(dim * dim);
    double sum = 0.0;
    for (std::size_t k : lat.interior()) {
        if (!central_hessian(u, k, hess)) continue;
        double v = 0.0;
        for (std::size_t p = 0; p < dim; ++p)
            for (std::size_t q = p; q < dim; ++q) v += m[p * dim + q] * hess[p * dim + q];
        sum += v;
    }
    return sum * lat.cell_volume();
}

}  // namespace qmap
