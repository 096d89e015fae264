#include "qmap/domain.hpp"

#include "qmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmap {
namespace {

constexpr double kOnBoundary = 1e-9;

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

std::string to_string(Shape s) { return s == Shape::box ? "box" : "ball"; }

Shape shape_from_string(const std::string& text) {
    if (text == "box") return Shape::box;
    if (text == "ball") return Shape::ball;
    throw PreconditionError("unknown shape '" + text + "' (expected box or ball)");
}

void DomainSpec::validate() const {
    if (n < 1 || n > 2) throw PreconditionError("domain.n: must be 1 or 2");
    if (!(h > 0.0) || !std::isfinite(h)) throw PreconditionError("domain.h: must be positive");
    const std::size_t d = dim();
    if (shape == Shape::box) {
        if (lower.size() != d || upper.size() != d)
            throw PreconditionError("domain.lower/upper: need " + std::to_string(d) + " entries");
        for (std::size_t i = 0; i < d; ++i)
            if (!(upper[i] > lower[i])) throw PreconditionError("domain.upper: must exceed domain.lower");
    } else {
        if (center.size() != d) throw PreconditionError("domain.center: need " + std::to_string(d) + " entries");
        if (!(radius > 0.0)) throw PreconditionError("domain.radius: must be positive");
    }
    if (psi.nvars() != d) throw PreconditionError("problem.psi: expression variable count must be 4n");
    if (f.nvars() != d) throw PreconditionError("problem.f: expression variable count must be 4n");
    if (2.0 * h > inradius()) throw PreconditionError("domain.h: grid too coarse for the domain");
}

double DomainSpec::signed_distance(std::span<const double> x) const {
    if (shape == Shape::ball) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - center[i]) * (x[i] - center[i]);
        return radius - std::sqrt(s);
    }
    double inside = std::numeric_limits<double>::infinity();
    double outside = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lo = x[i] - lower[i], hi = upper[i] - x[i];
        inside = std::min({inside, lo, hi});
        const double ex = std::max({0.0, -lo, -hi});
        outside += ex * ex;
    }
    return inside >= 0.0 ? inside : -std::sqrt(outside);
}

double DomainSpec::exit_fraction(std::span<const double> x, std::span<const double> step) const {
    double theta = 1.0;
    if (shape == Shape::ball) {
        // |x - c + theta step|^2 = R^2, positive root
        double a = 0.0, b = 0.0, c = -radius * radius;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double y = x[i] - center[i];
            a += step[i] * step[i];
            b += 2.0 * y * step[i];
            c += y * y;
        }
        const double disc = std::max(0.0, b * b - 4.0 * a * c);
        theta = (-b + std::sqrt(disc)) / (2.0 * a);
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (step[i] > 0.0) theta = std::min(theta, (upper[i] - x[i]) / step[i]);
            if (step[i] < 0.0) theta = std::min(theta, (lower[i] - x[i]) / step[i]);
        }
    }
    return std::clamp(theta, 1e-12, 1.0);
}

std::vector<double> DomainSpec::project_to_boundary(std::span<const double> x) const {
    std::vector<double> y(x.begin(), x.end());
    if (shape == Shape::ball) {
        double r = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) r += (x[i] - center[i]) * (x[i] - center[i]);
        r = std::sqrt(r);
        if (r == 0.0) {
            y[0] = center[0] + radius;
            return y;
        }
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = center[i] + (x[i] - center[i]) * radius / r;
        return y;
    }
    std::size_t best = 0;
    double gap = std::numeric_limits<double>::infinity();
    bool to_upper = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] - lower[i] < gap) {
            gap = x[i] - lower[i];
            best = i;
            to_upper = false;
        }
        if (upper[i] - x[i] < gap) {
            gap = upper[i] - x[i];
            best = i;
            to_upper = true;
        }
    }
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::clamp(x[i], lower[i], upper[i]);
    y[best] = to_upper ? upper[best] : lower[best];
    return y;
}

double DomainSpec::inradius() const {
    if (shape == Shape::ball) return radius;
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lower.size(); ++i) r = std::min(r, 0.5 * (upper[i] - lower[i]));
    return r;
}

double DomainSpec::diameter() const {
    if (shape == Shape::ball) return 2.0 * radius;
    std::vector<double> e(lower.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = upper[i] - lower[i];
    return norm(e);
}

DomainSpec make_ball(std::size_t n, double radius, double h, const std::string& psi, const std::string& f) {
    DomainSpec s;
    s.n = n;
    s.shape = Shape::ball;
    s.center.assign(4 * n, 0.0);
    s.radius = radius;
    s.h = h;
    s.psi = parse_expression(psi, 4 * n);
    s.f = parse_expression(f, 4 * n);
    s.validate();
    return s;
}

DomainSpec make_box(std::size_t n, double lo, double hi, double h, const std::string& psi, const std::string& f) {
    DomainSpec s;
    s.n = n;
    s.shape = Shape::box;
    s.lower.assign(4 * n, lo);
    s.upper.assign(4 * n, hi);
    s.h = h;
    s.psi = parse_expression(psi, 4 * n);
    s.f = parse_expression(f, 4 * n);
    s.validate();
    return s;
}

Lattice::Lattice(DomainSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const std::size_t d = spec_.dim();
    const double h = spec_.h;
    dims_.resize(d);
    origin_.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (spec_.shape == Shape::ball) {
            const int m = static_cast<int>(std::floor(spec_.radius / h + kOnBoundary)) + 1;
            origin_[i] = spec_.center[i] - m * h;
            dims_[i] = 2 * m + 1;
        } else {
            origin_[i] = spec_.lower[i];
            dims_[i] = static_cast<int>(std::floor((spec_.upper[i] - spec_.lower[i]) / h + kOnBoundary)) + 1;
        }
    }
    strides_.assign(d, 1);
    for (std::size_t i = d - 1; i > 0; --i) strides_[i - 1] = strides_[i] * static_cast<std::size_t>(dims_[i]);
    const std::size_t total = strides_[0] * static_cast<std::size_t>(dims_[0]);

    kinds_.resize(total);
    std::vector<double> x(d);
    for (std::size_t k = 0; k < total; ++k) {
        point(k, x);
        const double s = spec_.signed_distance(x);
        if (s > kOnBoundary * h) {
            kinds_[k] = NodeKind::interior;
            interior_.push_back(k);
        } else if (s >= -kOnBoundary * h) {
            kinds_[k] = NodeKind::boundary;
        } else {
            kinds_[k] = NodeKind::exterior;
        }
    }
}

void Lattice::coords(std::size_t k, std::span<int> out) const {
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        out[i] = static_cast<int>(k / strides_[i]);
        k %= strides_[i];
    }
}

void Lattice::point(std::size_t k, std::span<double> out) const {
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        out[i] = origin_[i] + static_cast<double>(k / strides_[i]) * spec_.h;
        k %= strides_[i];
    }
}

std::vector<double> Lattice::point(std::size_t k) const {
    std::vector<double> x(dims_.size());
    point(k, x);
    return x;
}

std::int64_t Lattice::shifted(std::size_t k, std::span<const int> offset) const {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        const std::int64_t c = static_cast<std::int64_t>(k / strides_[i]) + offset[i];
        k %= strides_[i];
        if (c < 0 || c >= dims_[i]) return -1;
        out += c * static_cast<std::int64_t>(strides_[i]);
    }
    return out;
}

double Lattice::cell_volume() const { return std::pow(spec_.h, static_cast<double>(dims_.size())); }

LatticePtr make_lattice(DomainSpec spec) { return std::make_shared<const Lattice>(std::move(spec)); }

}  // namespace qmap
