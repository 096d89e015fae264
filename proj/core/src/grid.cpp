#include "qmap/grid.hpp"

#include "qmap/error.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace qmap {

GridFunction::GridFunction(LatticePtr lattice, double fill) : lattice_(std::move(lattice)) {
    values_.assign(lattice_->size(), std::nan(""));
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (lattice_->is_closed(k)) values_[k] = fill;
}

GridFunction GridFunction::sample(LatticePtr lattice, const std::function<double(std::span<const double>)>& g) {
    GridFunction out(lattice);
    std::vector<double> x(lattice->dim());
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (!lattice->is_closed(k)) continue;
        lattice->point(k, x);
        out[k] = g(x);
    }
    return out;
}

GridFunction GridFunction::boundary_data(LatticePtr lattice, double interior_value) {
    GridFunction out(lattice, interior_value);
    const ExprAst& psi = lattice->spec().psi;
    std::vector<double> x(lattice->dim());
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (lattice->kind(k) != NodeKind::boundary) continue;
        lattice->point(k, x);
        out[k] = psi.evaluate(x);
    }
    return out;
}

double GridFunction::max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values_)
        if (std::isfinite(v)) m = std::max(m, v);
    return m;
}

double GridFunction::min() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : values_)
        if (std::isfinite(v)) m = std::min(m, v);
    return m;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    if (&a.lattice() != &b.lattice()) throw PreconditionError("grid functions live on different lattices");
    GridFunction out(a.lattice_ptr());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) throw PreconditionError("grid functions have different sizes");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a.defined(k) && b.defined(k)) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

bool central_hessian(const GridFunction& u, std::size_t k, std::span<double> hess) {
    const Lattice& lat = u.lattice();
    const std::size_t dim = lat.dim();
    const double h2 = lat.h() * lat.h();
    if (!u.defined(k)) return false;
    std::vector<int> off(dim, 0);
    bool ok = true;
    auto at = [&](std::size_t p, int sp, std::size_t q, int sq) {
        std::fill(off.begin(), off.end(), 0);
        off[p] += sp;
        off[q] += sq;
        const std::int64_t nb = lat.shifted(k, off);
        if (nb < 0 || !u.defined(static_cast<std::size_t>(nb))) {
            ok = false;
            return 0.0;
        }
        return u[static_cast<std::size_t>(nb)];
    };
    for (std::size_t p = 0; p < dim && ok; ++p) {
        hess[p * dim + p] = (at(p, 1, p, 0) - 2.0 * u[k] + at(p, -1, p, 0)) / h2;
        for (std::size_t q = p + 1; q < dim && ok; ++q)
            hess[p * dim + q] = (at(p, 1, q, 1) - at(p, 1, q, -1) - at(p, -1, q, 1) + at(p, -1, q, -1)) / (4.0 * h2);
    }
    return ok;
}

GridFormat grid_format_from_string(const std::string& text) {
    if (text == "binary") return GridFormat::binary;
    if (text == "csv") return GridFormat::csv;
    throw PreconditionError("unknown grid format '" + text + "' (expected binary or csv)");
}

void write_qgrid(const std::string& path, const GridFunction& g, GridFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    const Lattice& lat = g.lattice();
    char hbuf[64];
    auto [end, ec] = std::to_chars(hbuf, hbuf + sizeof hbuf, lat.h());
    out << "QGRID v1 n=" << lat.spec().n << " shape=" << to_string(lat.spec().shape)
        << " h=" << std::string(hbuf, end) << " dims=";
    for (std::size_t i = 0; i < lat.dims().size(); ++i) out << (i ? "," : "") << lat.dims()[i];
    out << '\n';
    if (format == GridFormat::csv) {
        char buf[64];
        for (double v : g.values()) {
            if (std::isnan(v)) {
                out << "nan\n";
                continue;
            }
            auto [p, e] = std::to_chars(buf, buf + sizeof buf, v);
            out.write(buf, p - buf);
            out << '\n';
        }
    } else {
        static_assert(std::endian::native == std::endian::little, "binary QGRID writer assumes little-endian");
        out.write(reinterpret_cast<const char*>(g.values().data()),
                  static_cast<std::streamsize>(g.values().size() * sizeof(double)));
    }
    if (!out) throw Error("write failed: " + path);
}

QGridData read_qgrid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, version;
    hs >> magic >> version;
    if (magic != "QGRID" || version != "v1") throw Error(path + ": not a QGRID v1 file");
    QGridData d;
    std::string field;
    while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw Error(path + ": malformed header field '" + field + "'");
        const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "n") d.n = std::stoul(value);
        else if (key == "shape") d.shape = shape_from_string(value);
        else if (key == "h") d.h = std::stod(value);
        else if (key == "dims") {
            std::istringstream ds(value);
            std::string part;
            while (std::getline(ds, part, ',')) d.dims.push_back(std::stoi(part));
        } else throw Error(path + ": unknown header field '" + key + "'");
    }
    std::size_t total = 1;
    for (int v : d.dims) total *= static_cast<std::size_t>(v);
    d.values.resize(total);

    // A CSV body uses only number characters and newlines; raw doubles
    // essentially never do.
    const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const bool csv = body.find_first_not_of("0123456789.+-eEnaif\n\r") == std::string::npos;
    if (csv) {
        std::istringstream src(body);
        std::string line;
        for (std::size_t k = 0; k < total; ++k) {
            if (!std::getline(src, line)) throw Error(path + ": truncated CSV body");
            if (!line.empty() && line.back() == '\r') line.pop_back();
            d.values[k] = line == "nan" ? std::nan("") : std::stod(line);
        }
    } else {
        if (body.size() != total * sizeof(double)) throw Error(path + ": binary body has the wrong size");
        std::memcpy(d.values.data(), body.data(), body.size());
    }
    return d;
}

}  // namespace qmap
