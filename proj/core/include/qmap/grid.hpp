#pragma once

#include "qmap/domain.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace qmap {

/// Values on every lattice node. Exterior nodes, and nodes outside the set a
/// function is defined on (e.g. Omega_delta), hold NaN.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(LatticePtr lattice, double fill = std::nan(""));

    /// Samples g at every closed-domain node.
    static GridFunction sample(LatticePtr lattice, const std::function<double(std::span<const double>)>& g);
    /// Psi on boundary nodes, `interior_value` inside.
    static GridFunction boundary_data(LatticePtr lattice, double interior_value);

    const Lattice& lattice() const { return *lattice_; }
    const LatticePtr& lattice_ptr() const { return lattice_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }
    bool defined(std::size_t k) const { return std::isfinite(values_[k]); }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double max() const;
    double min() const;

private:
    LatticePtr lattice_;
    std::vector<double> values_;
};

GridFunction operator-(const GridFunction& a, const GridFunction& b);

/// Largest |a - b| over nodes where both are defined.
double max_abs_difference(const GridFunction& a, const GridFunction& b);

/// Central second differences at node k into hess (row-major dim x dim,
/// upper triangle filled). False when a needed neighbour is undefined.
bool central_hessian(const GridFunction& u, std::size_t k, std::span<double> hess);

enum class GridFormat { binary, csv };

GridFormat grid_format_from_string(const std::string& text);

/// "QGRID v1 n=<n> shape=<box|ball> h=<h> dims=<d0,...>" on its own line, then
/// row-major float64 values: little-endian binary or one value per CSV line.
void write_qgrid(const std::string& path, const GridFunction& g, GridFormat format);

struct QGridData {
    std::size_t n = 0;
    Shape shape = Shape::ball;
    double h = 0.0;
    std::vector<int> dims;
    std::vector<double> values;
};

QGridData read_qgrid(const std::string& path);

}  // namespace qmap
