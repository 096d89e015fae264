#pragma once

#include "qmap/expr.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qmap {

enum class Shape { box, ball };

std::string to_string(Shape s);
Shape shape_from_string(const std::string& text);

/// Dirichlet problem (Delta u)^n = f dV on a box or ball in R^{4n}, u = psi on
/// the boundary.
struct DomainSpec {
    std::size_t n = 1;
    Shape shape = Shape::ball;
    std::vector<double> lower, upper;  // box
    std::vector<double> center;        // ball
    double radius = 1.0;
    double h = 0.125;
    ExprAst psi;
    ExprAst f;

    std::size_t dim() const { return 4 * n; }

    /// Throws PreconditionError naming the offending field.
    void validate() const;

    /// Distance to the boundary, positive inside and negative outside.
    double signed_distance(std::span<const double> x) const;
    /// Smallest theta in (0, 1] with x + theta * step on the boundary, for x
    /// strictly inside and x + step not strictly inside.
    double exit_fraction(std::span<const double> x, std::span<const double> step) const;

    /// Nearest boundary point (radial projection for balls).
    std::vector<double> project_to_boundary(std::span<const double> x) const;

    double inradius() const;
    double diameter() const;
};

DomainSpec make_ball(std::size_t n, double radius, double h, const std::string& psi, const std::string& f);
DomainSpec make_box(std::size_t n, double lo, double hi, double h, const std::string& psi, const std::string& f);

enum class NodeKind : std::uint8_t { exterior, interior, boundary };

/// Uniform lattice covering the domain. Nodes strictly inside are interior,
/// nodes lying on the boundary (to 1e-9 h) are boundary nodes, the rest are
/// exterior. Boundary arms of stencils end at the exact boundary crossing, so
/// no ghost layer is kept.
class Lattice {
public:
    explicit Lattice(DomainSpec spec);

    const DomainSpec& spec() const { return spec_; }
    std::size_t dim() const { return dims_.size(); }
    double h() const { return spec_.h; }
    const std::vector<int>& dims() const { return dims_; }
    std::size_t size() const { return kinds_.size(); }

    NodeKind kind(std::size_t k) const { return kinds_[k]; }
    bool is_interior(std::size_t k) const { return kinds_[k] == NodeKind::interior; }
    /// Interior or boundary: nodes of the closed domain.
    bool is_closed(std::size_t k) const { return kinds_[k] != NodeKind::exterior; }

    void coords(std::size_t k, std::span<int> out) const;
    void point(std::size_t k, std::span<double> out) const;
    std::vector<double> point(std::size_t k) const;

    /// Node index of k shifted by an integer offset, or -1 when the shift
    /// leaves the lattice.
    std::int64_t shifted(std::size_t k, std::span<const int> offset) const;

    const std::vector<std::size_t>& interior() const { return interior_; }
    std::size_t interior_count() const { return interior_.size(); }
    double cell_volume() const;

private:
    DomainSpec spec_;
    std::vector<int> dims_;
    std::vector<double> origin_;
    std::vector<std::size_t> strides_;
    std::vector<NodeKind> kinds_;
    std::vector<std::size_t> interior_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

LatticePtr make_lattice(DomainSpec spec);

}  // namespace qmap
