#pragma once

#include "qmap/domain.hpp"
#include "qmap/error.hpp"
#include "qmap/grid.hpp"
#include "qmap/rational.hpp"
#include "qmap/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qmap::cli {

/// Invalid or incomplete configuration. `field` is the dotted key path.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : Error(field + ": " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct RunConfig {
    // [run]
    std::string command = "solve";
    std::size_t n = 1;
    std::string p = "4";  // rational text or "inf"
    std::uint64_t seed = 1;

    // [domain]
    Shape shape = Shape::ball;
    double radius = 1.0;
    std::vector<double> center;  // empty: origin
    double lower = -1.0, upper = 1.0;
    double h = 0.125;
    std::string psi = "0";
    std::string f = "1";

    // [directions]
    std::size_t direction_count = 16;
    std::uint64_t direction_seed = 1;
    double spread = 0.5;
    int stencil_budget = 2;
    double angle_tolerance = 1.0472;

    // [solver]
    double tol = 1e-10;
    int max_iter = 200000;
    double omega = 1.5;

    // [analysis]
    std::vector<double> deltas;  // empty: {2h, 4h, 8h} clipped to the inradius
    std::vector<double> ts;      // empty: sqrt(m) h up to diam/4
    std::string r = "2";
    std::vector<double> kappas{1.1, 1.5};
    std::size_t pair_budget = 1'000'000;

    // [verify]
    std::size_t forms = 100;

    // [capacity]
    std::vector<double> radii{0.2, 0.3, 0.4, 0.5};

    // [output]
    std::string out_dir = "qmap-out";
    GridFormat grid_format = GridFormat::binary;

    bool operator==(const RunConfig&) const = default;

    /// p as a rational; zero encodes p = infinity.
    Rational p_value() const;
    Rational r_value() const;
    DomainSpec domain() const;
    SolverOptions solver() const;
};

const std::vector<std::string>& command_names();

/// Parses key = value sections. Throws ConfigError naming the field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

/// Throws ConfigError on the first field violating a precondition.
void validate(const RunConfig& config);

/// Lowercase hex SHA-256 of the canonical text with the output directory
/// left out.
std::string config_hash(const RunConfig& config);

}  // namespace qmap::cli
