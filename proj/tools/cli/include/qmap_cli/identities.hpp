#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmap::cli {

struct IdentityResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    bool pass() const { return failed == 0 && checked > 0; }
};

/// Exact checks on `count` seeded random instances for quaternionic dimension
/// n: d0^2 = d1^2 = 0, d0 d1 = -d1 d0, the graded Leibniz rule, closedness of
/// Delta u_1 ^ ... ^ Delta u_k, the boundary-free integration by parts, and
/// agreement of the wedge and permutation routes for Delta_n.
std::vector<IdentityResult> run_identity_suite(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace qmap::cli
