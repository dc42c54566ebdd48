#pragma once

// Replacing the lines of a tetrahedron configuration one at a time by thin
// circular cylinders doubles the number of real common tangents/transversals
// at every stage: 2, 4, 8, 16, 32.

#include <optional>
#include <vector>

#include "tangents/tracker.hpp"

namespace tangents {

/// The four tetrahedron lines moved into affine space by the projective map
/// e_i -> (1, v_i) with v0 = (1,1,1), v1 = (1,-1,-1), v2 = (-1,1,-1),
/// v3 = (-1,-1,1). Their two transversals are the edges v1v3 and v0v2.
std::vector<AffineFlat> affine_tetrahedron_lines();

/// The stage-i system: tangent to Cy(U_j, r_j) for j < i, meeting U_j for j >= i.
TangencySystem doubling_system(const std::vector<AffineFlat>& lines, std::size_t i,
                               const std::vector<Rational>& radii);

struct DoublingRow {
    std::size_t i = 0;
    int expected = 0;       // 2^i * 2
    int found_real = 0;     // real, distinct, converged endpoints
    int found_distinct = 0;
    int nonreal = 0;
    std::vector<Rational> radii;
    int halvings = 0;
    bool success = false;
    SolveReport report;
};

struct DoublingOptions {
    TrackerOptions tracker;
    /// Fixed radii r_1..r_4; empty selects the halving search.
    std::vector<Rational> radii;
    Rational initial_radius{1, 10};
    int max_halvings = 20;
};

std::vector<DoublingRow> doubling_experiment(const DoublingOptions& options);

}  // namespace tangents
