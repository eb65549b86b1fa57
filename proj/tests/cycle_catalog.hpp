#pragma once

// Small tropical cycles shared by the test suites.

#include "catalog.hpp"
#include "tropical/cycle.hpp"

namespace tropical::testing {

/// Tropical line with vertex p and rays (-1,0), (0,-1), (1,1).
inline TropicalCycle tropical_line(const RatVector& p, long w1 = 1, long w2 = 1, long w3 = 1) {
    return TropicalCycle::from_cells(2, 1, {{Polyhedron::from_v_rep(2, {p}, {iv({-1, 0})}), Integer(w1)},
                                            {Polyhedron::from_v_rep(2, {p}, {iv({0, -1})}), Integer(w2)},
                                            {Polyhedron::from_v_rep(2, {p}, {iv({1, 1})}), Integer(w3)}});
}

/// The reflected line with rays (1,0), (0,1), (-1,-1).
inline TropicalCycle reflected_line(const RatVector& p) {
    return TropicalCycle::from_cells(2, 1, {{Polyhedron::from_v_rep(2, {p}, {iv({1, 0})}), Integer(1)},
                                            {Polyhedron::from_v_rep(2, {p}, {iv({0, 1})}), Integer(1)},
                                            {Polyhedron::from_v_rep(2, {p}, {iv({-1, -1})}), Integer(1)}});
}

/// Cycle of rays through the origin with weights.
inline TropicalCycle ray_cycle(std::size_t n, const std::vector<std::pair<IntVector, long>>& rays) {
    std::vector<std::pair<Polyhedron, Integer>> cells;
    for (const auto& [r, w] : rays)
        cells.push_back({Polyhedron::from_v_rep(n, {RatVector(n, Rational(0))}, {r}), Integer(w)});
    return TropicalCycle::from_cells(n, 1, cells);
}

inline TropicalCycle example_cycle1() { return ray_cycle(2, {{iv({1, 0}), 1}, {iv({0, 1}), 1}, {iv({-1, -1}), 1}}); }
inline TropicalCycle example_cycle2() { return ray_cycle(2, {{iv({1, 0}), 2}, {iv({-2, 1}), 1}, {iv({0, -1}), 1}}); }

} // namespace tropical::testing
