#pragma once

// Small complete fans shared by the test suites.

#include "tropical/fan.hpp"

#include <initializer_list>
#include <vector>

namespace tropical::testing {

inline IntVector iv(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.push_back(Integer(x));
    return v;
}

inline RatVector rv(std::initializer_list<long> xs) { return to_rational(iv(xs)); }

inline Fan line_fan() { return Fan::from_rays(1, {iv({1}), iv({-1})}, {{0}, {1}}); }

inline Fan projective_plane() {
    return Fan::from_rays(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}});
}

inline Fan quadrant_fan() { return Fan::from_rays(2, {iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({0, -1})},
                                                  {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

inline Fan hirzebruch_two() {
    return Fan::from_rays(2, {iv({1, 0}), iv({0, 1}), iv({-1, 2}), iv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

/// Complete but not unimodular.
inline Fan weighted_plane() {
    return Fan::from_rays(2, {iv({2, 1}), iv({-1, 1}), iv({-1, -2})}, {{0, 1}, {1, 2}, {2, 0}});
}

inline Fan projective_space() {
    return Fan::from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({-1, -1, -1})},
                          {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline Fan octant_fan() {
    std::vector<IntVector> rays{iv({1, 0, 0}), iv({-1, 0, 0}), iv({0, 1, 0}),
                                iv({0, -1, 0}), iv({0, 0, 1}), iv({0, 0, -1})};
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t a : {0, 1})
        for (std::size_t b : {2, 3})
            for (std::size_t c : {4, 5}) cones.push_back({a, b, c});
    return Fan::from_rays(3, rays, cones);
}

/// The two example fans: rays rho = (1,0),(0,1),(-1,-1) and nu = (1,0),(-2,1),(0,-1).
inline Fan delta1() { return projective_plane(); }

inline Fan delta2() {
    return Fan::from_rays(2, {iv({1, 0}), iv({-2, 1}), iv({0, -1})}, {{0, 1}, {1, 2}, {2, 0}});
}

inline std::vector<Fan> catalog() {
    return {projective_plane(), quadrant_fan(), hirzebruch_two(), weighted_plane(), projective_space(), octant_fan()};
}

} // namespace tropical::testing
