#pragma once

// Incremental double description (Motzkin) over the integers. Given
// inequalities a_i . x >= 0 it returns lineality basis L and extreme rays R
// with {x : A x >= 0} = span(L) + cone(R). Adjacency uses the combinatorial
// test on zero sets, which is exact because the representation stays minimal.

#include "tropical/lattice.hpp"
#include "tropical/number.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <vector>

namespace tropical {

struct DoubleDescription {
    std::vector<IntVector> lineality;
    std::vector<IntVector> rays;
};

inline DoubleDescription double_description(std::size_t dim, const std::vector<IntVector>& inequalities) {
    using Bits = boost::dynamic_bitset<>;
    const std::size_t m = inequalities.size();

    std::vector<IntVector> lineality;
    for (std::size_t i = 0; i < dim; ++i) lineality.push_back(unit_vector(dim, i));
    struct Ray {
        IntVector v;
        Bits zeros;
    };
    std::vector<Ray> rays;

    for (std::size_t j = 0; j < m; ++j) {
        const IntVector& a = inequalities[j];
        require_same_size(a.size(), dim, "double_description");
        if (is_zero(a)) {
            for (auto& r : rays) r.zeros.set(j);
            continue;
        }

        // Case 1: the hyperplane cuts the lineality space.
        std::size_t pivot = lineality.size();
        Integer a_l0 = 0;
        for (std::size_t k = 0; k < lineality.size(); ++k) {
            a_l0 = dot(a, lineality[k]);
            if (a_l0 != 0) {
                pivot = k;
                break;
            }
        }
        if (pivot < lineality.size()) {
            IntVector l0 = lineality[pivot];
            if (a_l0 < 0) {
                l0 = -l0;
                a_l0 = -a_l0;
            }
            std::vector<IntVector> next;
            for (std::size_t k = 0; k < lineality.size(); ++k) {
                if (k == pivot) continue;
                Integer s = dot(a, lineality[k]);
                IntVector v = a_l0 * lineality[k] - s * l0;
                next.push_back(primitive(v));
            }
            lineality = std::move(next);
            for (auto& r : rays) {
                Integer s = dot(a, r.v);
                if (s != 0) r.v = primitive(a_l0 * r.v - s * l0);
                r.zeros.set(j);
            }
            Bits z(m);
            for (std::size_t i = 0; i < j; ++i) z.set(i);
            rays.push_back(Ray{l0, z});
            continue;
        }

        // Case 2: lineality lies in the hyperplane; split rays by sign.
        std::vector<std::size_t> pos, neg, zer;
        std::vector<Integer> val(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) {
            val[k] = dot(a, rays[k].v);
            if (val[k] > 0) pos.push_back(k);
            else if (val[k] < 0) neg.push_back(k);
            else zer.push_back(k);
        }
        if (neg.empty()) {
            for (auto k : zer) rays[k].zeros.set(j);
            continue;
        }

        std::vector<Ray> next;
        for (auto p : pos) next.push_back(rays[p]);
        for (auto z : zer) {
            next.push_back(rays[z]);
            next.back().zeros.set(j);
        }
        for (auto p : pos)
            for (auto q : neg) {
                Bits common = rays[p].zeros & rays[q].zeros;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k == p || k == q) continue;
                    if (common.is_subset_of(rays[k].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                IntVector v = val[p] * rays[q].v - val[q] * rays[p].v;
                common.set(j);
                next.push_back(Ray{primitive(v), common});
            }
        rays = std::move(next);
    }

    DoubleDescription out;
    out.lineality = std::move(lineality);
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

} // namespace tropical
