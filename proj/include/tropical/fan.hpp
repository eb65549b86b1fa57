#pragma once

#include "tropical/cone.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tropical {

/// Rational fan: a face-closed set of cones meeting along common faces.
///
/// Cones are stored in canonical order (dimension, then sorted rays). Rays
/// are indexed globally; every cone is identified by its sorted ray-index set.
/// All cones share the same lineality space.
class Fan {
public:
    Fan() = default;

    /// Face closure of `cones` with the pairwise intersection check.
    static Fan from_cones(std::size_t n, const std::vector<Cone>& cones) {
        Fan f = closure(n, cones);
        f.validate_pairs();
        return f;
    }

    /// Face closure without the pairwise check; the caller guarantees a fan.
    static Fan from_cones_trusted(std::size_t n, const std::vector<Cone>& cones) { return closure(n, cones); }

    /// Cones given as index lists into `rays`.
    static Fan from_rays(std::size_t n, const std::vector<IntVector>& rays,
                         const std::vector<std::vector<std::size_t>>& maximal, bool validate = true,
                         const std::vector<IntVector>& lineality = {}) {
        std::vector<Cone> cones;
        for (const auto& m : maximal) {
            std::vector<IntVector> g;
            for (auto i : m) {
                if (i >= rays.size()) throw Error(ErrorCode::InvalidArgument, "ray index out of range");
                g.push_back(rays[i]);
            }
            cones.push_back(Cone::from_rays(n, g, lineality));
        }
        if (maximal.empty()) cones.push_back(Cone::from_rays(n, {}, lineality));
        return validate ? from_cones(n, cones) : from_cones_trusted(n, cones);
    }

    /// Simplicial fan whose maximal cones are given by linearly independent
    /// ray sets; faces are the ray subsets. No geometric checks beyond that.
    static Fan from_simplicial(std::size_t n, const std::vector<IntVector>& rays,
                               const std::vector<std::vector<std::size_t>>& maximal) {
        std::set<std::vector<IntVector>> seen;
        std::vector<Cone> cones;
        for (const auto& m : maximal) {
            const std::size_t k = m.size();
            for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
                std::vector<IntVector> g;
                for (std::size_t b = 0; b < k; ++b)
                    if (mask >> b & 1) g.push_back(primitive(rays.at(m[b])));
                std::sort(g.begin(), g.end());
                if (!seen.insert(g).second) continue;
                cones.push_back(Cone::from_extreme_rays(n, g, {}));
            }
        }
        if (cones.empty()) cones.push_back(Cone::zero(n));
        return assemble(n, std::move(cones));
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return cones_.empty() ? 0 : cones_.back().dim(); }
    std::size_t size() const { return cones_.size(); }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& lineality() const { return lineality_; }
    const std::vector<Cone>& cones() const { return cones_; }
    const Cone& cone(std::size_t i) const { return cones_.at(i); }
    const std::vector<std::size_t>& cone_rays(std::size_t i) const { return cone_rays_.at(i); }
    /// Immediate faces (codimension one) of cone i.
    const std::vector<std::size_t>& facets(std::size_t i) const { return facets_.at(i); }
    /// Cones having cone i as a codimension-one face.
    const std::vector<std::size_t>& cofacets(std::size_t i) const { return cofacets_.at(i); }

    std::vector<std::size_t> cones_of_dim(std::size_t d) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cones_.size(); ++i)
            if (cones_[i].dim() == d) out.push_back(i);
        return out;
    }
    std::vector<std::size_t> cones_of_codim(std::size_t k) const {
        if (k > n_) return {};
        return cones_of_dim(n_ - k);
    }
    std::vector<std::size_t> maximal_cones() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cones_.size(); ++i)
            if (cofacets_[i].empty()) out.push_back(i);
        return out;
    }

    std::optional<std::size_t> index_of_rays(const std::vector<std::size_t>& ray_set) const {
        auto it = index_.find(ray_set);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> find(const Cone& c) const {
        auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
        if (it == cones_.end() || *it != c) return std::nullopt;
        return static_cast<std::size_t>(it - cones_.begin());
    }
    std::size_t index_of(const Cone& c) const {
        auto i = find(c);
        if (!i) throw Error(ErrorCode::NotAFace, "cone is not in the fan");
        return *i;
    }

    /// Is cone a a face of cone b (including a == b)?
    bool is_face(std::size_t a, std::size_t b) const {
        const auto& ra = cone_rays_[a];
        const auto& rb = cone_rays_[b];
        return std::includes(rb.begin(), rb.end(), ra.begin(), ra.end());
    }

    /// The cone whose relative interior contains x, if x lies in the support.
    std::optional<std::size_t> locate(const IntVector& x) const {
        for (auto m : maximal_cones())
            if (cones_[m].contains(x)) return find(cones_[m].minimal_face_containing(x));
        return std::nullopt;
    }
    std::optional<std::size_t> locate(const RatVector& x) const { return locate(clear_denominators(x)); }

    /// Cones of the fan containing cone i (cone i included).
    std::vector<std::size_t> star(std::size_t i) const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < cones_.size(); ++j)
            if (is_face(i, j)) out.push_back(j);
        return out;
    }

    friend bool operator==(const Fan& a, const Fan& b) { return a.n_ == b.n_ && a.cones_ == b.cones_; }

private:
    static Fan closure(std::size_t n, const std::vector<Cone>& cones) {
        std::set<Cone> all;
        for (const auto& c : cones) {
            require_same_size(c.ambient_dim(), n, "Fan");
            for (auto& f : c.faces()) all.insert(std::move(f));
        }
        if (all.empty()) all.insert(Cone::zero(n));
        return assemble(n, std::vector<Cone>(all.begin(), all.end()));
    }

    static Fan assemble(std::size_t n, std::vector<Cone> cones) {
        Fan f;
        f.n_ = n;
        std::sort(cones.begin(), cones.end());
        cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
        f.cones_ = std::move(cones);
        f.lineality_ = f.cones_.front().lineality();
        std::set<IntVector> rays;
        for (const auto& c : f.cones_) {
            if (c.lineality() != f.lineality_)
                throw Error(ErrorCode::FanInvalid, "cones have different lineality spaces");
            rays.insert(c.rays().begin(), c.rays().end());
        }
        f.rays_.assign(rays.begin(), rays.end());
        for (std::size_t i = 0; i < f.cones_.size(); ++i) {
            std::vector<std::size_t> idx;
            for (const auto& r : f.cones_[i].rays())
                idx.push_back(static_cast<std::size_t>(std::lower_bound(f.rays_.begin(), f.rays_.end(), r) -
                                                       f.rays_.begin()));
            f.index_[idx] = i;
            f.cone_rays_.push_back(std::move(idx));
        }
        f.facets_.assign(f.cones_.size(), {});
        f.cofacets_.assign(f.cones_.size(), {});
        for (std::size_t i = 0; i < f.cones_.size(); ++i) {
            const Cone& c = f.cones_[i];
            std::set<std::size_t> fac;
            if (c.dim() == c.lineality_dim()) continue;
            for (const auto& normal : c.facets()) {
                std::vector<std::size_t> tight;
                for (std::size_t k = 0; k < c.rays().size(); ++k)
                    if (dot(normal, c.rays()[k]) == 0) tight.push_back(f.cone_rays_[i][k]);
                auto it = f.index_.find(tight);
                if (it == f.index_.end())
                    throw Error(ErrorCode::FanInvalid, "missing facet of cone " + describe(c));
                fac.insert(it->second);
            }
            f.facets_[i].assign(fac.begin(), fac.end());
            for (auto j : fac) f.cofacets_[j].push_back(i);
        }
        return f;
    }

    void validate_pairs() const {
        auto maxi = maximal_cones();
        for (std::size_t a = 0; a < maxi.size(); ++a)
            for (std::size_t b = a + 1; b < maxi.size(); ++b) {
                const Cone& s = cones_[maxi[a]];
                const Cone& t = cones_[maxi[b]];
                Cone meet = cone_intersection(s, t);
                if (!meet.is_face_of(s) || !meet.is_face_of(t))
                    throw Error(ErrorCode::FanInvalid,
                                "cones " + describe(s) + " and " + describe(t) + " do not meet in a common face");
            }
    }

public:
    static std::string describe(const Cone& c) {
        std::string s = "cone{";
        for (std::size_t i = 0; i < c.rays().size(); ++i) s += (i ? "," : "") + vector_to_string(c.rays()[i]);
        if (!c.lineality().empty()) {
            s += "; lin ";
            for (std::size_t i = 0; i < c.lineality().size(); ++i)
                s += (i ? "," : "") + vector_to_string(c.lineality()[i]);
        }
        return s + "}";
    }

private:
    std::size_t n_ = 0;
    std::vector<IntVector> lineality_;
    std::vector<IntVector> rays_;
    std::vector<Cone> cones_;
    std::vector<std::vector<std::size_t>> cone_rays_;
    std::map<std::vector<std::size_t>, std::size_t> index_;
    std::vector<std::vector<std::size_t>> facets_;
    std::vector<std::vector<std::size_t>> cofacets_;
};

inline Fan fan_validate(std::size_t n, const std::vector<Cone>& cones) { return Fan::from_cones(n, cones); }

/// Support equals R^n: every (n-1)-cone lies in exactly two maximal cones, all
/// maximal cones are full-dimensional, and the dual graph is connected.
inline bool fan_is_complete(const Fan& f) {
    const std::size_t n = f.ambient_dim();
    auto maxi = f.maximal_cones();
    for (auto m : maxi)
        if (f.cone(m).dim() != n) return false;
    if (n == 0) return true;
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < maxi.size(); ++i) pos[maxi[i]] = i;
    std::vector<std::size_t> parent(maxi.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto t : f.cones_of_dim(n - 1)) {
        const auto& up = f.cofacets(t);
        if (up.size() != 2) return false;
        parent[root(pos.at(up[0]))] = root(pos.at(up[1]));
    }
    for (std::size_t i = 0; i < parent.size(); ++i)
        if (root(i) != root(0)) return false;
    return true;
}

inline bool fan_is_unimodular(const Fan& f) {
    if (!f.lineality().empty()) return false;
    for (auto m : f.maximal_cones())
        if (!cone_is_unimodular(f.cone(m))) return false;
    return true;
}

inline Fan product_fan(const Fan& a, const Fan& b) {
    std::vector<Cone> cones;
    for (auto i : a.maximal_cones())
        for (auto j : b.maximal_cones()) cones.push_back(cone_product(a.cone(i), b.cone(j)));
    return Fan::from_cones_trusted(a.ambient_dim() + b.ambient_dim(), cones);
}

/// Split every cone by the hyperplanes a.x = 0.
inline Fan refine_by_hyperplanes(const Fan& f, const std::vector<IntVector>& normals) {
    const std::size_t n = f.ambient_dim();
    std::vector<Cone> pieces;
    for (auto m : f.maximal_cones()) {
        std::vector<Cone> cur{f.cone(m)};
        for (const auto& a : normals) {
            require_same_size(a.size(), n, "refine_by_hyperplanes");
            std::vector<Cone> next;
            for (const auto& p : cur) {
                for (int s : {1, -1}) {
                    IntVector h = Integer(s) * a;
                    Cone q = cone_intersection(p, Cone::from_h_rep(n, {h}, {}));
                    if (q.dim() == p.dim() && std::find(next.begin(), next.end(), q) == next.end())
                        next.push_back(std::move(q));
                }
            }
            cur = std::move(next);
        }
        pieces.insert(pieces.end(), cur.begin(), cur.end());
    }
    return Fan::from_cones_trusted(n, pieces);
}

/// True iff the cones in `pieces` (all contained in `region`) cover it.
inline bool pieces_cover(const Cone& region, const std::vector<Cone>& pieces) {
    const std::size_t d = region.dim();
    std::vector<const Cone*> top;
    for (const auto& p : pieces)
        if (p.dim() == d) top.push_back(&p);
    if (top.empty()) return false;
    std::map<Cone, int> facet_count;
    for (auto* p : top)
        for (auto& fc : p->facet_cones()) ++facet_count[fc];
    for (const auto& [fc, count] : facet_count) {
        if (!region.relint_contains(fc.relative_interior_point())) continue;
        if (count < 2) return false;
    }
    return true;
}

/// Common refinement {s ∩ t}; throws SUPPORT_MISMATCH when the supports differ.
inline Fan common_refinement(const Fan& a, const Fan& b) {
    require_same_size(a.ambient_dim(), b.ambient_dim(), "common_refinement");
    const std::size_t n = a.ambient_dim();
    std::vector<Cone> pieces;
    std::map<std::size_t, std::vector<Cone>> in_a, in_b;
    auto ma = a.maximal_cones(), mb = b.maximal_cones();
    for (auto i : ma)
        for (auto j : mb) {
            Cone c = cone_intersection(a.cone(i), b.cone(j));
            in_a[i].push_back(c);
            in_b[j].push_back(c);
            pieces.push_back(std::move(c));
        }
    for (auto i : ma)
        if (!pieces_cover(a.cone(i), in_a[i]))
            throw Error(ErrorCode::SupportMismatch, "support of the second fan misses " + Fan::describe(a.cone(i)));
    for (auto j : mb)
        if (!pieces_cover(b.cone(j), in_b[j]))
            throw Error(ErrorCode::SupportMismatch, "support of the first fan misses " + Fan::describe(b.cone(j)));
    return Fan::from_cones_trusted(n, pieces);
}

/// Index of the smallest cone of `coarse` containing cone i of `fine`; throws
/// NOT_REFINEMENT if no cone contains it.
inline std::size_t coarse_cone_of(const Fan& coarse, const Fan& fine, std::size_t i) {
    auto loc = coarse.locate(fine.cone(i).relative_interior_point());
    if (!loc || !coarse.cone(*loc).contains(fine.cone(i)))
        throw Error(ErrorCode::NotRefinement, Fan::describe(fine.cone(i)) + " lies in no cone of the coarse fan");
    return *loc;
}

inline bool fan_refines(const Fan& fine, const Fan& coarse) {
    try {
        for (std::size_t i = 0; i < fine.size(); ++i) coarse_cone_of(coarse, fine, i);
    } catch (const Error&) {
        return false;
    }
    return true;
}

} // namespace tropical
