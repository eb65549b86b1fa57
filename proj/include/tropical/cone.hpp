#pragma once

#include "tropical/double_description.hpp"
#include "tropical/lattice.hpp"
#include "tropical/number.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

namespace tropical {

/// Rational polyhedral cone with both representations kept in sync.
///
/// V-side: primitive rays taken modulo the lineality space (projected onto its
/// orthogonal complement), sorted; lineality as a reduced echelon basis.
/// H-side: facet normals f (f.x >= 0) and equations e (e.x = 0) spanning the
/// orthogonal complement of the linear span.
class Cone {
public:
    Cone() = default;

    /// The cone {0} in R^n.
    static Cone zero(std::size_t n) { return from_extreme_rays(n, {}, {}); }

    /// Cone generated by arbitrary lattice vectors; redundant or repeated
    /// generators are removed and opposite pairs become lineality.
    static Cone from_rays(std::size_t n, const std::vector<IntVector>& generators,
                          const std::vector<IntVector>& lineality = {}) {
        std::vector<IntVector> dual;
        for (const auto& g : generators) {
            require_same_size(g.size(), n, "Cone::from_rays");
            if (!is_zero(g)) dual.push_back(g);
        }
        for (const auto& l : lineality) {
            require_same_size(l.size(), n, "Cone::from_rays");
            if (is_zero(l)) continue;
            dual.push_back(l);
            dual.push_back(-l);
        }
        auto h = double_description(n, dual);
        return from_h_rep(n, h.rays, h.lineality);
    }

    /// {x : f.x >= 0 for f in facets, e.x = 0 for e in equations}.
    static Cone from_h_rep(std::size_t n, const std::vector<IntVector>& inequalities,
                           const std::vector<IntVector>& equations) {
        std::vector<IntVector> ineq = inequalities;
        for (const auto& e : equations) {
            ineq.push_back(e);
            ineq.push_back(-e);
        }
        auto v = double_description(n, ineq);
        return from_extreme_rays(n, v.rays, v.lineality);
    }

    /// Trusted constructor: `rays` must already be irredundant modulo `lineality`.
    static Cone from_extreme_rays(std::size_t n, const std::vector<IntVector>& rays,
                                  const std::vector<IntVector>& lineality) {
        Cone c;
        c.n_ = n;
        c.lineality_ = canonical_subspace_basis(lineality, n);
        for (const auto& r : rays) {
            require_same_size(r.size(), n, "Cone::from_extreme_rays");
            IntVector v = c.lineality_.empty() ? primitive(r)
                                               : primitive_direction(project_out(to_rational(r), c.lineality_));
            c.rays_.push_back(std::move(v));
        }
        std::sort(c.rays_.begin(), c.rays_.end());
        c.rays_.erase(std::unique(c.rays_.begin(), c.rays_.end()), c.rays_.end());

        std::vector<IntVector> dual = c.rays_;
        for (const auto& l : c.lineality_) {
            dual.push_back(l);
            dual.push_back(-l);
        }
        auto h = double_description(n, dual);
        c.facets_ = std::move(h.rays);
        std::sort(c.facets_.begin(), c.facets_.end());
        c.equations_ = canonical_subspace_basis(h.lineality, n);
        c.dim_ = n - c.equations_.size();
        return c;
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return dim_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& lineality() const { return lineality_; }
    const std::vector<IntVector>& facets() const { return facets_; }
    const std::vector<IntVector>& equations() const { return equations_; }
    bool is_pointed() const { return lineality_.empty(); }
    std::size_t lineality_dim() const { return lineality_.size(); }
    bool is_simplicial() const { return rays_.size() + lineality_.size() == dim_; }

    /// Rays plus lineality basis: a linear spanning set for span(cone).
    std::vector<IntVector> span_generators() const {
        std::vector<IntVector> g = rays_;
        g.insert(g.end(), lineality_.begin(), lineality_.end());
        return g;
    }

    bool contains(const IntVector& x) const {
        require_same_size(x.size(), n_, "Cone::contains");
        for (const auto& e : equations_)
            if (dot(e, x) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, x) < 0) return false;
        return true;
    }
    bool contains(const RatVector& x) const { return contains(clear_denominators(x)); }

    bool relint_contains(const IntVector& x) const {
        require_same_size(x.size(), n_, "Cone::relint_contains");
        for (const auto& e : equations_)
            if (dot(e, x) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, x) <= 0) return false;
        return true;
    }
    bool relint_contains(const RatVector& x) const { return relint_contains(clear_denominators(x)); }

    bool contains(const Cone& other) const {
        for (const auto& r : other.rays_)
            if (!contains(r)) return false;
        for (const auto& l : other.lineality_)
            if (!contains(l) || !contains(IntVector(-l))) return false;
        return true;
    }

    bool in_span(const IntVector& x) const {
        for (const auto& e : equations_)
            if (dot(e, x) != 0) return false;
        return true;
    }

    /// Sum of the rays; lies in the relative interior.
    IntVector relative_interior_point() const {
        IntVector p = zero_vector(n_);
        for (const auto& r : rays_) p = p + r;
        return p;
    }

    /// All faces as sorted index sets into rays(), including the cone itself
    /// (all indices) and the minimal face (empty set).
    std::vector<std::vector<std::size_t>> face_ray_sets() const {
        std::vector<std::vector<std::size_t>> tight;
        for (const auto& f : facets_) {
            std::vector<std::size_t> t;
            for (std::size_t i = 0; i < rays_.size(); ++i)
                if (dot(f, rays_[i]) == 0) t.push_back(i);
            tight.push_back(std::move(t));
        }
        std::vector<std::size_t> all(rays_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::set<std::vector<std::size_t>> seen{all};
        std::vector<std::vector<std::size_t>> queue{all};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            for (const auto& t : tight) {
                std::vector<std::size_t> meet;
                std::set_intersection(queue[q].begin(), queue[q].end(), t.begin(), t.end(),
                                      std::back_inserter(meet));
                if (seen.insert(meet).second) queue.push_back(meet);
            }
        }
        return queue;
    }

    Cone face(const std::vector<std::size_t>& ray_indices) const {
        std::vector<IntVector> r;
        for (auto i : ray_indices) r.push_back(rays_.at(i));
        return from_extreme_rays(n_, r, lineality_);
    }

    /// All faces as cones, the cone itself included.
    std::vector<Cone> faces() const {
        std::vector<Cone> out;
        for (const auto& s : face_ray_sets()) out.push_back(face(s));
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Facets (codimension-one faces).
    std::vector<Cone> facet_cones() const {
        std::vector<Cone> out;
        for (auto& f : faces())
            if (f.dim() + 1 == dim_) out.push_back(std::move(f));
        return out;
    }

    /// Smallest face containing a point of the cone.
    Cone minimal_face_containing(const IntVector& x) const {
        std::vector<std::size_t> idx;
        std::vector<const IntVector*> tight;
        for (const auto& f : facets_)
            if (dot(f, x) == 0) tight.push_back(&f);
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            bool ok = true;
            for (auto* f : tight)
                if (dot(*f, rays_[i]) != 0) {
                    ok = false;
                    break;
                }
            if (ok) idx.push_back(i);
        }
        return face(idx);
    }

    bool is_face_of(const Cone& other) const {
        if (!other.contains(*this)) return false;
        return other.minimal_face_containing(relative_interior_point()) == *this;
    }

    friend bool operator==(const Cone& a, const Cone& b) {
        return a.n_ == b.n_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
    }
    friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }
    /// Canonical order: dimension, then sorted rays, then lineality.
    friend bool operator<(const Cone& a, const Cone& b) {
        if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
        if (a.rays_ != b.rays_) return a.rays_ < b.rays_;
        return a.lineality_ < b.lineality_;
    }

private:
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<IntVector> rays_;
    std::vector<IntVector> lineality_;
    std::vector<IntVector> facets_;
    std::vector<IntVector> equations_;
};

inline Cone cone_from_rays(const std::vector<IntVector>& rays, std::size_t ambient_dim) {
    return Cone::from_rays(ambient_dim, rays);
}

inline Cone cone_intersection(const Cone& a, const Cone& b) {
    require_same_size(a.ambient_dim(), b.ambient_dim(), "cone_intersection");
    std::vector<IntVector> ineq = a.facets();
    ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
    std::vector<IntVector> eq = a.equations();
    eq.insert(eq.end(), b.equations().begin(), b.equations().end());
    return Cone::from_h_rep(a.ambient_dim(), ineq, eq);
}

/// The cone a - b = {x - y : x in a, y in b}.
inline Cone cone_difference(const Cone& a, const Cone& b) {
    std::vector<IntVector> g = a.rays();
    for (const auto& r : b.rays()) g.push_back(-r);
    std::vector<IntVector> lin = a.lineality();
    lin.insert(lin.end(), b.lineality().begin(), b.lineality().end());
    return Cone::from_rays(a.ambient_dim(), g, lin);
}

/// Cartesian product a x b in R^{n+m}.
inline Cone cone_product(const Cone& a, const Cone& b) {
    const std::size_t n = a.ambient_dim(), m = b.ambient_dim();
    auto embed = [&](const IntVector& v, std::size_t offset) {
        IntVector w = zero_vector(n + m);
        for (std::size_t i = 0; i < v.size(); ++i) w[offset + i] = v[i];
        return w;
    };
    std::vector<IntVector> rays, lin;
    for (const auto& r : a.rays()) rays.push_back(embed(r, 0));
    for (const auto& r : b.rays()) rays.push_back(embed(r, n));
    for (const auto& l : a.lineality()) lin.push_back(embed(l, 0));
    for (const auto& l : b.lineality()) lin.push_back(embed(l, n));
    return Cone::from_extreme_rays(n + m, rays, lin);
}

/// Saturated lattice N_sigma = span(sigma) ∩ Z^n, as a basis.
inline std::vector<IntVector> span_lattice_basis(const Cone& c) {
    return QuotientMap(c.span_generators(), c.ambient_dim()).saturation_basis();
}

/// True iff the rays of a pointed cone extend to a Z-basis of Z^n.
inline bool cone_is_unimodular(const Cone& c) {
    if (!c.is_pointed()) throw Error(ErrorCode::InvalidArgument, "cone_is_unimodular expects a pointed cone");
    if (!c.is_simplicial()) return false;
    return saturation_index(c.rays(), c.ambient_dim()) == 1;
}

/// Primitive generator of the ray (sigma + N_tau) / N_tau, returned both in the
/// deterministic quotient coordinates of `quotient` (built from tau) and as a
/// lattice lift lying in sigma.
struct QuotientGenerator {
    IntVector image;
    IntVector lift;
};

inline QuotientGenerator quotient_primitive_generator(const Cone& sigma, const Cone& tau, const QuotientMap& quotient) {
    IntVector image;
    for (const auto& r : sigma.rays()) {
        IntVector p = quotient.project(r);
        if (!is_zero(p)) {
            image = primitive(p);
            break;
        }
    }
    if (image.empty()) throw Error(ErrorCode::NotAFace, "sigma has no ray outside span(tau)");
    IntVector lift = quotient.lift(image);
    // Shift along the interior of tau until the lift lies in sigma.
    IntVector s = tau.relative_interior_point();
    Integer shift = 0;
    for (const auto& f : sigma.facets()) {
        Integer fs = dot(f, s), fl = dot(f, lift);
        if (fs > 0 && fl < 0) shift = std::max(shift, ceil_div(Integer(-fl), fs));
    }
    if (shift != 0) lift = lift + shift * s;
    return {image, lift};
}

inline QuotientGenerator quotient_primitive_generator(const Cone& sigma, const Cone& tau) {
    if (sigma.ambient_dim() != tau.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "quotient_primitive_generator");
    if (!tau.is_face_of(sigma)) throw Error(ErrorCode::NotAFace, "tau is not a face of sigma");
    if (tau.dim() + 1 != sigma.dim()) throw Error(ErrorCode::NotAFace, "tau is not a facet of sigma");
    return quotient_primitive_generator(sigma, tau, QuotientMap(tau.span_generators(), tau.ambient_dim()));
}

} // namespace tropical
