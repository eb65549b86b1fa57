#pragma once

// Rational polyhedra in R^n, stored as their homogenization
// cone{(x, 1) : x in P} + recession ⊂ R^{n+1} with last coordinate t >= 0.

#include "tropical/cone.hpp"

#include <optional>
#include <vector>

namespace tropical {

/// a.x >= b, or a.x = b for equations.
struct AffineInequality {
    IntVector normal;
    Rational rhs;
};

class Polyhedron {
public:
    Polyhedron() = default;

    /// conv(vertices) + cone(rays) + span(lineality). Needs at least one vertex.
    static Polyhedron from_v_rep(std::size_t n, const std::vector<RatVector>& vertices,
                                 const std::vector<IntVector>& rays = {}, const std::vector<IntVector>& lineality = {}) {
        if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "a polyhedron needs at least one vertex");
        std::vector<IntVector> g, lin;
        for (const auto& v : vertices) {
            require_same_size(v.size(), n, "Polyhedron::from_v_rep");
            g.push_back(homogenize(v));
        }
        for (const auto& r : rays) g.push_back(lift_direction(r, n));
        for (const auto& l : lineality) lin.push_back(lift_direction(l, n));
        return Polyhedron(Cone::from_rays(n + 1, g, lin));
    }

    static Polyhedron point(const RatVector& p) { return from_v_rep(p.size(), {p}); }

    /// A cone regarded as a polyhedron with apex at the origin.
    static Polyhedron from_cone(const Cone& c) {
        return from_v_rep(c.ambient_dim(), {RatVector(c.ambient_dim(), Rational(0))}, c.rays(), c.lineality());
    }

    /// {x : a.x >= b for inequalities, a.x = b for equations}; nullopt if empty.
    static std::optional<Polyhedron> from_h_rep(std::size_t n, const std::vector<AffineInequality>& inequalities,
                                                const std::vector<AffineInequality>& equations = {}) {
        std::vector<IntVector> ineq{unit_vector(n + 1, n)}, eq;
        for (const auto& h : inequalities) ineq.push_back(homogenize_form(h, n));
        for (const auto& h : equations) eq.push_back(homogenize_form(h, n));
        return from_homogeneous(Cone::from_h_rep(n + 1, ineq, eq));
    }

    /// nullopt when the cone lies in {t = 0}.
    static std::optional<Polyhedron> from_homogeneous(const Cone& c) {
        for (const auto& r : c.rays())
            if (r.back() > 0) return Polyhedron(c);
        return std::nullopt;
    }

    std::size_t ambient_dim() const { return hom_.ambient_dim() - 1; }
    std::size_t dim() const { return hom_.dim() - 1; }
    const Cone& homogenization() const { return hom_; }

    std::vector<RatVector> vertices() const {
        std::vector<RatVector> out;
        for (const auto& r : hom_.rays())
            if (r.back() > 0) {
                RatVector v(ambient_dim());
                for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(r[i], r.back());
                out.push_back(std::move(v));
            }
        return out;
    }

    std::vector<IntVector> rays() const {
        std::vector<IntVector> out;
        for (const auto& r : hom_.rays())
            if (r.back() == 0) out.push_back(IntVector(r.begin(), r.end() - 1));
        return out;
    }

    std::vector<IntVector> lineality() const {
        std::vector<IntVector> out;
        for (const auto& l : hom_.lineality()) out.push_back(IntVector(l.begin(), l.end() - 1));
        return out;
    }

    bool is_bounded() const { return rays().empty() && lineality().empty(); }

    /// Facet inequalities a.x >= b (the facet t >= 0 at infinity is omitted).
    std::vector<AffineInequality> inequalities() const {
        std::vector<AffineInequality> out;
        for (const auto& f : hom_.facets())
            if (f != unit_vector(f.size(), f.size() - 1)) out.push_back(dehomogenize_form(f));
        return out;
    }

    std::vector<AffineInequality> equations() const {
        std::vector<AffineInequality> out;
        for (const auto& e : hom_.equations()) out.push_back(dehomogenize_form(e));
        return out;
    }

    bool contains(const RatVector& x) const { return hom_.contains(homogenize(x)); }
    bool relint_contains(const RatVector& x) const { return hom_.relint_contains(homogenize(x)); }
    bool contains(const Polyhedron& p) const { return hom_.contains(p.hom_); }

    /// Barycenter of the vertices plus the sum of the rays.
    RatVector relative_interior_point() const {
        auto vs = vertices();
        RatVector p(ambient_dim(), Rational(0));
        for (const auto& v : vs)
            for (std::size_t i = 0; i < p.size(); ++i) p[i] += v[i];
        for (auto& x : p) x /= Rational(static_cast<long>(vs.size()));
        for (const auto& r : rays())
            for (std::size_t i = 0; i < p.size(); ++i) p[i] += Rational(r[i]);
        return p;
    }

    /// Faces of all dimensions, including the polyhedron itself.
    std::vector<Polyhedron> faces() const {
        std::vector<Polyhedron> out;
        for (const auto& f : hom_.faces())
            if (auto p = from_homogeneous(f)) out.push_back(*p);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Polyhedron> faces_of_dim(std::size_t d) const {
        std::vector<Polyhedron> out;
        for (auto& f : faces())
            if (f.dim() == d) out.push_back(std::move(f));
        return out;
    }

    bool is_face_of(const Polyhedron& other) const { return hom_.is_face_of(other.hom_); }

    /// cone(P - w) for w in P.
    Cone recession_cone_at(const RatVector& w) const {
        if (!contains(w)) throw Error(ErrorCode::InvalidArgument, "recession_cone_at: point is not in the polyhedron");
        std::vector<IntVector> g = rays();
        for (const auto& v : vertices()) {
            RatVector d(v.size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = v[i] - w[i];
            if (!is_zero(clear_denominators(d))) g.push_back(clear_denominators(d));
        }
        return Cone::from_rays(ambient_dim(), g, lineality());
    }

    /// Linear span of P - w for any w in P.
    Cone direction_space() const {
        auto g = recession_cone_at(relative_interior_point()).span_generators();
        return Cone::from_rays(ambient_dim(), {}, g);
    }

    /// Saturated lattice of the direction space.
    std::vector<IntVector> lattice_basis() const { return span_lattice_basis(direction_space()); }

    Polyhedron translated(const RatVector& t) const {
        auto vs = vertices();
        for (auto& v : vs)
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += t[i];
        return from_v_rep(ambient_dim(), vs, rays(), lineality());
    }

    friend bool operator==(const Polyhedron& a, const Polyhedron& b) { return a.hom_ == b.hom_; }
    friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }
    friend bool operator<(const Polyhedron& a, const Polyhedron& b) { return a.hom_ < b.hom_; }

    static IntVector homogenize(const RatVector& x) {
        RatVector h(x);
        h.push_back(Rational(1));
        return clear_denominators(h);
    }

private:
    explicit Polyhedron(Cone c) : hom_(std::move(c)) {}

    static IntVector lift_direction(const IntVector& d, std::size_t n) {
        require_same_size(d.size(), n, "Polyhedron direction");
        IntVector h(d);
        h.push_back(0);
        return h;
    }

    static IntVector homogenize_form(const AffineInequality& h, std::size_t n) {
        require_same_size(h.normal.size(), n, "AffineInequality");
        RatVector f = to_rational(h.normal);
        f.push_back(-h.rhs);
        return clear_denominators(f);
    }

    static AffineInequality dehomogenize_form(const IntVector& f) {
        return {IntVector(f.begin(), f.end() - 1), Rational(-f.back())};
    }

    Cone hom_;
};

inline std::optional<Polyhedron> polyhedron_intersection(const Polyhedron& a, const Polyhedron& b) {
    require_same_size(a.ambient_dim(), b.ambient_dim(), "polyhedron_intersection");
    return Polyhedron::from_homogeneous(cone_intersection(a.homogenization(), b.homogenization()));
}

/// a x b in R^{n+m}.
inline Polyhedron polyhedron_product(const Polyhedron& a, const Polyhedron& b) {
    const std::size_t n = a.ambient_dim(), m = b.ambient_dim();
    std::vector<RatVector> vs;
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) {
            RatVector w(u);
            w.insert(w.end(), v.begin(), v.end());
            vs.push_back(std::move(w));
        }
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
    return Polyhedron::from_v_rep(n + m, vs, rays, lin);
}

/// Image under an integer linear map.
inline Polyhedron polyhedron_image(const IntMatrix& h, const Polyhedron& p) {
    require_same_size(h.cols(), p.ambient_dim(), "polyhedron_image");
    std::vector<RatVector> vs;
    for (const auto& v : p.vertices()) {
        RatVector w(h.rows(), Rational(0));
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j) w[i] += Rational(h(i, j)) * v[j];
        vs.push_back(std::move(w));
    }
    std::vector<IntVector> rays, lin;
    for (const auto& r : p.rays()) rays.push_back(h.apply(r));
    for (const auto& l : p.lineality()) lin.push_back(h.apply(l));
    return Polyhedron::from_v_rep(h.rows(), vs, rays, lin);
}

inline std::string describe(const Polyhedron& p) {
    std::string s = "conv{";
    auto vs = p.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + vector_to_string(vs[i]);
    s += "}";
    auto rs = p.rays();
    if (!rs.empty()) {
        s += "+cone{";
        for (std::size_t i = 0; i < rs.size(); ++i) s += (i ? "," : "") + vector_to_string(rs[i]);
        s += "}";
    }
    auto ls = p.lineality();
    if (!ls.empty()) {
        s += "+span{";
        for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? "," : "") + vector_to_string(ls[i]);
        s += "}";
    }
    return s;
}

} // namespace tropical
