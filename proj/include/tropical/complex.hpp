#pragma once

// Polyhedral complexes in R^n, star fans and hyperplane refinements.

#include "tropical/fan.hpp"
#include "tropical/polyhedron.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace tropical {

class PolyhedralComplex {
public:
    PolyhedralComplex() = default;
    explicit PolyhedralComplex(std::size_t n) : n_(n) {}

    /// Face closure of `cells`, with the pairwise intersection check when
    /// `validate` is set.
    static PolyhedralComplex from_cells(std::size_t n, const std::vector<Polyhedron>& cells, bool validate = false) {
        std::set<Polyhedron> all;
        for (const auto& c : cells) {
            require_same_size(c.ambient_dim(), n, "PolyhedralComplex::from_cells");
            if (all.count(c)) continue;
            for (auto& f : c.faces()) all.insert(std::move(f));
        }
        PolyhedralComplex pc(n);
        pc.cells_.assign(all.begin(), all.end());
        pc.index_relations();
        if (validate) pc.validate_pairs();
        return pc;
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    std::size_t dim() const {
        std::size_t d = 0;
        for (const auto& c : cells_) d = std::max(d, c.dim());
        return d;
    }
    const std::vector<Polyhedron>& cells() const { return cells_; }
    const Polyhedron& cell(std::size_t i) const { return cells_.at(i); }
    /// Cells having cell i as a face, including i.
    const std::vector<std::size_t>& cofaces(std::size_t i) const { return cofaces_.at(i); }

    std::vector<std::size_t> cells_of_dim(std::size_t d) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (cells_[i].dim() == d) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> maximal_cells() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (cofaces_[i].size() == 1) out.push_back(i);
        return out;
    }

    bool is_pure() const {
        auto m = maximal_cells();
        for (auto i : m)
            if (cells_[i].dim() != cells_[m.front()].dim()) return false;
        return true;
    }

    std::optional<std::size_t> find(const Polyhedron& p) const {
        auto it = std::lower_bound(cells_.begin(), cells_.end(), p);
        if (it == cells_.end() || *it != p) return std::nullopt;
        return static_cast<std::size_t>(it - cells_.begin());
    }

    std::size_t index_of(const Polyhedron& p) const {
        auto i = find(p);
        if (!i) throw Error(ErrorCode::CellNotFound, "cell " + describe(p) + " is not in the complex");
        return *i;
    }

    /// The cell whose relative interior contains x.
    std::optional<std::size_t> locate(const RatVector& x) const {
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (cells_[i].relint_contains(x)) return i;
        return std::nullopt;
    }

    bool contains(const RatVector& x) const {
        for (const auto& c : cells_)
            if (c.contains(x)) return true;
        return false;
    }

    friend bool operator==(const PolyhedralComplex& a, const PolyhedralComplex& b) {
        return a.n_ == b.n_ && a.cells_ == b.cells_;
    }

private:
    void index_relations() {
        cofaces_.assign(cells_.size(), {});
        for (std::size_t i = 0; i < cells_.size(); ++i)
            for (std::size_t j = 0; j < cells_.size(); ++j)
                if (cells_[i].dim() <= cells_[j].dim() && cells_[j].contains(cells_[i])) cofaces_[i].push_back(j);
    }

    void validate_pairs() const {
        auto maxi = maximal_cells();
        for (std::size_t a = 0; a < maxi.size(); ++a)
            for (std::size_t b = a + 1; b < maxi.size(); ++b) {
                auto x = polyhedron_intersection(cells_[maxi[a]], cells_[maxi[b]]);
                if (!x) continue;
                if (!find(*x) || !x->is_face_of(cells_[maxi[a]]) || !x->is_face_of(cells_[maxi[b]]))
                    throw Error(ErrorCode::FanInvalid, "cells " + describe(cells_[maxi[a]]) + " and " +
                                                           describe(cells_[maxi[b]]) + " meet outside a common face");
            }
    }

    std::size_t n_ = 0;
    std::vector<Polyhedron> cells_;
    std::vector<std::vector<std::size_t>> cofaces_;
};

/// A fan regarded as a complex.
inline PolyhedralComplex complex_from_fan(const Fan& f) {
    std::vector<Polyhedron> cells;
    for (auto m : f.maximal_cones()) cells.push_back(Polyhedron::from_cone(f.cone(m)));
    return PolyhedralComplex::from_cells(f.ambient_dim(), cells);
}

/// Local cones C_sigma = cone(sigma - w) at a point w, for the given cells containing w.
struct LocalCone {
    std::size_t cell;
    Cone cone;
};

inline std::vector<LocalCone> local_cones(const PolyhedralComplex& c, const RatVector& w,
                                          const std::vector<std::size_t>& candidates) {
    std::vector<LocalCone> out;
    for (auto i : candidates)
        if (c.cell(i).contains(w)) out.push_back({i, c.cell(i).recession_cone_at(w)});
    return out;
}

/// Star of a complex at a cell, with the marked minimal cone tau-bar and the
/// cone index of every cell containing tau.
struct StarFan {
    Fan fan;
    std::size_t minimal = 0;
    std::map<std::size_t, std::size_t> cone_of_cell;
    RatVector point;
};

inline StarFan star_fan(const PolyhedralComplex& c, std::size_t tau, const std::optional<RatVector>& at = std::nullopt) {
    if (tau >= c.size()) throw Error(ErrorCode::CellNotFound, "no such cell");
    RatVector w = at ? *at : c.cell(tau).relative_interior_point();
    if (!c.cell(tau).relint_contains(w))
        throw Error(ErrorCode::InvalidArgument, "star point must lie in the relative interior of the cell");
    StarFan s;
    s.point = w;
    auto locals = local_cones(c, w, c.cofaces(tau));
    std::vector<Cone> cones;
    for (const auto& l : locals) cones.push_back(l.cone);
    s.fan = Fan::from_cones_trusted(c.ambient_dim(), cones);
    for (const auto& l : locals) s.cone_of_cell[l.cell] = s.fan.index_of(l.cone);
    s.minimal = s.cone_of_cell.at(tau);
    return s;
}

/// All pairwise intersections of cells, closed under faces.
inline PolyhedralComplex complex_intersection(const PolyhedralComplex& a, const PolyhedralComplex& b) {
    require_same_size(a.ambient_dim(), b.ambient_dim(), "complex_intersection");
    std::vector<Polyhedron> cells;
    for (auto i : a.maximal_cells())
        for (auto j : b.maximal_cells())
            if (auto x = polyhedron_intersection(a.cell(i), b.cell(j))) cells.push_back(*x);
    return PolyhedralComplex::from_cells(a.ambient_dim(), cells);
}

/// Pieces of p on the two closed sides of {h.normal . x = h.rhs}, keeping
/// those of full dimension.
inline std::vector<Polyhedron> split_polyhedron(const Polyhedron& p, const AffineInequality& h) {
    const std::size_t n = p.ambient_dim();
    std::vector<Polyhedron> out;
    for (int sign : {1, -1}) {
        AffineInequality side{Integer(sign) * h.normal, Rational(sign) * h.rhs};
        auto half = Polyhedron::from_h_rep(n, {side});
        if (!half) continue;
        auto piece = polyhedron_intersection(p, *half);
        if (piece && piece->dim() == p.dim()) out.push_back(*piece);
    }
    if (out.size() == 2 && out[0] == out[1]) out.pop_back();
    return out;
}

inline std::vector<Polyhedron> split_by_hyperplanes(const Polyhedron& p, const std::vector<AffineInequality>& hs) {
    std::vector<Polyhedron> cur{p};
    for (const auto& h : hs) {
        std::vector<Polyhedron> next;
        for (const auto& q : cur)
            for (auto& r : split_polyhedron(q, h)) next.push_back(std::move(r));
        cur = std::move(next);
    }
    return cur;
}

/// Refinement of every maximal cell by the hyperplanes {a.x = b}.
inline PolyhedralComplex refine_complex(const PolyhedralComplex& c, const std::vector<AffineInequality>& hyperplanes) {
    std::vector<Polyhedron> cells;
    for (auto m : c.maximal_cells())
        for (auto& p : split_by_hyperplanes(c.cell(m), hyperplanes)) cells.push_back(std::move(p));
    return PolyhedralComplex::from_cells(c.ambient_dim(), cells);
}

/// True iff the polyhedra in `pieces` (each contained in `region`) cover it.
inline bool polyhedra_cover(const Polyhedron& region, const std::vector<Polyhedron>& pieces) {
    std::vector<Cone> cones;
    for (const auto& p : pieces) cones.push_back(p.homogenization());
    return pieces_cover(region.homogenization(), cones);
}

} // namespace tropical
