#pragma once

// Tropical cycles on polyhedral complexes: balancing, Cartier divisors,
// products, pushforward, stable intersection and the Allermann-Rau product.

#include "tropical/complex.hpp"
#include "tropical/divisor.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace tropical {

class TropicalCycle {
public:
    TropicalCycle() = default;

    /// Weights on dim-dimensional cells of `complex`; zero weights are dropped.
    TropicalCycle(PolyhedralComplex complex, std::size_t dim, const std::map<std::size_t, Integer>& weights)
        : complex_(std::move(complex)), dim_(dim) {
        for (const auto& [i, w] : weights) {
            if (complex_.cell(i).dim() != dim)
                throw Error(ErrorCode::WrongCodimension, "weight on a cell of dimension " +
                                                             std::to_string(complex_.cell(i).dim()));
            if (w != 0) weights_[i] = w;
        }
    }

    /// Cycle on the face closure of the weighted cells. Repeated cells add up.
    static TropicalCycle from_cells(std::size_t n, std::size_t dim, const std::vector<std::pair<Polyhedron, Integer>>& cells) {
        std::map<Polyhedron, Integer> merged;
        for (const auto& [p, w] : cells) {
            require_same_size(p.ambient_dim(), n, "TropicalCycle::from_cells");
            if (p.dim() != dim) throw Error(ErrorCode::WrongCodimension, "cell " + describe(p) + " has the wrong dimension");
            merged[p] += w;
        }
        std::vector<Polyhedron> keep;
        for (const auto& [p, w] : merged)
            if (w != 0) keep.push_back(p);
        auto complex = PolyhedralComplex::from_cells(n, keep);
        std::map<std::size_t, Integer> weights;
        for (const auto& p : keep) weights[complex.index_of(p)] = merged.at(p);
        return TropicalCycle(std::move(complex), dim, weights);
    }

    static TropicalCycle zero(std::size_t n, std::size_t dim) { return TropicalCycle(PolyhedralComplex(n), dim, {}); }

    /// R^n with weight 1.
    static TropicalCycle unit(std::size_t n) {
        std::vector<IntVector> lin;
        for (std::size_t i = 0; i < n; ++i) lin.push_back(unit_vector(n, i));
        return from_cells(n, n, {{Polyhedron::from_v_rep(n, {RatVector(n, Rational(0))}, {}, lin), Integer(1)}});
    }

    /// A Minkowski weight regarded as a cycle on its fan.
    static TropicalCycle from_weight(const MinkowskiWeight& c) {
        std::vector<std::pair<Polyhedron, Integer>> cells;
        for (const auto& [s, w] : c.entries()) cells.push_back({Polyhedron::from_cone(c.fan().cone(s)), w});
        return from_cells(c.fan().ambient_dim(), c.dim(), cells);
    }

    std::size_t ambient_dim() const { return complex_.ambient_dim(); }
    std::size_t dim() const { return dim_; }
    const PolyhedralComplex& complex() const { return complex_; }
    const std::map<std::size_t, Integer>& weights() const { return weights_; }
    bool is_zero() const { return weights_.empty(); }

    Integer weight(std::size_t cell) const {
        auto it = weights_.find(cell);
        return it == weights_.end() ? Integer(0) : it->second;
    }

    std::vector<std::pair<Polyhedron, Integer>> weighted_cells() const {
        std::vector<std::pair<Polyhedron, Integer>> out;
        for (const auto& [i, w] : weights_) out.push_back({complex_.cell(i), w});
        return out;
    }

    TropicalCycle operator-() const {
        auto cells = weighted_cells();
        for (auto& [p, w] : cells) w = -w;
        return from_cells(ambient_dim(), dim_, cells);
    }

    TropicalCycle translated(const RatVector& t) const {
        auto cells = weighted_cells();
        for (auto& [p, w] : cells) p = p.translated(t);
        return from_cells(ambient_dim(), dim_, cells);
    }

private:
    PolyhedralComplex complex_;
    std::size_t dim_ = 0;
    std::map<std::size_t, Integer> weights_;
};

// --- balancing ----------------------------------------------------------------

struct CycleViolation {
    std::size_t cell;
    IntVector defect;
};

/// Weighted cells of c containing cell tau, as a Minkowski weight on the star.
inline MinkowskiWeight star_weight(const TropicalCycle& c, const StarFan& star, const FanPtr& fan) {
    MinkowskiWeight w(fan, c.ambient_dim() - c.dim());
    for (const auto& [cell, cone] : star.cone_of_cell) {
        Integer x = c.weight(cell);
        if (x != 0) w.set(cone, x);
    }
    return w;
}

/// (dim-1)-cells of the complex that are faces of weighted cells.
inline std::vector<std::size_t> codim_one_cells(const TropicalCycle& c) {
    std::vector<std::size_t> out;
    if (c.dim() == 0) return out;
    for (auto t : c.complex().cells_of_dim(c.dim() - 1))
        for (auto s : c.complex().cofaces(t))
            if (c.weight(s) != 0) {
                out.push_back(t);
                break;
            }
    return out;
}

inline std::vector<CycleViolation> check_cycle_balancing(const TropicalCycle& c) {
    std::vector<CycleViolation> out;
    for (auto t : codim_one_cells(c)) {
        auto star = star_fan(c.complex(), t);
        auto fan = share(star.fan);
        for (const auto& v : check_balancing(star_weight(c, star, fan))) out.push_back({t, v.defect});
    }
    return out;
}

inline bool is_balanced(const TropicalCycle& c) { return check_cycle_balancing(c).empty(); }

/// Builds the cycle and throws UNBALANCED naming the first offending cell.
inline TropicalCycle validate_cycle(const PolyhedralComplex& complex, std::size_t dim,
                                    const std::map<std::size_t, Integer>& weights) {
    TropicalCycle c(complex, dim, weights);
    auto v = check_cycle_balancing(c);
    if (!v.empty())
        throw Error(ErrorCode::Unbalanced, "unbalanced at " + describe(complex.cell(v.front().cell)) + ", defect " +
                                               vector_to_string(v.front().defect));
    return c;
}

inline Integer cycle_degree(const TropicalCycle& c) {
    if (c.dim() != 0) throw Error(ErrorCode::WrongCodimension, "degree needs a 0-dimensional cycle");
    Integer d = 0;
    for (const auto& [i, w] : c.weights()) d += w;
    return d;
}

// --- Cartier divisors -----------------------------------------------------------

struct AffineFunction {
    IntVector linear;
    Rational constant;

    Rational operator()(const RatVector& x) const { return dot(linear, x) + constant; }
    friend bool operator==(const AffineFunction&, const AffineFunction&) = default;
};

/// Charts (U_i, phi_i): sets of cells with an affine function on each cell.
struct CartierChart {
    std::set<std::size_t> cells;
    std::map<std::size_t, AffineFunction> functions;
};

namespace detail {

/// f and g agree on cell p.
inline bool agree_on(const Polyhedron& p, const AffineFunction& f, const AffineFunction& g) {
    for (const auto& v : p.vertices())
        if (f(v) != g(v)) return false;
    IntVector d = f.linear - g.linear;
    for (const auto& r : p.rays())
        if (dot(d, r) != 0) return false;
    for (const auto& l : p.lineality())
        if (dot(d, l) != 0) return false;
    return true;
}

/// A rational solution of the (possibly overdetermined) system rows . x = rhs.
inline std::optional<RatVector> solve_consistent(std::vector<RatVector> rows, RatVector rhs, std::size_t n) {
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c] / rows[r][c];
            for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (rhs[i] != 0) return std::nullopt;
    RatVector x(n, Rational(0));
    for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = rhs[i] / rows[i][pivots[i]];
    return x;
}

} // namespace detail

class CartierDivisor {
public:
    CartierDivisor() = default;

    /// Validates coverage, openness, continuity inside charts and that chart
    /// functions differ by an affine function on overlaps.
    CartierDivisor(PolyhedralComplex complex, std::vector<CartierChart> charts)
        : complex_(std::move(complex)), charts_(std::move(charts)) {
        validate();
    }

    const PolyhedralComplex& complex() const { return complex_; }
    const std::vector<CartierChart>& charts() const { return charts_; }

    /// Index of the first chart containing tau (and hence its open star).
    std::size_t chart_containing(std::size_t tau) const {
        for (std::size_t i = 0; i < charts_.size(); ++i)
            if (charts_[i].cells.count(tau)) return i;
        throw Error(ErrorCode::NoChart, "no chart contains " + describe(complex_.cell(tau)));
    }

private:
    void validate() const {
        const auto& C = complex_;
        std::set<std::size_t> covered;
        for (const auto& ch : charts_) {
            for (auto i : ch.cells) {
                if (i >= C.size()) throw Error(ErrorCode::CellNotFound, "chart cell index out of range");
                covered.insert(i);
                if (!ch.functions.count(i)) throw Error(ErrorCode::InvalidArgument, "chart has no function on a cell");
                if (ch.functions.at(i).linear.size() != C.ambient_dim())
                    throw Error(ErrorCode::DimensionMismatch, "chart covector has the wrong length");
                for (auto s : C.cofaces(i))
                    if (!ch.cells.count(s)) throw Error(ErrorCode::InvalidArgument, "chart is not open");
            }
            for (auto i : ch.cells)
                for (auto s : C.cofaces(i))
                    if (!detail::agree_on(C.cell(i), ch.functions.at(i), ch.functions.at(s)))
                        throw Error(ErrorCode::ContinuityViolation, "chart function is discontinuous at " + describe(C.cell(i)));
        }
        if (covered.size() != C.size()) throw Error(ErrorCode::NoChart, "charts do not cover the complex");
        for (std::size_t a = 0; a < charts_.size(); ++a)
            for (std::size_t b = a + 1; b < charts_.size(); ++b) check_overlap(charts_[a], charts_[b]);
    }

    /// On every connected component of U_a ∩ U_b the difference is the
    /// restriction of one affine function.
    void check_overlap(const CartierChart& a, const CartierChart& b) const {
        std::vector<std::size_t> shared;
        for (auto i : a.cells)
            if (b.cells.count(i)) shared.push_back(i);
        std::map<std::size_t, std::size_t> comp;
        for (auto i : shared) comp[i] = i;
        auto find = [&](std::size_t x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (auto i : shared)
            for (auto s : complex_.cofaces(i))
                if (comp.count(s)) comp[find(i)] = find(s);
        std::map<std::size_t, std::vector<std::size_t>> groups;
        for (auto i : shared) groups[find(i)].push_back(i);
        const std::size_t n = complex_.ambient_dim();
        for (const auto& [root, cells] : groups) {
            std::vector<RatVector> rows;
            RatVector rhs;
            for (auto i : cells) {
                const auto& p = complex_.cell(i);
                const auto& fa = a.functions.at(i);
                const auto& fb = b.functions.at(i);
                for (const auto& v : p.vertices()) {
                    RatVector row(v);
                    row.push_back(Rational(1));
                    rows.push_back(row);
                    rhs.push_back(fa(v) - fb(v));
                }
                IntVector d = fa.linear - fb.linear;
                auto directions = p.rays();
                for (const auto& l : p.lineality()) directions.push_back(l);
                for (const auto& r : directions) {
                    RatVector row = to_rational(r);
                    row.push_back(Rational(0));
                    rows.push_back(row);
                    rhs.push_back(Rational(dot(d, r)));
                }
            }
            if (!detail::solve_consistent(rows, rhs, n + 1))
                throw Error(ErrorCode::ContinuityViolation, "chart functions do not differ by an affine function on an overlap");
        }
    }

    PolyhedralComplex complex_;
    std::vector<CartierChart> charts_;
};

/// One global chart with phi = min_i (m_i . x + a_i); every cell must have a
/// minimizing form.
inline CartierDivisor min_of_affine(const PolyhedralComplex& c, const std::vector<AffineFunction>& forms) {
    CartierChart chart;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& p = c.cell(i);
        std::optional<std::size_t> best;
        for (std::size_t a = 0; a < forms.size() && !best; ++a) {
            bool minimal = true;
            for (std::size_t b = 0; b < forms.size() && minimal; ++b) {
                IntVector d = forms[b].linear - forms[a].linear;
                for (const auto& v : p.vertices())
                    if (forms[b](v) < forms[a](v)) minimal = false;
                for (const auto& r : p.rays())
                    if (dot(d, r) < 0) minimal = false;
                for (const auto& l : p.lineality())
                    if (dot(d, l) != 0) minimal = false;
            }
            if (minimal) best = a;
        }
        if (!best) throw Error(ErrorCode::NotPiecewiseLinear, "minimum is not affine on " + describe(p));
        chart.cells.insert(i);
        chart.functions[i] = forms[*best];
    }
    return CartierDivisor(c, {chart});
}

inline CartierDivisor affine_divisor(const PolyhedralComplex& c, const AffineFunction& f) { return min_of_affine(c, {f}); }

/// Induced homogeneous function on the star fan at tau, from the first chart
/// containing tau.
inline PiecewiseLinearFunction star_restrict_divisor(const CartierDivisor& phi, std::size_t tau, const StarFan& star,
                                                     const FanPtr& fan) {
    const auto& chart = phi.charts()[phi.chart_containing(tau)];
    std::map<std::size_t, IntVector> cov;
    for (const auto& [cell, cone] : star.cone_of_cell) cov[cone] = chart.functions.at(cell).linear;
    return PiecewiseLinearFunction::from_covectors(fan, cov);
}

/// Associated Weil divisor; weight at tau = divisor (or kappa) of the star
/// weight by the star function, at the minimal cone.
inline TropicalCycle cartier_weil(const TropicalCycle& c, const CartierDivisor& phi, Convention conv) {
    if (!(phi.complex() == c.complex()))
        throw Error(ErrorCode::InvalidArgument, "Cartier divisor lives on a different complex");
    if (c.dim() == 0) throw Error(ErrorCode::WrongCodimension, "cannot cut a 0-dimensional cycle");
    std::vector<std::pair<Polyhedron, Integer>> cells;
    for (auto t : codim_one_cells(c)) {
        auto star = star_fan(c.complex(), t);
        auto fan = share(star.fan);
        auto w = star_weight(c, star, fan);
        auto f = star_restrict_divisor(phi, t, star, fan);
        Integer value = divisor_value(w, f, star.minimal, divisor_lifts(w, star.minimal));
        if (conv == Convention::Kappa) value = -value;
        if (value != 0) cells.push_back({c.complex().cell(t), value});
    }
    return TropicalCycle::from_cells(c.ambient_dim(), c.dim() - 1, cells);
}

// --- products and pushforward ------------------------------------------------

inline TropicalCycle cross_cycles(const TropicalCycle& a, const TropicalCycle& b) {
    std::vector<std::pair<Polyhedron, Integer>> cells;
    for (const auto& [p, w] : a.weighted_cells())
        for (const auto& [q, x] : b.weighted_cells()) cells.push_back({polyhedron_product(p, q), w * x});
    return TropicalCycle::from_cells(a.ambient_dim() + b.ambient_dim(), a.dim() + b.dim(), cells);
}

/// Splits every weighted cell by the hyperplanes; pieces inherit weights.
inline TropicalCycle refine_cycle(const TropicalCycle& c, const std::vector<AffineInequality>& hyperplanes) {
    std::vector<std::pair<Polyhedron, Integer>> cells;
    for (const auto& [p, w] : c.weighted_cells())
        for (auto& q : split_by_hyperplanes(p, hyperplanes)) cells.push_back({std::move(q), w});
    return TropicalCycle::from_cells(c.ambient_dim(), c.dim(), cells);
}

struct PushforwardInfo {
    bool collapsed_everywhere = false; // no cell keeps its dimension
    std::size_t collapsed_cells = 0;
};

/// Affine hull of p as a polyhedron (a canonical key).
inline Polyhedron affine_hull(const Polyhedron& p) {
    return *Polyhedron::from_h_rep(p.ambient_dim(), {}, p.equations());
}

/// h_*(c): images of full dimension, cut into the arrangement of all image
/// facet hyperplanes within each affine hull, weighted by lattice indices.
inline TropicalCycle pushforward_cycle(const IntMatrix& h, const TropicalCycle& c, PushforwardInfo* info = nullptr) {
    require_same_size(h.cols(), c.ambient_dim(), "pushforward_cycle");
    const std::size_t m = h.rows();
    struct Image {
        Polyhedron cell;
        Integer weight;
    };
    std::map<Polyhedron, std::vector<Image>> by_hull;
    std::size_t collapsed = 0;
    for (const auto& [p, w] : c.weighted_cells()) {
        Polyhedron img = polyhedron_image(h, p);
        if (img.dim() < c.dim()) {
            ++collapsed;
            continue;
        }
        by_hull[affine_hull(img)].push_back({img, w * image_lattice_index(h, p.lattice_basis())});
    }
    if (info) {
        info->collapsed_cells = collapsed;
        info->collapsed_everywhere = !c.is_zero() && collapsed == c.weights().size();
    }
    std::vector<std::pair<Polyhedron, Integer>> cells;
    for (const auto& [hull, images] : by_hull) {
        std::vector<AffineInequality> planes;
        for (const auto& im : images)
            for (const auto& f : im.cell.inequalities()) planes.push_back(f);
        std::set<Polyhedron> pieces;
        for (const auto& im : images)
            for (auto& q : split_by_hyperplanes(im.cell, planes)) pieces.insert(std::move(q));
        for (const auto& q : pieces) {
            Integer total = 0;
            for (const auto& im : images)
                if (im.cell.contains(q)) total += im.weight;
            if (total != 0) cells.push_back({q, total});
        }
    }
    return TropicalCycle::from_cells(m, c.dim(), cells);
}

// --- stable intersection ------------------------------------------------------

struct StableTrace {
    std::map<std::size_t, GenericVector> vectors; // per intersection cell
    PolyhedralComplex cells;                      // the dim-(k+l-n) cells evaluated
};

/// Weighted local cones of c at w.
inline std::vector<std::pair<Cone, Integer>> local_star(const TropicalCycle& c, const RatVector& w) {
    std::vector<std::pair<Cone, Integer>> out;
    for (const auto& [i, x] : c.weights())
        if (c.complex().cell(i).contains(w)) out.push_back({c.complex().cell(i).recession_cone_at(w), x});
    return out;
}

/// Fan displacement formula on the two local stars at w.
inline Integer local_intersection_weight(const std::vector<std::pair<Cone, Integer>>& s1,
                                         const std::vector<std::pair<Cone, Integer>>& s2, std::size_t n,
                                         std::uint64_t seed, std::uint64_t salt, GenericVector* vec = nullptr) {
    DisplacementProblem p;
    for (std::size_t a = 0; a < s1.size(); ++a)
        for (std::size_t b = 0; b < s2.size(); ++b) {
            p.pairs.emplace_back(a, b);
            p.differences.push_back(cone_difference(s1[a].first, s2[b].first));
        }
    GenericVector g = pick_generic_vector(p, n, seed, salt);
    Integer total = 0;
    for (const auto& cert : g.certificate) {
        if (cert.status != PairStatus::Transverse) continue;
        const auto& [c1, w1] = s1[cert.sigma1];
        const auto& [c2, w2] = s2[cert.sigma2];
        total += w1 * w2 * displacement_multiplicity(span_lattice_basis(c1), span_lattice_basis(c2), n);
    }
    if (vec) *vec = std::move(g);
    return total;
}

/// Mikhalkin's stable intersection product.
inline TropicalCycle stable_intersect(const TropicalCycle& c1, const TropicalCycle& c2, std::uint64_t seed = 0,
                                      StableTrace* trace = nullptr) {
    require_same_size(c1.ambient_dim(), c2.ambient_dim(), "stable_intersect");
    const std::size_t n = c1.ambient_dim();
    if (c1.dim() + c2.dim() < n) throw Error(ErrorCode::WrongCodimension, "dimensions too small for a proper product");
    const std::size_t d = c1.dim() + c2.dim() - n;
    std::set<Polyhedron> taus;
    for (const auto& [p, w] : c1.weighted_cells())
        for (const auto& [q, x] : c2.weighted_cells())
            if (auto r = polyhedron_intersection(p, q))
                for (auto& f : r->faces_of_dim(d)) taus.insert(std::move(f));
    std::vector<Polyhedron> list(taus.begin(), taus.end());
    std::vector<std::pair<Polyhedron, Integer>> cells;
    for (std::size_t t = 0; t < list.size(); ++t) {
        RatVector w = list[t].relative_interior_point();
        GenericVector g;
        Integer value = local_intersection_weight(local_star(c1, w), local_star(c2, w), n, seed, t, &g);
        if (trace) trace->vectors[t] = std::move(g);
        if (value != 0) cells.push_back({list[t], value});
    }
    if (trace) trace->cells = PolyhedralComplex::from_cells(n, list);
    return TropicalCycle::from_cells(n, d, cells);
}

// --- Allermann-Rau product ------------------------------------------------------

struct ArCycleTrace {
    TropicalCycle product;
    std::vector<TropicalCycle> steps;
};

/// pi_*(chi_1 ... chi_n . (c1 x c2)) with chi_i = min(0, y_i - x_i), kappa convention.
inline TropicalCycle ar_product_cycles(const TropicalCycle& c1, const TropicalCycle& c2, ArCycleTrace* trace = nullptr) {
    require_same_size(c1.ambient_dim(), c2.ambient_dim(), "ar_product_cycles");
    const std::size_t n = c1.ambient_dim();
    if (c1.dim() + c2.dim() < n) throw Error(ErrorCode::WrongCodimension, "dimensions too small for a proper product");
    std::vector<AffineInequality> planes;
    for (std::size_t i = 0; i < n; ++i) planes.push_back({diagonal_form(n, i), Rational(0)});
    TropicalCycle w = refine_cycle(cross_cycles(c1, c2), planes);
    if (trace) trace->product = w;
    for (std::size_t i = 0; i < n; ++i) {
        auto chi = min_of_affine(w.complex(), {{zero_vector(2 * n), Rational(0)}, {diagonal_form(n, i), Rational(0)}});
        w = cartier_weil(w, chi, Convention::Kappa);
        if (trace) trace->steps.push_back(w);
    }
    return pushforward_cycle(first_projection(n), w);
}

// --- comparison -----------------------------------------------------------------

namespace detail {

inline bool covered_with_equal_weights(const TropicalCycle& a, const TropicalCycle& b) {
    auto bcells = b.weighted_cells();
    for (const auto& [p, w] : a.weighted_cells()) {
        std::vector<Polyhedron> pieces;
        for (const auto& [q, x] : bcells) {
            auto r = polyhedron_intersection(p, q);
            if (!r || r->dim() != a.dim()) continue;
            if (w != x) return false;
            pieces.push_back(*r);
        }
        if (!polyhedra_cover(p, pieces)) return false;
    }
    return true;
}

} // namespace detail

/// Equal as weighted point sets (cell structures may differ).
inline bool cycles_equal(const TropicalCycle& a, const TropicalCycle& b) {
    if (a.ambient_dim() != b.ambient_dim()) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.dim() != b.dim()) return false;
    return detail::covered_with_equal_weights(a, b) && detail::covered_with_equal_weights(b, a);
}

/// Every weighted cell of c lies in the support of s.
inline bool supported_in(const TropicalCycle& c, const TropicalCycle& s) {
    for (const auto& [p, w] : c.weighted_cells()) {
        std::set<Polyhedron> pieces;
        for (const auto& [q, x] : s.weighted_cells())
            if (auto r = polyhedron_intersection(p, q); r && r->dim() == p.dim()) pieces.insert(*r);
        if (!polyhedra_cover(p, std::vector<Polyhedron>(pieces.begin(), pieces.end()))) return false;
    }
    return true;
}

} // namespace tropical
