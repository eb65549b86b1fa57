#pragma once

// The fan Trop(M_{0,n}) in R^{C(n,2)} / Theta(R^n), psi-class functions f_k and
// their intersection degrees.

#include "tropical/divisor.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace tropical {

/// A split J | J^c of [n], stored as the bitmask of the side not containing n
/// (bit i-1 for marker i).
using Split = std::uint32_t;

inline std::size_t split_size(Split s) { return static_cast<std::size_t>(std::popcount(s)); }
inline Split full_mask(std::size_t n) { return (Split(1) << n) - 1; }
inline Split complement(Split s, std::size_t n) { return full_mask(n) & ~s; }
inline bool split_contains(Split s, std::size_t marker) { return (s >> (marker - 1)) & 1; }

inline bool is_valid_split(Split s, std::size_t n) {
    return (s & ~full_mask(n)) == 0 && !split_contains(s, n) && split_size(s) >= 2 && split_size(s) + 2 <= n;
}

/// Representative of an arbitrary subset of [n] viewed as a split.
inline Split canonical_split(Split side, std::size_t n) { return split_contains(side, n) ? complement(side, n) : side; }

/// Nested or disjoint (the representatives never both contain n).
inline bool compatible(Split a, Split b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; }

inline std::vector<Split> all_splits(std::size_t n) {
    std::vector<Split> out;
    for (Split s = 0; s < (Split(1) << (n - 1)); ++s)
        if (is_valid_split(s, n)) out.push_back(s);
    return out;
}

inline std::string split_to_string(Split s, std::size_t n) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 1; i <= n; ++i)
        if (split_contains(s, i)) {
            out += (first ? "" : ",") + std::to_string(i);
            first = false;
        }
    return out + "}";
}

/// Ambient 0/1 vector of a split: 1 on pairs separated by it.
inline IntVector nu_ambient(Split s, std::size_t n) {
    IntVector v;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) v.push_back(split_contains(s, i) != split_contains(s, j) ? 1 : 0);
    return v;
}

/// Coordinates on R^{C(n,2)} / Theta(R^n) with respect to the lattice spanned
/// by the images of the nu_J.
struct M0nQuotient {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // 12, 13, ..., (n-1)n
    std::vector<IntVector> theta_rows;                     // Theta(e_i)
    QuotientMap map;                                       // onto Z^{C(n,2)} / sat(Theta(Z^n))
    IntMatrix basis_change;                                // V of the SNF of the nu images
    std::vector<Integer> scale;                            // its invariants

    std::size_t ambient_dim() const { return pairs.size(); }
    std::size_t dim() const { return map.quotient_dim(); }

    std::size_t pair_index(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (pairs[p].first == i && pairs[p].second == j) return p;
        throw Error(ErrorCode::InvalidArgument, "no such pair");
    }

    IntVector theta(const IntVector& a) const {
        require_same_size(a.size(), n, "theta");
        IntVector out = zero_vector(pairs.size());
        for (std::size_t p = 0; p < pairs.size(); ++p) out[p] = a[pairs[p].first - 1] + a[pairs[p].second - 1];
        return out;
    }

    RatVector project(const RatVector& x) const {
        require_same_size(x.size(), pairs.size(), "M0nQuotient::project");
        Integer l = 1;
        for (const auto& v : x) l = lcm(l, denominator(v));
        RatVector scaled(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = x[i] * Rational(l);
        IntVector y = map.project(to_integer(scaled));
        RatVector out(dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            Integer z = 0;
            for (std::size_t i = 0; i < dim(); ++i) z += y[i] * basis_change(i, j);
            out[j] = Rational(z, l * scale[j]);
        }
        return out;
    }

    /// Lattice points only; throws NonIntegral otherwise.
    IntVector project(const IntVector& x) const {
        RatVector r = project(to_rational(x));
        for (const auto& v : r)
            if (denominator(v) != 1) throw Error(ErrorCode::NonIntegral, "vector is not in the lattice spanned by the nu_J");
        return to_integer(r);
    }
};

inline M0nQuotient build_quotient(std::size_t n) {
    if (n < 4) throw Error(ErrorCode::InvalidArgument, "M_{0,n} needs n >= 4");
    if (n > 12) throw Error(ErrorCode::InvalidArgument, "n too large");
    M0nQuotient q;
    q.n = n;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) q.pairs.emplace_back(i, j);
    for (std::size_t i = 0; i < n; ++i) q.theta_rows.push_back(q.theta(unit_vector(n, i)));
    q.map = QuotientMap(q.theta_rows, q.pairs.size());
    std::vector<IntVector> images;
    for (Split s = 0; s < (Split(1) << (n - 1)); ++s)
        if (is_valid_split(s, n)) images.push_back(q.map.project(nu_ambient(s, n)));
    auto snf = smith_normal_form(IntMatrix::from_rows(images, q.dim()));
    if (snf.rank != q.dim()) throw Error(ErrorCode::InvalidArgument, "nu vectors do not span the quotient");
    q.basis_change = snf.V;
    q.scale = snf.invariants();
    return q;
}

inline IntVector nu_ambient(Split s, const M0nQuotient& q) { return nu_ambient(s, q.n); }

inline IntVector nu(Split s, const M0nQuotient& q) {
    Split c = canonical_split(s, q.n);
    if (!is_valid_split(c, q.n)) throw Error(ErrorCode::InvalidArgument, "invalid split " + split_to_string(s, q.n));
    IntVector v = q.project(nu_ambient(c, q.n));
    if (content(v) != 1) throw Error(ErrorCode::InvalidArgument, "nu is not primitive in the quotient");
    return v;
}

/// A phylogenetic tree with leaves 1..n (vertices 0..n-1) and internal
/// vertices n, n+1, ...; built by inserting compatible splits into a star.
class SplitTree {
public:
    SplitTree(std::size_t n, const std::vector<Split>& splits) : n_(n), adj_(n + 1) {
        for (std::size_t leaf = 0; leaf < n; ++leaf) link(leaf, n);
        for (auto s : splits) insert(s);
    }

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t degree(std::size_t v) const { return adj_[v].size(); }
    const std::vector<std::size_t>& neighbours(std::size_t v) const { return adj_[v]; }
    /// Vertex adjacent to leaf k (1-based marker).
    std::size_t leaf_neighbour(std::size_t k) const { return adj_[k - 1].front(); }

    /// Leaves on the far side of the edge v -> u, as a bitmask.
    Split far_side(std::size_t v, std::size_t u) const {
        Split mask = 0;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{u, v}};
        while (!stack.empty()) {
            auto [x, from] = stack.back();
            stack.pop_back();
            if (x < n_) mask |= Split(1) << x;
            for (auto y : adj_[x])
                if (y != from) stack.push_back({y, x});
        }
        return mask;
    }

    /// Internal edges with their splits (canonical representatives).
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Split>> internal_edges() const {
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, Split>> out;
        for (std::size_t v = n_; v < adj_.size(); ++v)
            for (auto u : adj_[v])
                if (u >= n_ && v < u) out.push_back({{v, u}, canonical_split(far_side(v, u), n_)});
        return out;
    }

    /// Number of edges on the path between leaves i and j (1-based).
    std::vector<std::size_t> path_internal_edges(std::size_t i, std::size_t j) const {
        std::vector<std::size_t> parent(adj_.size(), adj_.size());
        std::vector<std::size_t> queue{i - 1};
        parent[i - 1] = i - 1;
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (auto y : adj_[queue[q]])
                if (parent[y] == adj_.size()) {
                    parent[y] = queue[q];
                    queue.push_back(y);
                }
        std::vector<std::size_t> path;
        for (std::size_t x = j - 1; x != i - 1; x = parent[x]) path.push_back(x);
        path.push_back(i - 1);
        return path;
    }

private:
    void link(std::size_t a, std::size_t b) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    void unlink(std::size_t a, std::size_t b) {
        std::erase(adj_[a], b);
        std::erase(adj_[b], a);
    }

    void insert(Split s) {
        if (!is_valid_split(s, n_)) throw Error(ErrorCode::InvalidArgument, "invalid split " + split_to_string(s, n_));
        for (std::size_t v = n_; v < adj_.size(); ++v) {
            std::vector<std::size_t> inside, outside;
            bool ok = true;
            for (auto u : adj_[v]) {
                Split side = far_side(v, u);
                if ((side & s) == side)
                    inside.push_back(u);
                else if ((side & s) == 0)
                    outside.push_back(u);
                else
                    ok = false;
            }
            if (!ok || inside.size() < 2 || outside.size() < 2) continue;
            std::size_t w = adj_.size();
            adj_.emplace_back();
            for (auto u : inside) {
                unlink(v, u);
                link(w, u);
            }
            link(v, w);
            return;
        }
        throw Error(ErrorCode::InvalidArgument, "split " + split_to_string(s, n_) + " is incompatible or repeated");
    }

    std::size_t n_;
    std::vector<std::vector<std::size_t>> adj_;
};

/// The 4-valent vertex of a codimension-one tree type is adjacent to leaf k.
inline bool in_E_k(std::size_t n, const std::vector<Split>& splits, std::size_t k) {
    SplitTree t(n, splits);
    return t.degree(t.leaf_neighbour(k)) == 4;
}

struct TropM0n {
    M0nQuotient quotient;
    std::vector<Split> splits;            // all splits, in enumeration order
    std::map<Split, std::size_t> ray_of;  // split -> fan ray index
    std::map<std::size_t, Split> split_of; // fan ray index -> split
    FanPtr fan;
    std::size_t n() const { return quotient.n; }

    /// Splits of the rays of fan cone i.
    std::vector<Split> cone_splits(std::size_t i) const {
        std::vector<Split> out;
        for (auto r : fan->cone_rays(i)) out.push_back(split_of.at(r));
        return out;
    }
};

/// Maximal sets of pairwise compatible splits, by backtracking.
inline std::vector<std::vector<std::size_t>> trivalent_types(const std::vector<Split>& splits, std::size_t size) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == size) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < splits.size(); ++i) {
            bool ok = true;
            for (auto j : cur)
                if (!compatible(splits[i], splits[j])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline TropM0n build_trop_m0n(std::size_t n) {
    if (n < 4 || n > 8) throw Error(ErrorCode::InvalidArgument, "build_trop_m0n supports 4 <= n <= 8");
    TropM0n t;
    t.quotient = build_quotient(n);
    t.splits = all_splits(n);
    std::vector<IntVector> rays;
    for (auto s : t.splits) rays.push_back(nu(s, t.quotient));
    auto types = trivalent_types(t.splits, n - 3);
    t.fan = share(Fan::from_simplicial(t.quotient.dim(), rays, types));
    for (std::size_t i = 0; i < t.splits.size(); ++i) {
        auto it = std::lower_bound(t.fan->rays().begin(), t.fan->rays().end(), rays[i]);
        std::size_t r = static_cast<std::size_t>(it - t.fan->rays().begin());
        t.ray_of[t.splits[i]] = r;
        t.split_of[r] = t.splits[i];
    }
    return t;
}

/// Weight 1 on every maximal cone.
inline MinkowskiWeight m0n_unit_weight(const TropM0n& t) {
    MinkowskiWeight c(t.fan, t.fan->ambient_dim() - (t.n() - 3));
    for (auto m : t.fan->cones_of_dim(t.n() - 3)) c.set(m, 1);
    return c;
}

/// Quotient point of a tree with the given internal edge lengths, computed
/// from pairwise leaf distances (leaf edges have length zero).
inline RatVector dist_embedding(const M0nQuotient& q, const std::vector<Split>& splits,
                                const std::vector<Rational>& lengths) {
    if (splits.size() != lengths.size()) throw Error(ErrorCode::DimensionMismatch, "one length per split");
    for (const auto& l : lengths)
        if (l < 0) throw Error(ErrorCode::InvalidArgument, "edge lengths must be nonnegative");
    SplitTree tree(q.n, splits);
    std::map<std::pair<std::size_t, std::size_t>, Rational> edge_length;
    for (const auto& [e, s] : tree.internal_edges()) {
        for (std::size_t i = 0; i < splits.size(); ++i)
            if (splits[i] == s) edge_length[e] = lengths[i];
    }
    RatVector d(q.pairs.size());
    for (std::size_t p = 0; p < q.pairs.size(); ++p) {
        auto path = tree.path_internal_edges(q.pairs[p].first, q.pairs[p].second);
        Rational total = 0;
        for (std::size_t a = 0; a + 1 < path.size(); ++a) {
            auto e = std::minmax(path[a], path[a + 1]);
            auto it = edge_length.find({e.first, e.second});
            if (it != edge_length.end()) total += it->second;
        }
        d[p] = total;
    }
    return q.project(d);
}

inline bool in_V_k(Split s, std::size_t n, std::size_t k) {
    Split c = complement(s, n);
    return (split_size(s) == 2 && !split_contains(s, k)) || (split_size(c) == 2 && !split_contains(c, k));
}

inline Integer binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    Integer r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * Integer(n - k + i) / Integer(i);
    return r;
}

/// Side of the split not containing k.
inline Split side_without(Split s, std::size_t n, std::size_t k) { return split_contains(s, k) ? complement(s, n) : s; }

/// Value of f_k at nu_J. In the quotient nu_J = sum of nu_{ij} over pairs
/// {i,j} inside the side J' not containing k, and those nu_{ij} are exactly
/// the elements of V_k, so f_k(nu_J) = C(|J'|, 2).
inline Integer f_k_value(Split s, std::size_t n, std::size_t k) { return binomial(split_size(side_without(s, n, k)), 2); }

inline PiecewiseLinearFunction f_k(const TropM0n& t, std::size_t k) {
    if (k < 1 || k > t.n()) throw Error(ErrorCode::InvalidArgument, "marker index out of range");
    std::vector<Integer> values(t.fan->rays().size(), Integer(0));
    for (const auto& [r, s] : t.split_of) values[r] = f_k_value(s, t.n(), k);
    return PiecewiseLinearFunction::from_ray_values(t.fan, values);
}

inline MinkowskiWeight psi_weil(const TropM0n& t, std::size_t k) { return divisor(m0n_unit_weight(t), f_k(t, k)); }

/// Degrees of products of psi functions, caching iterated divisors by prefix
/// of the sorted index list.
class PsiCalculator {
public:
    explicit PsiCalculator(std::size_t n) : t_(build_trop_m0n(n)) {}

    const TropM0n& trop() const { return t_; }

    /// deg(f_{k_1} ... f_{k_{n-3}} . Trop(M_{0,n})), AR convention, unnormalized.
    Integer raw_degree(std::vector<std::size_t> ks) {
        const std::size_t n = t_.n();
        if (ks.size() != n - 3)
            throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(n - 3) + " indices");
        for (auto k : ks)
            if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "marker index out of range");
        std::sort(ks.begin(), ks.end());
        return degree_of_zero_cone(weight_for(ks));
    }

    /// raw_degree / C(n-1,2)^{n-3}.
    Rational degree(const std::vector<std::size_t>& ks) {
        const std::size_t n = t_.n();
        Integer norm = 1;
        for (std::size_t i = 0; i + 3 < n; ++i) norm *= binomial(n - 1, 2);
        return Rational(raw_degree(ks), norm);
    }

private:
    const PiecewiseLinearFunction& fn(std::size_t k) {
        auto it = f_.find(k);
        if (it != f_.end()) return it->second;
        return f_.emplace(k, f_k(t_, k)).first->second;
    }

    const MinkowskiWeight& weight_for(const std::vector<std::size_t>& prefix) {
        auto it = cache_.find(prefix);
        if (it != cache_.end()) return it->second;
        MinkowskiWeight w;
        if (prefix.empty()) {
            w = m0n_unit_weight(t_);
        } else {
            std::vector<std::size_t> shorter(prefix.begin(), prefix.end() - 1);
            w = divisor(weight_for(shorter), fn(prefix.back()));
        }
        return cache_.emplace(prefix, std::move(w)).first->second;
    }

    Integer degree_of_zero_cone(const MinkowskiWeight& w) const {
        Integer d = 0;
        for (const auto& [c, v] : w.entries())
            if (w.fan().cone(c).dim() == 0) d += v;
        return d;
    }

    TropM0n t_;
    std::map<std::size_t, PiecewiseLinearFunction> f_;
    std::map<std::vector<std::size_t>, MinkowskiWeight> cache_;
};

inline Rational psi_degree(std::size_t n, const std::vector<std::size_t>& ks) { return PsiCalculator(n).degree(ks); }

/// All multisets of size m from {1..n}, sorted, in lexicographic order.
inline std::vector<std::vector<std::size_t>> index_multisets(std::size_t n, std::size_t m) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == m) {
            out.push_back(cur);
            return;
        }
        for (std::size_t k = start; k <= n; ++k) {
            cur.push_back(k);
            self(self, k);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

} // namespace tropical
