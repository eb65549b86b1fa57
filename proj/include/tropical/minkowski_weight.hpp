#pragma once

#include "tropical/fan.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tropical {

using FanPtr = std::shared_ptr<const Fan>;

inline FanPtr share(Fan f) { return std::make_shared<const Fan>(std::move(f)); }

/// Integer weights on the codimension-k cones of a fan (absent = 0).
class MinkowskiWeight {
public:
    MinkowskiWeight() = default;
    MinkowskiWeight(FanPtr fan, std::size_t codim) : fan_(std::move(fan)), codim_(codim) {}

    const Fan& fan() const { return *fan_; }
    const FanPtr& fan_ptr() const { return fan_; }
    std::size_t codim() const { return codim_; }
    std::size_t dim() const { return fan_->ambient_dim() - codim_; }
    const std::map<std::size_t, Integer>& entries() const { return w_; }

    Integer operator()(std::size_t cone) const {
        auto it = w_.find(cone);
        return it == w_.end() ? Integer(0) : it->second;
    }

    void set(std::size_t cone, const Integer& value) {
        if (fan_->cone(cone).dim() + codim_ != fan_->ambient_dim())
            throw Error(ErrorCode::WrongCodimension,
                        "weight on " + Fan::describe(fan_->cone(cone)) + " of codimension " +
                            std::to_string(fan_->ambient_dim() - fan_->cone(cone).dim()) + ", expected " +
                            std::to_string(codim_));
        if (value == 0)
            w_.erase(cone);
        else
            w_[cone] = value;
    }
    void add(std::size_t cone, const Integer& value) { set(cone, (*this)(cone) + value); }

    bool is_zero() const { return w_.empty(); }

    /// Same fan (by value) and same nonzero entries.
    friend bool operator==(const MinkowskiWeight& a, const MinkowskiWeight& b) {
        return a.codim_ == b.codim_ && (a.fan_ == b.fan_ || *a.fan_ == *b.fan_) && a.w_ == b.w_;
    }
    friend bool operator!=(const MinkowskiWeight& a, const MinkowskiWeight& b) { return !(a == b); }

    MinkowskiWeight operator-() const {
        MinkowskiWeight r(fan_, codim_);
        for (const auto& [c, v] : w_) r.w_[c] = -v;
        return r;
    }
    friend MinkowskiWeight operator+(const MinkowskiWeight& a, const MinkowskiWeight& b) {
        if (a.codim_ != b.codim_) throw Error(ErrorCode::WrongCodimension, "sum of weights of different codimension");
        MinkowskiWeight r = a;
        for (const auto& [c, v] : b.w_) r.add(c, v);
        return r;
    }
    friend MinkowskiWeight operator*(const Integer& s, const MinkowskiWeight& a) {
        MinkowskiWeight r(a.fan_, a.codim_);
        if (s != 0)
            for (const auto& [c, v] : a.w_) r.w_[c] = s * v;
        return r;
    }

private:
    FanPtr fan_;
    std::size_t codim_ = 0;
    std::map<std::size_t, Integer> w_;
};

struct BalancingViolation {
    std::size_t tau;
    IntVector defect; // in quotient coordinates of N / N_tau
};

/// Weighted sum of primitive quotient generators at every codim-(k+1) cone.
inline std::vector<BalancingViolation> check_balancing(const MinkowskiWeight& c) {
    const Fan& f = c.fan();
    std::map<std::size_t, std::vector<std::size_t>> taus;
    for (const auto& [s, w] : c.entries())
        for (auto t : f.facets(s)) taus[t].push_back(s);
    std::vector<BalancingViolation> out;
    for (const auto& [t, sigmas] : taus) {
        const Cone& tau = f.cone(t);
        QuotientMap q(tau.span_generators(), f.ambient_dim());
        IntVector sum = zero_vector(q.quotient_dim());
        for (auto s : sigmas) sum = sum + c(s) * quotient_primitive_generator(f.cone(s), tau, q).image;
        if (!is_zero(sum)) out.push_back({t, sum});
    }
    return out;
}

inline bool is_balanced(const MinkowskiWeight& c) { return check_balancing(c).empty(); }

inline void require_balanced(const MinkowskiWeight& c, const char* where) {
    auto v = check_balancing(c);
    if (!v.empty())
        throw Error(ErrorCode::Unbalanced, std::string(where) + ": unbalanced at " +
                                               Fan::describe(c.fan().cone(v.front().tau)) + ", defect " +
                                               vector_to_string(v.front().defect));
}

/// Weight 1 on every maximal cone of a complete fan.
inline MinkowskiWeight unit_weight(const FanPtr& f) {
    if (!fan_is_complete(*f)) throw Error(ErrorCode::NotComplete, "unit_weight needs a complete fan");
    MinkowskiWeight c(f, 0);
    for (auto m : f->maximal_cones()) c.set(m, 1);
    return c;
}

/// Weight `value` on every maximal cone, regarded as a codim-0 weight.
inline MinkowskiWeight constant_weight(const FanPtr& f, const Integer& value) {
    MinkowskiWeight c(f, 0);
    for (auto m : f->cones_of_dim(f->ambient_dim())) c.set(m, value);
    return c;
}

/// Face-closed list of cones in the support of c.
inline std::vector<std::size_t> support_cones(const MinkowskiWeight& c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.fan().size(); ++i)
        for (const auto& [s, w] : c.entries())
            if (c.fan().is_face(i, s)) {
                out.push_back(i);
                break;
            }
    return out;
}

// --- fan displacement rule ---------------------------------------------------

/// Lattice basis of N_sigma = span(sigma) ∩ Z^n for each cone of a fan, on demand.
class SpanLatticeCache {
public:
    explicit SpanLatticeCache(const Fan& f) : f_(f) {}
    const std::vector<IntVector>& operator()(std::size_t i) {
        auto it = cache_.find(i);
        if (it != cache_.end()) return it->second;
        return cache_[i] = span_lattice_basis(f_.cone(i));
    }

private:
    const Fan& f_;
    std::map<std::size_t, std::vector<IntVector>> cache_;
};

inline Integer displacement_multiplicity(const std::vector<IntVector>& n1, const std::vector<IntVector>& n2,
                                         std::size_t n) {
    std::vector<IntVector> g = n1;
    g.insert(g.end(), n2.begin(), n2.end());
    auto idx = lattice_index(g, n);
    return idx ? *idx : Integer(0);
}

enum class PairStatus { Disjoint, Transverse, Degenerate };

struct PairCertificate {
    std::size_t sigma1;
    std::size_t sigma2;
    PairStatus status;
};

struct GenericVector {
    IntVector v;
    std::vector<PairCertificate> certificate;
};

/// Status of a displacement v for the pair (s1, s2): Disjoint if s1 ∩ (s2 + v)
/// is empty, Transverse if v lies in the interior of the full-dimensional
/// cone s1 - s2, Degenerate otherwise.
inline PairStatus displacement_status(const Cone& difference, const IntVector& v) {
    if (!difference.contains(v)) return PairStatus::Disjoint;
    if (difference.dim() == v.size() && difference.relint_contains(v)) return PairStatus::Transverse;
    return PairStatus::Degenerate;
}

/// Cone pairs (s1 ⊇ gamma, s2 ⊇ gamma) of dimensions d1, d2 with nonzero weights.
struct DisplacementProblem {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<Cone> differences;
};

inline DisplacementProblem displacement_problem(const Fan& f, const std::vector<std::size_t>& s1,
                                                const std::vector<std::size_t>& s2) {
    DisplacementProblem p;
    for (auto a : s1)
        for (auto b : s2) {
            p.pairs.emplace_back(a, b);
            p.differences.push_back(cone_difference(f.cone(a), f.cone(b)));
        }
    return p;
}

inline bool certify(const DisplacementProblem& p, const IntVector& v, std::vector<PairCertificate>* cert) {
    if (!p.pairs.empty() && tropical::is_zero(v)) return false;
    if (cert) cert->clear();
    for (std::size_t i = 0; i < p.pairs.size(); ++i) {
        auto st = displacement_status(p.differences[i], v);
        if (st == PairStatus::Degenerate) return false;
        if (cert) cert->push_back({p.pairs[i].first, p.pairs[i].second, st});
    }
    return true;
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
    return std::mt19937_64(seq);
}

/// Deterministic sampling of integer vectors with growing coordinate bound
/// until every pair is Disjoint or Transverse.
inline GenericVector pick_generic_vector(const DisplacementProblem& p, std::size_t n, std::uint64_t seed,
                                         std::uint64_t salt) {
    auto rng = seeded_rng(seed, salt);
    GenericVector g;
    long bound = 2;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 0 && attempt % 16 == 0) bound *= 2;
        std::uniform_int_distribution<long> dist(-bound, bound);
        IntVector v(n);
        for (auto& x : v) x = dist(rng);
        if (p.pairs.empty() || certify(p, v, &g.certificate)) {
            g.v = std::move(v);
            if (p.pairs.empty()) g.certificate.clear();
            return g;
        }
    }
}

inline std::vector<std::size_t> weighted_cones_containing(const MinkowskiWeight& c, std::size_t gamma) {
    std::vector<std::size_t> out;
    for (const auto& [s, w] : c.entries())
        if (c.fan().is_face(gamma, s)) out.push_back(s);
    return out;
}

/// Generic vector for the pairs of weighted cones of c1 and c2 through gamma.
inline GenericVector pick_generic_vector(const MinkowskiWeight& c1, const MinkowskiWeight& c2, std::size_t gamma,
                                         std::uint64_t seed) {
    auto p = displacement_problem(c1.fan(), weighted_cones_containing(c1, gamma), weighted_cones_containing(c2, gamma));
    return pick_generic_vector(p, c1.fan().ambient_dim(), seed, gamma);
}

/// Recheck a certificate against its vector.
inline bool verify_generic(const Fan& f, const GenericVector& g) {
    if (!g.certificate.empty() && tropical::is_zero(g.v)) return false;
    for (const auto& c : g.certificate) {
        auto st = displacement_status(cone_difference(f.cone(c.sigma1), f.cone(c.sigma2)), g.v);
        if (st != c.status || st == PairStatus::Degenerate) return false;
    }
    return true;
}

struct CupTrace {
    std::map<std::size_t, GenericVector> vectors; // per gamma
};

/// Cup product by the fan displacement rule, with a fresh generic vector per gamma.
inline MinkowskiWeight cup(const MinkowskiWeight& c1, const MinkowskiWeight& c2, std::uint64_t seed = 0,
                           CupTrace* trace = nullptr) {
    if (!(c1.fan_ptr() == c2.fan_ptr() || c1.fan() == c2.fan()))
        throw Error(ErrorCode::InvalidArgument, "cup: weights live on different fans");
    const Fan& f = c1.fan();
    if (!fan_is_complete(f)) throw Error(ErrorCode::NotComplete, "cup needs a complete fan");
    require_balanced(c1, "cup");
    require_balanced(c2, "cup");
    const std::size_t n = f.ambient_dim();
    const std::size_t k = c1.codim() + c2.codim();
    MinkowskiWeight out(c1.fan_ptr(), k);
    if (k > n) return out;
    SpanLatticeCache lat(f);
    for (auto gamma : f.cones_of_codim(k)) {
        auto s1 = weighted_cones_containing(c1, gamma);
        auto s2 = weighted_cones_containing(c2, gamma);
        if (s1.empty() || s2.empty()) continue;
        auto p = displacement_problem(f, s1, s2);
        auto g = pick_generic_vector(p, n, seed, gamma);
        Integer total = 0;
        for (const auto& pc : g.certificate) {
            if (pc.status != PairStatus::Transverse) continue;
            total += displacement_multiplicity(lat(pc.sigma1), lat(pc.sigma2), n) * c1(pc.sigma1) * c2(pc.sigma2);
        }
        out.set(gamma, total);
        if (trace) trace->vectors[gamma] = std::move(g);
    }
    return out;
}

inline Integer degree(const MinkowskiWeight& c) {
    if (c.codim() != c.fan().ambient_dim())
        throw Error(ErrorCode::WrongCodimension, "degree needs a weight of codimension n");
    Integer d = 0;
    for (const auto& [s, w] : c.entries()) d += w;
    return d;
}

/// (c1 x c2)(s1 x s2) = c1(s1) c2(s2) on the product fan.
inline MinkowskiWeight cross(const MinkowskiWeight& c1, const MinkowskiWeight& c2, FanPtr product = nullptr) {
    if (!product) product = share(product_fan(c1.fan(), c2.fan()));
    MinkowskiWeight out(product, c1.codim() + c2.codim());
    for (const auto& [a, wa] : c1.entries())
        for (const auto& [b, wb] : c2.entries())
            out.set(product->index_of(cone_product(c1.fan().cone(a), c2.fan().cone(b))), wa * wb);
    return out;
}

/// Transfer c to a refinement: each codim-k cone inherits the weight of the
/// smallest coarse cone containing it when that cone also has codim k.
inline MinkowskiWeight refine_weight(const MinkowskiWeight& c, const FanPtr& fine) {
    const Fan& coarse = c.fan();
    require_same_size(coarse.ambient_dim(), fine->ambient_dim(), "refine_weight");
    MinkowskiWeight out(fine, c.codim());
    for (auto m : fine->maximal_cones()) coarse_cone_of(coarse, *fine, m);
    for (auto i : fine->cones_of_codim(c.codim())) {
        auto j = coarse_cone_of(coarse, *fine, i);
        if (coarse.cone(j).dim() == fine->cone(i).dim()) out.set(i, c(j));
    }
    return out;
}

/// Index of h(N_sigma) in its saturation.
inline Integer image_lattice_index(const IntMatrix& h, const std::vector<IntVector>& basis) {
    std::vector<IntVector> img;
    for (const auto& b : basis) img.push_back(h.apply(b));
    return saturation_index(img, h.rows());
}

inline Cone image_cone(const IntMatrix& h, const Cone& c) {
    std::vector<IntVector> g, lin;
    for (const auto& r : c.rays()) g.push_back(h.apply(r));
    for (const auto& l : c.lineality()) lin.push_back(h.apply(l));
    return Cone::from_rays(h.rows(), g, lin);
}

/// Point in the relative interior of `target` avoiding the relative boundary of
/// every cone in `obstacles` of the same dimension.
inline IntVector generic_interior_point(const Cone& target, const std::vector<const Cone*>& obstacles,
                                        std::uint64_t salt) {
    auto rng = seeded_rng(0x9e3779b97f4a7c15ULL, salt);
    long bound = 4;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 0 && attempt % 16 == 0) bound *= 2;
        std::uniform_int_distribution<long> pos(1, bound), any(-bound, bound);
        IntVector p = zero_vector(target.ambient_dim());
        for (const auto& r : target.rays()) p = p + Integer(pos(rng)) * r;
        for (const auto& l : target.lineality()) p = p + Integer(any(rng)) * l;
        bool ok = target.relint_contains(p);
        for (auto* o : obstacles) {
            if (!ok) break;
            if (o->contains(p) && !o->relint_contains(p)) ok = false;
        }
        if (ok) return p;
    }
}

/// h_*(c) onto the target fan, counting source cones whose image covers a
/// generic point of each target cone with the lattice index as multiplicity.
inline MinkowskiWeight pushforward_weight(const IntMatrix& h, const MinkowskiWeight& c, const FanPtr& target) {
    const Fan& f = c.fan();
    require_same_size(h.cols(), f.ambient_dim(), "pushforward_weight");
    require_same_size(h.rows(), target->ambient_dim(), "pushforward_weight");
    const std::size_t d = c.dim();
    if (d > target->ambient_dim()) throw Error(ErrorCode::ImageNotSupported, "weighted cones too large for target");
    MinkowskiWeight out(target, target->ambient_dim() - d);
    struct Image {
        std::size_t target_cone;
        Cone cone;
        Integer weight;
    };
    std::vector<Image> images;
    for (const auto& [s, w] : c.entries()) {
        Cone img = image_cone(h, f.cone(s));
        if (img.dim() < d) continue;
        auto loc = target->locate(img.relative_interior_point());
        if (!loc || target->cone(*loc).dim() != d || !target->cone(*loc).contains(img))
            throw Error(ErrorCode::ImageNotSupported, "image of " + Fan::describe(f.cone(s)) + " is not in a " +
                                                          std::to_string(d) + "-dimensional target cone");
        Integer idx = image_lattice_index(h, span_lattice_basis(f.cone(s)));
        images.push_back({*loc, std::move(img), w * idx});
    }
    std::map<std::size_t, std::vector<const Image*>> by_target;
    for (const auto& im : images) by_target[im.target_cone].push_back(&im);
    for (const auto& [t, list] : by_target) {
        std::vector<const Cone*> obstacles;
        for (auto* im : list) obstacles.push_back(&im->cone);
        IntVector p = generic_interior_point(target->cone(t), obstacles, t);
        Integer total = 0;
        for (auto* im : list)
            if (im->cone.contains(p)) total += im->weight;
        out.set(t, total);
    }
    return out;
}

// --- random balanced weights --------------------------------------------------

/// Lattice basis of the balanced codim-k weights on f (the kernel of the
/// balancing system), indexed by cones_of_codim(k).
inline std::vector<IntVector> balanced_weight_basis(const Fan& f, std::size_t k) {
    auto sigmas = f.cones_of_codim(k);
    std::map<std::size_t, std::size_t> col;
    for (std::size_t i = 0; i < sigmas.size(); ++i) col[sigmas[i]] = i;
    std::vector<IntVector> rows;
    for (auto t : f.cones_of_codim(k + 1)) {
        const Cone& tau = f.cone(t);
        QuotientMap q(tau.span_generators(), f.ambient_dim());
        std::vector<IntVector> block(q.quotient_dim(), zero_vector(sigmas.size()));
        for (auto s : f.cofacets(t)) {
            auto v = quotient_primitive_generator(f.cone(s), tau, q).image;
            for (std::size_t r = 0; r < v.size(); ++r) block[r][col.at(s)] = v[r];
        }
        rows.insert(rows.end(), block.begin(), block.end());
    }
    return integer_kernel(IntMatrix::from_rows(rows, sigmas.size()));
}

inline MinkowskiWeight random_balanced_weight(const FanPtr& f, std::size_t k, std::mt19937_64& rng, long range = 3) {
    auto sigmas = f->cones_of_codim(k);
    auto basis = balanced_weight_basis(*f, k);
    std::uniform_int_distribution<long> dist(-range, range);
    IntVector w = zero_vector(sigmas.size());
    for (const auto& b : basis) w = w + Integer(dist(rng)) * b;
    MinkowskiWeight c(f, k);
    for (std::size_t i = 0; i < sigmas.size(); ++i) c.set(sigmas[i], w[i]);
    return c;
}

} // namespace tropical
