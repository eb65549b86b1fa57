#pragma once

#include "tropical/minkowski_weight.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropical {

/// Integral piecewise-linear function on a fan: one covector per cone, with
/// covectors of neighbouring cones agreeing on their common face.
class PiecewiseLinearFunction {
public:
    PiecewiseLinearFunction() = default;

    /// Covectors on some cones (typically the maximal ones); faces inherit them.
    static PiecewiseLinearFunction from_covectors(FanPtr fan, const std::map<std::size_t, IntVector>& covectors) {
        PiecewiseLinearFunction f;
        f.fan_ = std::move(fan);
        const Fan& F = *f.fan_;
        for (const auto& [c, m] : covectors) {
            require_same_size(m.size(), F.ambient_dim(), "PiecewiseLinearFunction");
            for (std::size_t i = 0; i < F.size(); ++i) {
                if (!F.is_face(i, c)) continue;
                auto it = f.m_.find(i);
                if (it == f.m_.end()) {
                    f.m_[i] = m;
                    continue;
                }
                IntVector diff = it->second - m;
                for (const auto& g : F.cone(i).span_generators())
                    if (dot(diff, g) != 0)
                        throw Error(ErrorCode::ContinuityViolation,
                                    "covectors disagree on " + Fan::describe(F.cone(i)));
            }
        }
        return f;
    }

    /// Values at the primitive generators of the rays of a simplicial fan,
    /// extended linearly on every cone in `cones` (all maximal cones if empty).
    static PiecewiseLinearFunction from_ray_values(FanPtr fan, const std::vector<Integer>& ray_values,
                                                   std::vector<std::size_t> cones = {}) {
        const Fan& F = *fan;
        if (ray_values.size() != F.rays().size())
            throw Error(ErrorCode::DimensionMismatch, "one value per ray expected");
        if (cones.empty()) cones = F.maximal_cones();
        std::map<std::size_t, IntVector> cov;
        for (auto c : cones) {
            std::vector<IntVector> rows;
            IntVector rhs;
            for (auto r : F.cone_rays(c)) {
                rows.push_back(F.rays()[r]);
                rhs.push_back(ray_values[r]);
            }
            for (const auto& l : F.lineality()) {
                rows.push_back(l);
                rhs.push_back(0);
            }
            if (rows.empty()) {
                cov[c] = zero_vector(F.ambient_dim());
                continue;
            }
            if (rank_of(rows, F.ambient_dim()) != rows.size())
                throw Error(ErrorCode::InvalidArgument, "ray values need simplicial cones: " + Fan::describe(F.cone(c)));
            auto m = solve_integer(IntMatrix::from_rows(rows, F.ambient_dim()), rhs);
            if (!m) throw Error(ErrorCode::NonIntegral, "no integral covector on " + Fan::describe(F.cone(c)));
            cov[c] = *m;
        }
        return from_covectors(std::move(fan), cov);
    }

    /// f(x) = min_i <l_i, x>; requires one l_i to be minimal on each maximal cone.
    static PiecewiseLinearFunction min_of_linear(FanPtr fan, const std::vector<IntVector>& forms) {
        const Fan& F = *fan;
        std::map<std::size_t, IntVector> cov;
        for (auto c : F.maximal_cones()) {
            const Cone& cone = F.cone(c);
            std::optional<std::size_t> best;
            for (std::size_t i = 0; i < forms.size() && !best; ++i) {
                bool minimal = true;
                for (std::size_t j = 0; j < forms.size() && minimal; ++j) {
                    IntVector d = forms[j] - forms[i];
                    for (const auto& r : cone.rays())
                        if (dot(d, r) < 0) minimal = false;
                    for (const auto& l : cone.lineality())
                        if (dot(d, l) != 0) minimal = false;
                }
                if (minimal) best = i;
            }
            if (!best)
                throw Error(ErrorCode::NotPiecewiseLinear, "minimum is not linear on " + Fan::describe(cone));
            cov[c] = forms[*best];
        }
        return from_covectors(std::move(fan), cov);
    }

    static PiecewiseLinearFunction linear(FanPtr fan, const IntVector& m) {
        std::map<std::size_t, IntVector> cov;
        for (auto c : fan->maximal_cones()) cov[c] = m;
        return from_covectors(std::move(fan), cov);
    }

    const Fan& fan() const { return *fan_; }
    const FanPtr& fan_ptr() const { return fan_; }
    bool defined_on(std::size_t cone) const { return m_.count(cone) != 0; }

    const IntVector& covector(std::size_t cone) const {
        auto it = m_.find(cone);
        if (it == m_.end()) throw Error(ErrorCode::NotPiecewiseLinear, "function undefined on " + Fan::describe(fan_->cone(cone)));
        return it->second;
    }

    /// f on cone i, evaluated at x (x should lie in span of cone i for the
    /// value to be intrinsic).
    Integer on(std::size_t cone, const IntVector& x) const { return dot(covector(cone), x); }

    Integer operator()(const IntVector& x) const {
        auto c = fan_->locate(x);
        if (!c) throw Error(ErrorCode::InvalidArgument, "point outside the domain");
        return on(*c, x);
    }

    PiecewiseLinearFunction operator-() const {
        PiecewiseLinearFunction r = *this;
        for (auto& [c, m] : r.m_) m = -m;
        return r;
    }
    friend PiecewiseLinearFunction operator+(const PiecewiseLinearFunction& a, const PiecewiseLinearFunction& b) {
        PiecewiseLinearFunction r = a;
        for (auto it = r.m_.begin(); it != r.m_.end();) {
            auto jt = b.m_.find(it->first);
            if (jt == b.m_.end()) {
                it = r.m_.erase(it);
            } else {
                it->second = it->second + jt->second;
                ++it;
            }
        }
        return r;
    }

private:
    FanPtr fan_;
    std::map<std::size_t, IntVector> m_;
};

/// A weight together with a function defined on its support.
struct MixedMinkowskiWeight {
    MinkowskiWeight weight;
    PiecewiseLinearFunction function;
};

inline MixedMinkowskiWeight make_mixed(const MinkowskiWeight& c, const PiecewiseLinearFunction& f) {
    if (!(c.fan_ptr() == f.fan_ptr() || c.fan() == f.fan()))
        throw Error(ErrorCode::InvalidArgument, "function and weight live on different fans");
    for (auto s : support_cones(c))
        if (!f.defined_on(s))
            throw Error(ErrorCode::NotPiecewiseLinear, "function undefined on support cone " + Fan::describe(c.fan().cone(s)));
    return {c, f};
}

/// Lifts w_sigma of the primitive generators v_{sigma/tau} for the weighted
/// cofacets of tau. Exposed so tests can perturb them.
inline std::map<std::size_t, IntVector> divisor_lifts(const MinkowskiWeight& c, std::size_t tau) {
    const Fan& F = c.fan();
    QuotientMap q(F.cone(tau).span_generators(), F.ambient_dim());
    std::map<std::size_t, IntVector> lifts;
    for (auto s : F.cofacets(tau))
        if (c(s) != 0) lifts[s] = quotient_primitive_generator(F.cone(s), F.cone(tau), q).lift;
    return lifts;
}

/// divisor(c,f)(tau) = sum c(s) f_s(w_s) - f_tau(sum c(s) w_s) for given lifts.
inline Integer divisor_value(const MinkowskiWeight& c, const PiecewiseLinearFunction& f, std::size_t tau,
                             const std::map<std::size_t, IntVector>& lifts) {
    Integer total = 0;
    IntVector sum = zero_vector(c.fan().ambient_dim());
    for (const auto& [s, w] : lifts) {
        total += c(s) * f.on(s, w);
        sum = sum + c(s) * w;
    }
    return total - f.on(tau, sum);
}

/// Weil divisor of f on c, Allermann-Rau sign convention.
inline MinkowskiWeight divisor(const MinkowskiWeight& c, const PiecewiseLinearFunction& f) {
    make_mixed(c, f);
    const Fan& F = c.fan();
    MinkowskiWeight out(c.fan_ptr(), c.codim() + 1);
    std::map<std::size_t, bool> taus;
    for (const auto& [s, w] : c.entries())
        for (auto t : F.facets(s)) taus[t] = true;
    for (const auto& [t, unused] : taus) out.set(t, divisor_value(c, f, t, divisor_lifts(c, t)));
    return out;
}

/// The kappa map: kappa(c,f) = -divisor(c,f).
inline MinkowskiWeight kappa(const MinkowskiWeight& c, const PiecewiseLinearFunction& f) { return -divisor(c, f); }

enum class Convention { Kappa, AllermannRau };

inline MinkowskiWeight apply_function(const MinkowskiWeight& c, const PiecewiseLinearFunction& f, Convention conv) {
    return conv == Convention::Kappa ? kappa(c, f) : divisor(c, f);
}

inline MinkowskiWeight iterated_kappa(MinkowskiWeight c, const std::vector<PiecewiseLinearFunction>& fs) {
    for (const auto& f : fs) c = kappa(c, f);
    return c;
}

inline MinkowskiWeight iterated_divisor(MinkowskiWeight c, const std::vector<PiecewiseLinearFunction>& fs) {
    for (const auto& f : fs) c = divisor(c, f);
    return c;
}

inline MinkowskiWeight weil_divisor_of_function(const PiecewiseLinearFunction& f) {
    return kappa(unit_weight(f.fan_ptr()), f);
}

// --- Allermann-Rau product on fans ------------------------------------------

/// chi_i = min(0, y_i - x_i) on R^n x R^n.
inline IntVector diagonal_form(std::size_t n, std::size_t i) {
    IntVector a = zero_vector(2 * n);
    a[i] = -1;
    a[n + i] = 1;
    return a;
}

inline IntMatrix first_projection(std::size_t n) {
    IntMatrix p(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) p(i, i) = 1;
    return p;
}

/// Fan-level data shared by all products of weights on (f1, f2).
struct ArContext {
    FanPtr f1, f2;
    FanPtr product;  // f1 x f2
    FanPtr refined;  // product split by y_i = x_i
    FanPtr target;   // f1 when f1 == f2, else the common refinement
    std::vector<PiecewiseLinearFunction> chi;
};

inline ArContext make_ar_context(const FanPtr& f1, const FanPtr& f2) {
    require_same_size(f1->ambient_dim(), f2->ambient_dim(), "ar_product_fans");
    const std::size_t n = f1->ambient_dim();
    ArContext ctx;
    ctx.f1 = f1;
    ctx.f2 = f2;
    ctx.product = share(product_fan(*f1, *f2));
    std::vector<IntVector> normals;
    for (std::size_t i = 0; i < n; ++i) normals.push_back(diagonal_form(n, i));
    ctx.refined = share(refine_by_hyperplanes(*ctx.product, normals));
    ctx.target = (f1 == f2 || *f1 == *f2) ? f1 : share(common_refinement(*f1, *f2));
    for (std::size_t i = 0; i < n; ++i)
        ctx.chi.push_back(PiecewiseLinearFunction::min_of_linear(ctx.refined, {zero_vector(2 * n), diagonal_form(n, i)}));
    return ctx;
}

struct ArTrace {
    MinkowskiWeight product;               // c1 x c2 on the refined fan
    std::vector<MinkowskiWeight> steps;    // after each kappa(., chi_i)
};

inline MinkowskiWeight ar_product_fans(const MinkowskiWeight& c1, const MinkowskiWeight& c2, const ArContext& ctx,
                                       ArTrace* trace = nullptr) {
    require_balanced(c1, "ar_product_fans");
    require_balanced(c2, "ar_product_fans");
    const std::size_t n = ctx.f1->ambient_dim();
    MinkowskiWeight w = refine_weight(cross(c1, c2, ctx.product), ctx.refined);
    if (trace) trace->product = w;
    for (const auto& chi : ctx.chi) {
        w = kappa(w, chi);
        if (trace) trace->steps.push_back(w);
    }
    return pushforward_weight(first_projection(n), w, ctx.target);
}

inline MinkowskiWeight ar_product_fans(const MinkowskiWeight& c1, const MinkowskiWeight& c2, ArTrace* trace = nullptr) {
    return ar_product_fans(c1, c2, make_ar_context(c1.fan_ptr(), c2.fan_ptr()), trace);
}

} // namespace tropical
