#pragma once

#include "fthresh/cone.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

namespace fthresh {

// A monomial ideal of the semigroup ring k[sigma_dual cap M], identified
// with its minimal set of exponent vectors. The unit ideal is represented
// by the single generator 0.
struct MonomialIdeal {
    DualPairPtr ctx;
    std::vector<IVector> generators;

    bool is_unit() const { return generators.size() == 1 && is_zero(generators[0]); }
    bool is_proper() const { return !is_unit(); }
};

namespace detail {

// Keeps g only if no other kept g' has g - g' in sigma_dual. Processing by
// increasing interior grading makes a single pass sound: a dominating
// generator always has strictly smaller grade.
inline std::vector<IVector> minimalize_generators(const DualPair& dp,
                                                  std::vector<IVector> gens) {
    IVector grading(dp.sigma.dim, Int(0));
    for (const auto& v : dp.sigma.rays) grading = add(grading, v);
    std::vector<std::pair<Int, IVector>> graded;
    graded.reserve(gens.size());
    for (auto& g : gens) graded.emplace_back(dot(g, grading), std::move(g));
    std::sort(graded.begin(), graded.end());
    graded.erase(std::unique(graded.begin(), graded.end()), graded.end());

    std::vector<IVector> kept;
    for (auto& [grade, g] : graded) {
        bool dominated = false;
        for (const auto& k : kept) {
            if (cone_contains(dp.sigma_dual, sub(g, k))) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(std::move(g));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace detail

inline MonomialIdeal make_ideal(DualPairPtr ctx, std::vector<IVector> exponents) {
    if (!ctx) throw Error("make_ideal: null cone context");
    if (exponents.empty()) throw Error("make_ideal: empty generator list");
    for (const auto& e : exponents) {
        detail::check_same_size(e.size(), ctx->sigma_dual.dim, "make_ideal");
        if (!cone_contains(ctx->sigma_dual, e)) {
            std::string msg = "NotInSemigroup: exponent (";
            for (std::size_t i = 0; i < e.size(); ++i) msg += (i ? "," : "") + e[i].str();
            throw Error(msg + ") lies outside the dual cone");
        }
    }
    MonomialIdeal ideal;
    ideal.generators = detail::minimalize_generators(*ctx, std::move(exponents));
    ideal.ctx = std::move(ctx);
    return ideal;
}

inline MonomialIdeal unit_ideal(DualPairPtr ctx) {
    if (!ctx) throw Error("unit_ideal: null cone context");
    const std::size_t dim = ctx->sigma_dual.dim;
    return make_ideal(std::move(ctx), {IVector(dim, Int(0))});
}

inline bool ideal_contains(const MonomialIdeal& ideal, const IVector& u) {
    for (const auto& g : ideal.generators)
        if (cone_contains(ideal.ctx->sigma_dual, sub(u, g))) return true;
    return false;
}

// Frobenius power I^[q]: generators scaled by q. q = 1 is allowed as the
// identity (handy in tests).
inline MonomialIdeal frobenius_power(const MonomialIdeal& ideal, const Int& q) {
    if (q < 1) throw Error("frobenius_power: q must be a positive prime power");
    MonomialIdeal out;
    out.ctx = ideal.ctx;
    for (const auto& g : ideal.generators) out.generators.push_back(scale(g, q));
    return out;  // scaling preserves minimality
}

// Membership of a rational point in Q(I) = union of g + sigma_dual over
// generators g; generators suffice since translates of deeper monomials
// are contained in translates of the generators.
inline bool q_region_contains(const MonomialIdeal& ideal, const QVector& u) {
    for (const auto& g : ideal.generators)
        if (cone_contains(ideal.ctx->sigma_dual, sub(u, g))) return true;
    return false;
}

struct NewtonFacet {
    IVector normal;   // primitive, lies in sigma
    Rational offset;  // nonnegative for proper ideals
};

// H-representation of the Newton polyhedron P(I) = conv(generators) + sigma_dual.
struct NewtonPolyhedron {
    DualPairPtr ctx;
    std::vector<NewtonFacet> facets;
};

// Lift generators g to (g,1) and the dual-cone rays r to (r,0); the facets
// of P(I) are the extreme rays (v,mu) of the dual of that lifted cone,
// read as <u,v> >= -mu on the height-one slice.
inline NewtonPolyhedron newton_polyhedron(const MonomialIdeal& ideal) {
    if (ideal.is_unit()) throw Error("newton_polyhedron: ideal must be proper");
    const std::size_t dim = ideal.ctx->sigma_dual.dim;
    std::vector<IVector> lifted;
    for (const auto& g : ideal.generators) {
        IVector l = g;
        l.push_back(1);
        lifted.push_back(std::move(l));
    }
    for (const auto& r : ideal.ctx->sigma_dual.rays) {
        IVector l = r;
        l.push_back(0);
        lifted.push_back(std::move(l));
    }

    NewtonPolyhedron np;
    np.ctx = ideal.ctx;
    for (const auto& ray : detail::extreme_rays_of_intersection(lifted, dim + 1)) {
        IVector v(ray.begin(), ray.end() - 1);
        if (is_zero(v)) continue;  // the height >= 0 facet, no trace on the slice
        Int g = 0;
        for (const Int& x : v) g = gcd(g, x);
        for (Int& x : v) x /= g;
        np.facets.push_back({std::move(v), make_rational(-ray.back(), g)});
    }
    std::sort(np.facets.begin(), np.facets.end(),
              [](const NewtonFacet& a, const NewtonFacet& b) { return a.normal < b.normal; });
    return np;
}

inline MonomialIdeal maximal_monomial_ideal(DualPairPtr ctx) {
    if (!ctx) throw Error("maximal_monomial_ideal: null cone context");
    std::vector<IVector> gens = hilbert_basis(*ctx);
    return make_ideal(std::move(ctx), std::move(gens));
}

// True iff every extreme ray of sigma_dual eventually enters Q(I): some
// positive multiple lambda*u of the ray dominates a generator g, which is
// feasible iff <g, v> = 0 for every facet normal v tight on the ray.
inline bool is_m_primary(const MonomialIdeal& ideal) {
    if (ideal.is_unit()) throw Error("is_m_primary: ideal must be proper");
    const auto& normals = ideal.ctx->sigma_dual.facet_normals;
    for (const auto& ray : ideal.ctx->sigma_dual.rays) {
        std::vector<std::size_t> tight;
        for (std::size_t j = 0; j < normals.size(); ++j)
            if (dot(ray, normals[j]) == 0) tight.push_back(j);
        bool enters = false;
        for (const auto& g : ideal.generators) {
            bool ok = true;
            for (std::size_t j : tight) {
                if (dot(g, normals[j]) > 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                enters = true;
                break;
            }
        }
        if (!enters) return false;
    }
    return true;
}

inline MonomialIdeal ideal_power(const MonomialIdeal& ideal, unsigned r) {
    if (r == 0) return unit_ideal(ideal.ctx);
    const auto& gens = ideal.generators;
    std::vector<IVector> sums;
    IVector current(ideal.ctx->sigma_dual.dim, Int(0));
    // sums of exactly r generators with repetition
    auto rec = [&](auto&& self, std::size_t from, unsigned left) -> void {
        if (left == 0) {
            sums.push_back(current);
            return;
        }
        for (std::size_t i = from; i < gens.size(); ++i) {
            current = add(current, gens[i]);
            self(self, i, left - 1);
            current = sub(current, gens[i]);
        }
    };
    rec(rec, 0, r);
    return make_ideal(ideal.ctx, std::move(sums));
}

}  // namespace fthresh
