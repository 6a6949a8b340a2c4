#pragma once

#include "fthresh/simplex.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <utility>

namespace fthresh {

// A strongly convex full-dimensional rational cone, carried in both
// representations. rays and facet_normals are primitive integer vectors;
// for a dual pair (sigma, sigma_dual) the facet normals of one cone are
// exactly the extreme rays of the other.
struct Cone {
    std::size_t dim{0};
    std::vector<IVector> rays;
    std::vector<IVector> facet_normals;
};

namespace detail {

inline IVector primitive_from_q(const QVector& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, denominator(x));
    IVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(numerator(x) * (l / denominator(x)));
    return primitive_vector(std::move(out));
}

// Extreme rays of { u : <u,h> >= 0 for all h }, by incremental double
// description. Callers guarantee the result is pointed and
// full-dimensional; intermediate cones are then pointed as well, so a ray
// is extreme iff its tight constraints have rank dim-1.
inline std::vector<IVector> extreme_rays_of_intersection(const std::vector<IVector>& halfspaces,
                                                         std::size_t dim) {
    std::vector<std::size_t> indep;
    QMatrix rows;
    for (std::size_t i = 0; i < halfspaces.size() && indep.size() < dim; ++i) {
        rows.push_back(to_q(halfspaces[i]));
        if (rank_of(rows) == static_cast<int>(rows.size()))
            indep.push_back(i);
        else
            rows.pop_back();
    }
    if (indep.size() < dim)
        throw Error("DegenerateCone: half-space normals do not span the ambient space");

    // Initial simplicial cone from the independent subset: ray k solves
    // <r_k, h_{indep[j]}> = delta_jk.
    std::vector<IVector> rays;
    for (std::size_t k = 0; k < dim; ++k) {
        QVector rhs(dim, Rational(0));
        rhs[k] = 1;
        const LinearSolve sol = solve_linear(rows, rhs);
        if (sol.kind != LinearSolve::Kind::Unique)
            throw Error("DegenerateCone: initial simplex is singular");
        rays.push_back(primitive_from_q(sol.point));
    }

    std::vector<std::size_t> processed = indep;
    for (std::size_t i = 0; i < halfspaces.size(); ++i) {
        if (std::find(indep.begin(), indep.end(), i) != indep.end()) continue;
        const IVector& h = halfspaces[i];
        std::vector<Int> side(rays.size());
        bool any_neg = false;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            side[r] = dot(rays[r], h);
            if (side[r] < 0) any_neg = true;
        }
        processed.push_back(i);
        if (!any_neg) continue;

        std::set<IVector> candidates;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (side[r] >= 0) candidates.insert(rays[r]);
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (side[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (side[q] >= 0) continue;
                IVector w = add(scale(rays[p], -side[q]), scale(rays[q], side[p]));
                if (!is_zero(w)) candidates.insert(primitive_vector(std::move(w)));
            }
        }

        rays.clear();
        for (const IVector& r : candidates) {
            std::vector<IVector> tight;
            for (std::size_t t : processed)
                if (dot(r, halfspaces[t]) == 0) tight.push_back(halfspaces[t]);
            if (rank_of(tight) == static_cast<int>(dim) - 1) rays.push_back(r);
        }
    }
    std::sort(rays.begin(), rays.end());
    return rays;
}

}  // namespace detail

struct DualPair;
using DualPairPtr = std::shared_ptr<const DualPair>;

struct DualPair {
    Cone sigma;       // in N
    Cone sigma_dual;  // in M
    std::vector<std::string> warnings;

    // Hilbert basis of sigma_dual cap M, computed on first request.
    mutable std::once_flag hb_once;
    mutable std::vector<IVector> hb;

    DualPair() = default;
    DualPair(const DualPair&) = delete;
    DualPair& operator=(const DualPair&) = delete;
};

inline bool cone_contains(const Cone& c, const QVector& u) {
    detail::check_same_size(u.size(), c.dim, "cone_contains");
    for (const auto& n : c.facet_normals)
        if (dot(u, n) < 0) return false;
    return true;
}

inline bool cone_contains(const Cone& c, const IVector& u) { return cone_contains(c, to_q(u)); }

// Valid interior test because all cones here are full-dimensional.
inline bool cone_contains_strict(const Cone& c, const QVector& u) {
    detail::check_same_size(u.size(), c.dim, "cone_contains_strict");
    for (const auto& n : c.facet_normals)
        if (dot(u, n) <= 0) return false;
    return true;
}

inline bool cone_contains_strict(const Cone& c, const IVector& u) {
    return cone_contains_strict(c, to_q(u));
}

inline bool is_simplicial(const Cone& c) { return c.rays.size() == c.dim; }

inline bool is_smooth(const Cone& c) {
    if (!is_simplicial(c)) return false;
    const Int d = det_int(c.rays);
    return d == 1 || d == -1;
}

inline DualPairPtr make_dual_pair(std::vector<IVector> rays) {
    if (rays.empty()) throw Error("DegenerateCone: no rays");
    const std::size_t dim = rays[0].size();
    std::vector<IVector> prim;
    for (auto& r : rays) {
        detail::check_same_size(r.size(), dim, "make_dual_pair");
        IVector p = primitive_vector(std::move(r));
        if (std::find(prim.begin(), prim.end(), p) == prim.end()) prim.push_back(std::move(p));
    }
    if (rank_of(prim) != static_cast<int>(dim))
        throw Error("DegenerateCone: rays do not span the ambient space");

    // Strong convexity: { u : <u,v> >= 1 for all rays v } is nonempty iff
    // the dual cone is full-dimensional.
    {
        LinearProgram lp;
        lp.objective.assign(dim, Rational(0));
        for (const auto& v : prim)
            lp.constraints.push_back({to_q(v), Rational(1), Sense::Ge});
        if (lp_solve(lp).kind == LPOutcome::Kind::Infeasible)
            throw Error("DegenerateCone: cone is not strongly convex");
    }

    auto dual_rays = detail::extreme_rays_of_intersection(prim, dim);
    if (rank_of(dual_rays) != static_cast<int>(dim))
        throw Error("DegenerateCone: dual cone is not full-dimensional");

    auto pair = std::make_shared<DualPair>();
    pair->sigma.dim = dim;
    pair->sigma_dual.dim = dim;
    pair->sigma_dual.rays = dual_rays;
    for (const auto& v : prim) {
        std::vector<IVector> tight;
        for (const auto& r : dual_rays)
            if (dot(r, v) == 0) tight.push_back(r);
        if (rank_of(tight) == static_cast<int>(dim) - 1) {
            pair->sigma.rays.push_back(v);
        } else {
            std::string w = "dropped non-extreme input ray (";
            for (std::size_t i = 0; i < v.size(); ++i)
                w += (i ? "," : "") + v[i].str();
            w += ")";
            pair->warnings.push_back(std::move(w));
        }
    }
    std::sort(pair->sigma.rays.begin(), pair->sigma.rays.end());
    pair->sigma.facet_normals = dual_rays;
    pair->sigma_dual.facet_normals = pair->sigma.rays;
    return pair;
}

inline Cone dual_cone(const std::vector<IVector>& rays) {
    return make_dual_pair(rays)->sigma_dual;
}

namespace detail {

// Hilbert basis candidates: every irreducible element of the semigroup
// lies in the zonotope of the primitive extreme rays (for any
// triangulation into simplicial subcones, the fundamental parallelepiped
// of each piece sits inside that zonotope). Enumerate its lattice points
// and discard the reducible ones.
inline std::vector<IVector> compute_hilbert_basis(const DualPair& dp) {
    const std::size_t dim = dp.sigma_dual.dim;
    const auto& gens = dp.sigma_dual.rays;
    IVector lo(dim, Int(0)), hi(dim, Int(0));
    for (const auto& g : gens) {
        for (std::size_t k = 0; k < dim; ++k) {
            if (g[k] < 0) lo[k] += g[k];
            if (g[k] > 0) hi[k] += g[k];
        }
    }

    // Positive grading on sigma_dual \ {0}: pair with the sum of the rays
    // of sigma, which is interior to sigma.
    IVector grading(dim, Int(0));
    for (const auto& v : dp.sigma.rays) grading = add(grading, v);

    std::vector<std::pair<Int, IVector>> candidates;
    IVector point = lo;
    for (;;) {
        if (!is_zero(point) && cone_contains(dp.sigma_dual, point))
            candidates.emplace_back(dot(point, grading), point);
        std::size_t k = 0;
        while (k < dim) {
            if (point[k] < hi[k]) {
                ++point[k];
                break;
            }
            point[k] = lo[k];
            ++k;
        }
        if (k == dim) break;
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<IVector> basis;
    for (const auto& graded : candidates) {
        const IVector& c = graded.second;
        bool reducible = false;
        for (const auto& b : basis) {
            if (cone_contains(dp.sigma_dual, sub(c, b))) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(c);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

}  // namespace detail

inline const std::vector<IVector>& hilbert_basis(const DualPair& dp) {
    std::call_once(dp.hb_once, [&dp] { dp.hb = detail::compute_hilbert_basis(dp); });
    return dp.hb;
}

struct GorensteinData {
    // Solution of <omega, v> = 1 over all rays v of sigma, when consistent.
    std::optional<QVector> omega;
    // Minimal positive r with r*omega integral; 0 when omega is absent.
    Int index{0};
    bool unique{true};
};

inline GorensteinData gorenstein_data(const DualPair& dp) {
    QMatrix rows;
    for (const auto& v : dp.sigma.rays) rows.push_back(to_q(v));
    const LinearSolve sol = solve_linear(rows, QVector(rows.size(), Rational(1)));
    if (sol.kind == LinearSolve::Kind::NoSolution) return {};
    GorensteinData gd;
    gd.omega = sol.point;
    gd.unique = sol.kind == LinearSolve::Kind::Unique;
    Int l = 1;
    for (const auto& x : sol.point) l = lcm(l, denominator(x));
    gd.index = l;
    return gd;
}

}  // namespace fthresh
