#pragma once

#include "fthresh/monomial_ideal.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace fthresh {

// An exact rational invariant with a point of M_Q certifying attainment.
struct ThresholdValue {
    Rational value;
    QVector witness;
    enum class Method { Lp, Cells, Candidates } method{Method::Lp};
};

struct JumpingChain {
    std::vector<Rational> coefficients;   // c^1 < c^2 < ...
    std::vector<MonomialIdeal> ideals;    // tau(a^{c^i})
};

struct RegularityReport {
    bool smooth{false};
    Rational fpt_value;
    Rational fthreshold_value;
    bool equal{false};
};

struct EnumerationBoundExceeded : BudgetError {
    std::optional<MonomialIdeal> partial;
    explicit EnumerationBoundExceeded(std::optional<MonomialIdeal> p)
        : BudgetError("EnumerationBoundExceeded: test ideal generator search hit the box "
                      "expansion cap; result is partial"),
          partial(std::move(p)) {}
};

// lambda(u) = sup{ l >= 0 : u in l*P }. Since every facet normal lies in
// sigma, zero-offset facets hold automatically on sigma_dual and the sup
// is the minimum of <u,v>/offset over the positive-offset facets.
inline Rational lambda_value(const NewtonPolyhedron& np, const QVector& u) {
    if (!cone_contains(np.ctx->sigma_dual, u))
        throw Error("lambda_value: point lies outside the dual cone");
    std::optional<Rational> best;
    for (const auto& f : np.facets) {
        if (f.offset <= 0) continue;
        Rational ratio = dot(u, f.normal) / f.offset;
        if (!best || ratio < *best) best = std::move(ratio);
    }
    if (!best) throw Error("lambda_value: polyhedron has no positive-offset facet");
    return *best;
}

inline Rational lambda_value(const NewtonPolyhedron& np, const IVector& u) {
    return lambda_value(np, to_q(u));
}

namespace detail {

// Lexicographically smallest point of a (bounded, feasible) polyhedron,
// used to report a canonical witness when the optimal face is not a
// single vertex.
inline QVector lex_min_point(std::size_t dim, std::vector<Constraint> constraints) {
    QVector fixed(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        LinearProgram lp;
        lp.objective.assign(dim, Rational(0));
        lp.objective[k] = -1;
        lp.constraints = constraints;
        const LPOutcome out = lp_solve(lp);
        if (out.kind != LPOutcome::Kind::Optimal)
            throw Error("lex_min_point: witness polyhedron not bounded/feasible");
        fixed[k] = -out.value;
        Constraint fix;
        fix.normal.assign(dim, Rational(0));
        fix.normal[k] = 1;
        fix.offset = fixed[k];
        fix.sense = Sense::Eq;
        constraints.push_back(std::move(fix));
    }
    return fixed;
}

// max t subject to u in the region and <u + shift, v_l> >= t*offset_l for
// every positive-offset Newton facet; the reported point is the lex-min
// optimal u, a canonical representative of the optimal face.
inline std::pair<Rational, QVector> sup_lambda_over(const NewtonPolyhedron& np,
                                                    const std::vector<Constraint>& region,
                                                    std::size_t dim,
                                                    const QVector* shift = nullptr) {
    LinearProgram lp;
    lp.objective.assign(dim + 1, Rational(0));
    lp.objective[dim] = 1;
    for (const auto& c : region) {
        Constraint ext = c;
        ext.normal.push_back(Rational(0));
        lp.constraints.push_back(std::move(ext));
    }
    for (const auto& f : np.facets) {
        if (f.offset <= 0) continue;
        Constraint c;
        c.normal = to_q(f.normal);
        c.normal.push_back(-f.offset);
        c.offset = shift ? -dot(to_q(f.normal), *shift) : Rational(0);
        c.sense = Sense::Ge;
        lp.constraints.push_back(std::move(c));
    }
    const LPOutcome out = lp_solve(lp);
    if (out.kind != LPOutcome::Kind::Optimal)
        throw Error("sup_lambda_over: threshold LP is infeasible or unbounded");

    std::vector<Constraint> face = region;
    for (const auto& f : np.facets) {
        if (f.offset <= 0) continue;
        Rational off = out.value * f.offset;
        if (shift) off -= dot(to_q(f.normal), *shift);
        face.push_back({to_q(f.normal), std::move(off), Sense::Ge});
    }
    return {out.value, lex_min_point(dim, face)};
}

inline std::vector<Constraint> box_region(const DualPair& dp) {
    std::vector<Constraint> region;
    for (const auto& v : dp.sigma_dual.facet_normals) {
        region.push_back({to_q(v), Rational(0), Sense::Ge});
        region.push_back({to_q(v), Rational(1), Sense::Le});
    }
    return region;
}

inline ThresholdValue check_witness(ThresholdValue tv, const NewtonPolyhedron& np) {
    if (lambda_value(np, tv.witness) != tv.value)
        throw Error("internal: threshold witness does not re-evaluate to its value");
    return tv;
}

}  // namespace detail

// mu(u) = sup lambda(u + w) over w in sigma_dual with <w,v_j> <= 1 for
// every facet normal v_j; mu(0) is the F-pure threshold. The sup over the
// open region is attained on the closed box by continuity of lambda.
inline ThresholdValue mu_threshold(const MonomialIdeal& a, const IVector& u) {
    if (!cone_contains(a.ctx->sigma_dual, u))
        throw Error("mu_value: point lies outside the dual cone");
    const NewtonPolyhedron np = newton_polyhedron(a);
    const QVector shift = to_q(u);
    auto [value, omega] = detail::sup_lambda_over(np, detail::box_region(*a.ctx),
                                                  a.ctx->sigma_dual.dim, &shift);
    ThresholdValue tv{std::move(value), add(omega, u), ThresholdValue::Method::Lp};
    return detail::check_witness(std::move(tv), np);
}

inline Rational mu_value(const MonomialIdeal& a, const IVector& u) {
    return mu_threshold(a, u).value;
}

// F-pure threshold: sup of lambda over the part of sigma_dual pairing
// below 1 with every facet normal.
inline ThresholdValue fpt(const MonomialIdeal& a) {
    if (a.is_unit()) throw Error("fpt: ideal must be proper");
    return mu_threshold(a, IVector(a.ctx->sigma_dual.dim, Int(0)));
}

namespace detail {

// Cell decomposition of sigma_dual \ Q(J): a point avoids Q(J) iff for
// every generator b_i some facet normal v_j has <u,v_j> < <b_i,v_j>.
// Choice maps phi assigning a violated normal to each generator give
// convex cells; the sup of lambda over each strictly nonempty cell equals
// the max over its closure.
class CellSearch {
public:
    CellSearch(const MonomialIdeal& a, const MonomialIdeal& j)
        : np_(newton_polyhedron(a)),
          gens_(j.generators),
          normals_(j.ctx->sigma_dual.facet_normals),
          dim_(j.ctx->sigma_dual.dim) {}

    ThresholdValue run() {
        const QVector unbounded(normals_.size(), Rational(-1));
        recurse(0, unbounded);
        if (!best_)
            throw Error("internal: no nonempty cell found for a proper ideal");
        return detail::check_witness({best_->first, best_->second, ThresholdValue::Method::Cells},
                                     np_);
    }

private:
    bool strictly_nonempty(const QVector& bounds) {
        auto it = feasible_.find(bounds);
        if (it != feasible_.end()) return it->second;
        std::vector<HalfSpace> hs;
        for (const auto& v : normals_) hs.push_back({to_q(v), Rational(0), false});
        for (std::size_t j = 0; j < bounds.size(); ++j) {
            if (bounds[j] < 0) continue;
            QVector neg = to_q(normals_[j]);
            for (auto& x : neg) x = -x;
            hs.push_back({std::move(neg), -bounds[j], true});
        }
        const bool ok = lp_strict_interior(dim_, hs).has_value();
        feasible_.emplace(bounds, ok);
        return ok;
    }

    void evaluate(const QVector& bounds) {
        if (!evaluated_.insert(bounds).second) return;
        std::vector<Constraint> region;
        for (std::size_t j = 0; j < normals_.size(); ++j) {
            region.push_back({to_q(normals_[j]), Rational(0), Sense::Ge});
            if (bounds[j] >= 0)
                region.push_back({to_q(normals_[j]), bounds[j], Sense::Le});
        }
        auto [value, witness] = sup_lambda_over(np_, region, dim_);
        if (!best_ || value > best_->first) best_ = {std::move(value), std::move(witness)};
    }

    void recurse(std::size_t i, const QVector& bounds) {
        if (!visited_[i].insert(bounds).second) return;
        if (!strictly_nonempty(bounds)) return;
        if (i == gens_.size()) {
            evaluate(bounds);
            return;
        }
        for (std::size_t j = 0; j < normals_.size(); ++j) {
            const Rational cap(dot(gens_[i], normals_[j]));
            if (cap <= 0) continue;  // <u,v_j> < 0 is impossible in sigma_dual
            QVector next = bounds;
            if (next[j] < 0 || cap < next[j]) next[j] = cap;
            recurse(i + 1, next);
        }
    }

    NewtonPolyhedron np_;
    const std::vector<IVector>& gens_;
    const std::vector<IVector>& normals_;
    std::size_t dim_;
    std::map<QVector, bool> feasible_;
    std::set<QVector> evaluated_;
    std::map<std::size_t, std::set<QVector>> visited_;
    std::optional<std::pair<Rational, QVector>> best_;
};

inline void require_same_context(const MonomialIdeal& a, const MonomialIdeal& b,
                                 const char* who) {
    if (a.ctx == b.ctx) return;
    if (a.ctx && b.ctx && a.ctx->sigma.rays == b.ctx->sigma.rays &&
        a.ctx->sigma_dual.rays == b.ctx->sigma_dual.rays)
        return;
    throw Error(std::string(who) + ": ideals from different cone contexts");
}

}  // namespace detail

// F-threshold of a with respect to an m-primary monomial ideal J, as the
// sup of lambda over sigma_dual \ Q(J), computed cell by cell. Works for
// non-simplicial cones.
inline ThresholdValue f_threshold(const MonomialIdeal& a, const MonomialIdeal& j) {
    detail::require_same_context(a, j, "f_threshold");
    if (a.is_unit()) throw Error("f_threshold: ideal must be proper");
    if (j.is_unit() || !is_m_primary(j))
        throw Error("UnsupportedJ: F-thresholds are computed only for m-primary J");
    detail::CellSearch search(a, j);
    return search.run();
}

// Independent cross-check for simplicial cones: the sup is attained among
// the finitely many points that are tight against a generator translate
// on every facet hyperplane. A tuple point u survives iff
// u - b_{i_j} lies in sigma_dual and is tight on v_j for every j, and u is
// not in the relative interior of Q(J); for simplicial cones the latter
// holds exactly when some generator translate u - b has its tight set
// contained in the tight set of u.
inline ThresholdValue f_threshold_candidates(const MonomialIdeal& a, const MonomialIdeal& j) {
    detail::require_same_context(a, j, "f_threshold_candidates");
    if (!is_simplicial(a.ctx->sigma))
        throw Error("SimplicialRequired: candidate method needs a simplicial cone");
    if (a.is_unit()) throw Error("f_threshold_candidates: ideal must be proper");
    if (j.is_unit() || !is_m_primary(j))
        throw Error("UnsupportedJ: F-thresholds are computed only for m-primary J");

    const NewtonPolyhedron np = newton_polyhedron(a);
    const auto& normals = j.ctx->sigma_dual.facet_normals;  // d of them, independent
    const auto& gens = j.generators;
    const std::size_t dim = j.ctx->sigma_dual.dim;

    QMatrix vrows;
    for (const auto& v : normals) vrows.push_back(to_q(v));

    auto tight_set = [&](const QVector& x) {
        std::set<std::size_t> tight;
        for (std::size_t l = 0; l < normals.size(); ++l)
            if (dot(x, normals[l]) == 0) tight.insert(l);
        return tight;
    };

    std::optional<std::pair<Rational, QVector>> best;
    std::vector<std::size_t> choice(dim, 0);
    for (;;) {
        QVector rhs(dim);
        for (std::size_t l = 0; l < dim; ++l) rhs[l] = dot(to_q(gens[choice[l]]), normals[l]);
        const LinearSolve sol = solve_linear(vrows, rhs);
        if (sol.kind != LinearSolve::Kind::Unique)
            throw Error("internal: simplicial pairing system must be uniquely solvable");
        const QVector& u = sol.point;

        bool keep = true;
        for (std::size_t l = 0; l < dim && keep; ++l)
            if (!cone_contains(j.ctx->sigma_dual, sub(u, gens[choice[l]]))) keep = false;
        if (keep) {
            const auto tight_u = tight_set(u);
            for (const auto& b : gens) {
                const QVector diff = sub(u, b);
                if (!cone_contains(j.ctx->sigma_dual, diff)) continue;
                const auto tight_d = tight_set(diff);
                if (std::includes(tight_u.begin(), tight_u.end(), tight_d.begin(),
                                  tight_d.end())) {
                    keep = false;  // relative interior of Q(J)
                    break;
                }
            }
        }
        if (keep) {
            Rational lam = lambda_value(np, u);
            if (!best || lam > best->first) best = {std::move(lam), u};
        }

        std::size_t l = 0;
        while (l < dim) {
            if (++choice[l] < gens.size()) break;
            choice[l] = 0;
            ++l;
        }
        if (l == dim) break;
    }
    if (!best) throw Error("internal: candidate set is empty for a proper m-primary J");
    return detail::check_witness({best->first, best->second, ThresholdValue::Method::Candidates},
                                 np);
}

namespace detail {

// Membership criterion for the test ideal tau(a^c): u is in iff some
// omega in M_R pairs at most 1 with every facet normal and u + omega is
// interior to c*P(a). Interior means strict on every facet since P(a) is
// full-dimensional.
inline bool test_ideal_contains_impl(const NewtonPolyhedron& np, const DualPair& dp,
                                     const Rational& c, const IVector& u) {
    const std::size_t dim = dp.sigma_dual.dim;
    std::vector<HalfSpace> hs;
    for (const auto& v : dp.sigma_dual.facet_normals) {
        QVector neg = to_q(v);
        for (auto& x : neg) x = -x;
        hs.push_back({std::move(neg), Rational(-1), false});  // <w,v> <= 1
    }
    for (const auto& f : np.facets)
        hs.push_back({to_q(f.normal), c * f.offset - dot(to_q(f.normal), u), true});
    return lp_strict_interior(dim, hs).has_value();
}

}  // namespace detail

inline bool test_ideal_contains(const MonomialIdeal& a, const Rational& c, const IVector& u) {
    if (c <= 0) throw Error("test_ideal_contains: exponent must be positive");
    if (!cone_contains(a.ctx->sigma_dual, u))
        throw Error("test_ideal_contains: point lies outside the dual cone");
    return detail::test_ideal_contains_impl(newton_polyhedron(a), *a.ctx, c, u);
}

namespace detail {

// Lattice points of { u : 0 <= <u,v_j> <= bound_j } via exact coordinate
// ranges. The pairing map is injective (the normals span), so the region
// is a polytope.
inline std::vector<IVector> lattice_points_in_pairing_box(const DualPair& dp,
                                                          const std::vector<Int>& bounds,
                                                          std::size_t max_points) {
    const std::size_t dim = dp.sigma_dual.dim;
    const auto& normals = dp.sigma_dual.facet_normals;
    std::vector<Constraint> region;
    for (std::size_t j = 0; j < normals.size(); ++j) {
        region.push_back({to_q(normals[j]), Rational(0), Sense::Ge});
        region.push_back({to_q(normals[j]), Rational(bounds[j]), Sense::Le});
    }
    IVector lo(dim), hi(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        for (int dir = 0; dir < 2; ++dir) {
            LinearProgram lp;
            lp.objective.assign(dim, Rational(0));
            lp.objective[k] = dir ? 1 : -1;
            lp.constraints = region;
            const LPOutcome out = lp_solve(lp);
            if (out.kind != LPOutcome::Kind::Optimal)
                throw Error("internal: pairing box must be a nonempty polytope");
            if (dir)
                hi[k] = floor_q(out.value);
            else
                lo[k] = -floor_q(out.value);  // = ceil of the minimum
        }
    }

    std::vector<IVector> points;
    IVector point = lo;
    std::size_t count = 0;
    for (;;) {
        if (++count > max_points)
            throw EnumerationBoundExceeded(std::nullopt);
        bool inside = true;
        for (std::size_t j = 0; j < normals.size() && inside; ++j) {
            const Int p = dot(point, normals[j]);
            if (p < 0 || p > bounds[j]) inside = false;
        }
        if (inside) points.push_back(point);
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
    return points;
}

}  // namespace detail

// Generators of tau(a^c) by bounded enumeration. The box starts at
// ceil(c*M_j) + K_j in pairing coordinates (M_j from the Newton vertices,
// K_j from the Hilbert basis) and doubles until the shell certificate
// holds: every member on the outer shell is dominated by a generator
// deep enough inside that adding any Hilbert basis element stays in the
// box. Membership is exact, so the returned set is always sound; the
// certificate guards completeness.
inline MonomialIdeal test_ideal_generators(const MonomialIdeal& a, const Rational& c,
                                           int max_doublings = 10) {
    if (c <= 0) throw Error("test_ideal_generators: exponent must be positive");
    if (a.is_unit()) throw Error("test_ideal_generators: ideal must be proper");
    const NewtonPolyhedron np = newton_polyhedron(a);
    const DualPair& dp = *a.ctx;
    const auto& normals = dp.sigma_dual.facet_normals;
    const auto& hb = hilbert_basis(dp);

    std::vector<Int> bounds(normals.size());
    std::vector<Int> kmax(normals.size(), Int(0));
    for (std::size_t j = 0; j < normals.size(); ++j) {
        Int m = 0;
        for (const auto& g : a.generators) m = std::max(m, dot(g, normals[j]));
        for (const auto& h : hb) kmax[j] = std::max(kmax[j], dot(h, normals[j]));
        bounds[j] = ceil_q(c * Rational(m)) + kmax[j];
    }

    std::optional<MonomialIdeal> partial;
    for (int iter = 0; iter <= max_doublings; ++iter) {
        std::vector<IVector> members;
        try {
            for (const auto& u : detail::lattice_points_in_pairing_box(dp, bounds, 2000000))
                if (detail::test_ideal_contains_impl(np, dp, c, u)) members.push_back(u);
        } catch (const EnumerationBoundExceeded&) {
            throw EnumerationBoundExceeded(std::move(partial));
        }
        if (members.empty())
            throw Error("internal: test ideal box contains no members");
        MonomialIdeal tau = make_ideal(a.ctx, members);
        partial = tau;

        auto off_shell = [&](const IVector& u) {
            for (std::size_t j = 0; j < normals.size(); ++j)
                if (dot(u, normals[j]) + kmax[j] > bounds[j]) return false;
            return true;
        };
        bool certified = true;
        for (const auto& u : members) {
            if (off_shell(u)) continue;
            bool dominated = false;
            for (const auto& g : tau.generators) {
                if (off_shell(g) && cone_contains(dp.sigma_dual, sub(u, g))) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) {
                certified = false;
                break;
            }
        }
        if (certified) return tau;
        for (auto& b : bounds) b *= 2;
    }
    throw EnumerationBoundExceeded(std::move(partial));
}

// The jumping recursion: c^i = inf of mu over tau(a^{c^{i-1}}), attained
// on the finitely many generators by monotonicity of lambda.
inline JumpingChain jumping_coefficients(const MonomialIdeal& a, unsigned count) {
    if (count == 0) throw Error("jumping_coefficients: count must be positive");
    if (a.is_unit()) throw Error("jumping_coefficients: ideal must be proper");
    JumpingChain chain;
    Rational prev_c = 0;
    MonomialIdeal prev_tau = unit_ideal(a.ctx);
    for (unsigned i = 0; i < count; ++i) {
        std::optional<Rational> ci;
        for (const auto& b : prev_tau.generators) {
            Rational mu = mu_value(a, b);
            if (!ci || mu < *ci) ci = std::move(mu);
        }
        if (!ci) throw Error("internal: test ideal has no generators");
        if (*ci <= prev_c)
            throw Error("internal: jumping coefficients must strictly increase");
        MonomialIdeal tau = test_ideal_generators(a, *ci);
        for (const auto& g : tau.generators)
            if (!ideal_contains(prev_tau, g))
                throw Error("internal: jumping chain must strictly decrease");
        if (tau.generators == prev_tau.generators)
            throw Error("internal: jumping chain must strictly decrease");
        chain.coefficients.push_back(*ci);
        chain.ideals.push_back(tau);
        prev_c = *ci;
        prev_tau = std::move(tau);
    }
    return chain;
}

// For a Gorenstein pair, the principal ideal on the Gorenstein point has
// equal F-pure threshold and F-threshold with respect to m (both 1).
inline MonomialIdeal gorenstein_witness_ideal(DualPairPtr ctx) {
    if (!ctx) throw Error("gorenstein_witness_ideal: null cone context");
    const GorensteinData gd = gorenstein_data(*ctx);
    if (!gd.omega || gd.index != 1)
        throw Error("gorenstein_witness_ideal: cone is not Gorenstein");
    return make_ideal(std::move(ctx), {to_int(*gd.omega)});
}

// Simplicial regularity probe: equality of the two invariants on an
// m-primary ideal forces the toric ring to be regular, so equal implies
// smooth; the contrapositive is checked in tests.
inline RegularityReport regularity_probe(const MonomialIdeal& a) {
    if (!is_simplicial(a.ctx->sigma))
        throw Error("SimplicialRequired: regularity probe needs a simplicial cone");
    if (!is_m_primary(a)) throw Error("regularity_probe: ideal must be m-primary");
    RegularityReport rep;
    rep.smooth = is_smooth(a.ctx->sigma);
    rep.fpt_value = fpt(a).value;
    rep.fthreshold_value = f_threshold(a, maximal_monomial_ideal(a.ctx)).value;
    rep.equal = rep.fpt_value == rep.fthreshold_value;
    return rep;
}

}  // namespace fthresh
