#pragma once

#include "fthresh/thresholds.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>

namespace fthresh {

struct OracleConfig {
    std::uint64_t max_states{1000000};  // frontier states visited in total
    Int max_q{81};                      // largest admissible p^e
};

struct OracleBudgetExceeded : BudgetError {
    using BudgetError::BudgetError;
};

struct NuQuery {
    MonomialIdeal a;
    MonomialIdeal j;
    Int p;
    unsigned e{1};
};

struct NuResult {
    std::uint64_t value{0};
    // An exponent sum of `value` generators of a that avoids J^[q],
    // certifying the maximum.
    IVector witness;
};

namespace detail {

inline bool is_prime(const Int& p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline Int int_pow(const Int& base, unsigned exp) {
    Int out = 1;
    for (unsigned i = 0; i < exp; ++i) out *= base;
    return out;
}

// a is contained in the radical of j iff every generator of a has a
// positive rational multiple in Q(j); per generator this reduces to a
// sign condition on the facet normals tight on it.
inline bool radical_contains(const MonomialIdeal& j, const IVector& g) {
    const auto& normals = j.ctx->sigma_dual.facet_normals;
    std::vector<std::size_t> tight;
    for (std::size_t l = 0; l < normals.size(); ++l)
        if (dot(g, normals[l]) == 0) tight.push_back(l);
    for (const auto& b : j.generators) {
        bool ok = true;
        for (std::size_t l : tight) {
            if (dot(b, normals[l]) > 0) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace detail

inline void validate_query(const NuQuery& q, const OracleConfig& cfg = {}) {
    detail::require_same_context(q.a, q.j, "nu");
    if (q.a.is_unit() || q.j.is_unit()) throw Error("nu: both ideals must be proper");
    if (!detail::is_prime(q.p)) throw Error("nu: p must be prime");
    if (q.e < 1) throw Error("nu: e must be positive");
    if (detail::int_pow(q.p, q.e) > cfg.max_q)
        throw Error("nu: p^e exceeds the configured bound");
    for (const auto& g : q.a.generators)
        if (!detail::radical_contains(q.j, g))
            throw Error("nu: a is not contained in the radical of J");
}

// nu(q) = max { r : some sum of r generators of a avoids J^[q] }, by
// frontier search over exponent sums. A sum already in J^[q] is never
// extended: membership is monotone under adding semigroup elements.
inline NuResult nu_with_witness(const NuQuery& query, const OracleConfig& cfg = {}) {
    validate_query(query, cfg);
    const Int q = detail::int_pow(query.p, query.e);
    const MonomialIdeal jq = frobenius_power(query.j, q);

    std::uint64_t states = 0;
    std::set<IVector> frontier;
    frontier.insert(IVector(query.a.ctx->sigma_dual.dim, Int(0)));
    NuResult result{0, *frontier.begin()};
    for (;;) {
        std::set<IVector> next;
        for (const auto& s : frontier) {
            for (const auto& g : query.a.generators) {
                IVector sum = add(s, g);
                if (ideal_contains(jq, sum)) continue;
                if (next.insert(std::move(sum)).second && ++states > cfg.max_states)
                    throw OracleBudgetExceeded(
                        "OracleBudgetExceeded: frontier state budget exhausted");
            }
        }
        if (next.empty()) return result;
        result.value += 1;
        result.witness = *next.begin();
        frontier = std::move(next);
    }
}

inline std::uint64_t nu(const NuQuery& query, const OracleConfig& cfg = {}) {
    return nu_with_witness(query, cfg).value;
}

struct ConvergenceRow {
    unsigned e{0};
    Int q;
    std::optional<std::uint64_t> nu;  // absent when the budget ran out
    std::optional<Rational> ratio;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    Rational limit;  // F-threshold from the polyhedral formula
    bool complete{true};
};

inline ConvergenceTable convergence_table(const MonomialIdeal& a, const MonomialIdeal& j,
                                          const Int& p, unsigned e_max,
                                          const OracleConfig& cfg = {}) {
    ConvergenceTable table;
    table.limit = f_threshold(a, j).value;
    std::optional<Rational> prev;
    for (unsigned e = 1; e <= e_max; ++e) {
        ConvergenceRow row;
        row.e = e;
        row.q = detail::int_pow(p, e);
        try {
            row.nu = nu({a, j, p, e}, cfg);
            row.ratio = make_rational(Int(*row.nu), row.q);
            if (*row.ratio > table.limit)
                throw Error("internal: nu ratio exceeds the polyhedral F-threshold");
            if (prev && *row.ratio < *prev)
                throw Error("internal: nu ratios must be nondecreasing");
            prev = row.ratio;
        } catch (const BudgetError&) {
            table.complete = false;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace fthresh
