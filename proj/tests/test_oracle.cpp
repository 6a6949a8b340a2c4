#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace fthresh;
using testsupport::ivec;
using testsupport::ivecs;
namespace fixtures = testsupport::fixtures;

namespace {

MonomialIdeal plane_m() { return maximal_monomial_ideal(fixtures::orthant(2)); }

MonomialIdeal x2y3() {
    return make_ideal(fixtures::orthant(2), ivecs({{2, 0}, {0, 3}}));
}

}  // namespace

TEST_CASE("nu on the plane maximal ideal") {
    const MonomialIdeal m = plane_m();
    CHECK(nu({m, m, 2, 1}) == 2);  // xy avoids (x^2, y^2), degree 3 does not
}

TEST_CASE("nu of (x^2, y^3) with respect to (x, y)") {
    const MonomialIdeal a = x2y3();
    const MonomialIdeal m = plane_m();
    CHECK(nu({a, m, 2, 1}) == 0);  // both generators already lie in (x^2, y^2)
    CHECK(nu({a, m, 2, 2}) == 2);  // x^2 y^3 avoids (x^4, y^4)
}

TEST_CASE("nu validates its query") {
    const MonomialIdeal m = plane_m();
    const MonomialIdeal principal = make_ideal(m.ctx, ivecs({{1, 0}}));
    const MonomialIdeal other = make_ideal(m.ctx, ivecs({{0, 1}}));
    CHECK_THROWS_AS(nu({m, m, 4, 1}), Error);   // 4 is not prime
    CHECK_THROWS_AS(nu({m, m, 2, 0}), Error);   // e must be positive
    CHECK_THROWS_AS(nu({m, m, 2, 20}), Error);  // p^e beyond the configured cap
    CHECK_THROWS_AS(nu({principal, other, 2, 1}), Error);  // a not inside sqrt(J)
    CHECK_THROWS_AS(nu({unit_ideal(m.ctx), m, 2, 1}), Error);
}

TEST_CASE("nu respects the frontier budget") {
    const MonomialIdeal m = plane_m();
    OracleConfig tiny;
    tiny.max_states = 3;
    CHECK_THROWS_AS(nu({m, m, 3, 3}, tiny), OracleBudgetExceeded);
}

TEST_CASE("nu witnesses certify the maximum") {
    const MonomialIdeal a = x2y3();
    const MonomialIdeal m = plane_m();
    for (unsigned e = 1; e <= 3; ++e) {
        const Int q = detail::int_pow(2, e);
        const NuResult r = nu_with_witness({a, m, 2, e});
        const MonomialIdeal jq = frobenius_power(m, q);
        // witness is a sum of exactly nu generators avoiding J^[q]
        CHECK(!ideal_contains(jq, r.witness));
        if (r.value > 0) {
            CHECK(ideal_contains(ideal_power(a, static_cast<unsigned>(r.value)), r.witness));
        } else {
            CHECK(is_zero(r.witness));
        }
        // exhausted frontier: every sum of nu+1 generators lands inside
        const MonomialIdeal next = ideal_power(a, static_cast<unsigned>(r.value) + 1);
        for (const auto& g : next.generators) CHECK(ideal_contains(jq, g));
    }
}

TEST_CASE("convergence table for a = J = (x, y)") {
    const MonomialIdeal m = plane_m();
    const ConvergenceTable table = convergence_table(m, m, 2, 4);
    REQUIRE(table.rows.size() == 4);
    CHECK(table.limit == 2);
    CHECK(table.complete);
    for (unsigned e = 1; e <= 4; ++e) {
        const auto& row = table.rows[e - 1];
        const Int q = detail::int_pow(2, e);
        REQUIRE(row.nu.has_value());
        CHECK(Int(*row.nu) == 2 * q - 2);
        CHECK(*row.ratio == make_rational(2 * q - 2, q));
    }
}

TEST_CASE("convergence table for (x^2, y^3) against (x, y)") {
    const ConvergenceTable table = convergence_table(x2y3(), plane_m(), 2, 5);
    CHECK(table.limit == make_rational(5, 6));
    REQUIRE(table.rows.size() == 5);
    std::optional<Rational> prev;
    for (const auto& row : table.rows) {
        REQUIRE(row.ratio.has_value());
        CHECK(*row.ratio <= table.limit);
        if (prev) CHECK(*row.ratio >= *prev);
        prev = row.ratio;
    }
    CHECK(*table.rows[0].ratio == 0);
    CHECK(*table.rows[1].ratio == make_rational(1, 2));
}

TEST_CASE("ratios stay monotone and bounded on the HMTW cone") {
    const MonomialIdeal m = maximal_monomial_ideal(fixtures::hmtw());
    const ConvergenceTable table = convergence_table(m, m, 2, 3);
    CHECK(table.limit == 2);
    std::optional<Rational> prev;
    for (const auto& row : table.rows) {
        REQUIRE(row.ratio.has_value());
        CHECK(*row.ratio <= 2);
        if (prev) CHECK(*row.ratio >= *prev);
        prev = row.ratio;
    }
}

TEST_CASE("ratios converge from below on random simplicial instances") {
    std::mt19937 rng(71001);
    int checked = 0;
    for (int trial = 0; trial < 12 && checked < 6; ++trial) {
        DualPairPtr pair = testsupport::random_cone(rng, 2, true);
        const MonomialIdeal j = testsupport::random_m_primary_ideal(rng, pair);
        auto agens = testsupport::random_semigroup_points(rng, *pair, 1 + trial % 2, 3);
        if (agens.empty()) continue;
        MonomialIdeal a = make_ideal(pair, agens);
        bool radical_ok = true;
        try {
            validate_query({a, j, 2, 1});
        } catch (const Error&) {
            radical_ok = false;
        }
        if (!radical_ok) continue;
        const ConvergenceTable table = convergence_table(a, j, 2, 4);
        std::optional<Rational> prev_gap;
        for (const auto& row : table.rows) {
            REQUIRE(row.ratio.has_value());
            CHECK(*row.ratio <= table.limit);
            const Rational gap = table.limit - *row.ratio;
            if (prev_gap) CHECK(gap <= *prev_gap);
            prev_gap = gap;
        }
        ++checked;
    }
    CHECK(checked >= 4);
}
