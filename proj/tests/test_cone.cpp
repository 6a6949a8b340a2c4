#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace fthresh;
using testsupport::ivec;
using testsupport::ivecs;
using testsupport::qvec;
namespace fixtures = testsupport::fixtures;

namespace {

std::set<IVector> ray_set(const std::vector<IVector>& rays) {
    return {rays.begin(), rays.end()};
}

// V-representation membership, independent of the computed H-representation:
// u is a nonnegative combination of the rays.
bool in_cone_by_rays(const std::vector<IVector>& rays, const QVector& u) {
    const std::size_t n = rays.size();
    const std::size_t d = u.size();
    LinearProgram lp;
    lp.objective.assign(n, Rational(0));
    for (std::size_t k = 0; k < d; ++k) {
        Constraint c;
        c.normal.assign(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) c.normal[i] = Rational(rays[i][k]);
        c.offset = u[k];
        c.sense = Sense::Eq;
        lp.constraints.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < n; ++i) {
        Constraint c;
        c.normal.assign(n, Rational(0));
        c.normal[i] = 1;
        c.offset = 0;
        c.sense = Sense::Ge;
        lp.constraints.push_back(std::move(c));
    }
    return lp_solve(lp).kind == LPOutcome::Kind::Optimal;
}

}  // namespace

TEST_CASE("dual cone of the orthant is the orthant") {
    const Cone dual = dual_cone(ivecs({{1, 0}, {0, 1}}));
    CHECK(ray_set(dual.rays) == ray_set(ivecs({{1, 0}, {0, 1}})));
}

TEST_CASE("dual cone of the A1 cone") {
    const Cone dual = dual_cone(ivecs({{1, 0}, {1, 2}}));
    CHECK(ray_set(dual.rays) == ray_set(ivecs({{0, 1}, {2, -1}})));
    CHECK(ray_set(dual.facet_normals) == ray_set(ivecs({{1, 0}, {1, 2}})));
}

TEST_CASE("dual cone of the HMTW cone") {
    const Cone dual = dual_cone(ivecs({{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}, {0, -1, 1}}));
    CHECK(ray_set(dual.rays) ==
          ray_set(ivecs({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}, {1, 1, 1}})));
}

TEST_CASE("duality is an involution and agrees with the V-representation") {
    std::mt19937 rng(31001);
    std::uniform_int_distribution<long> coord(-3, 3);
    std::vector<DualPairPtr> pairs = {fixtures::orthant(2), fixtures::orthant(3),
                                      fixtures::a1(),      fixtures::a4(),
                                      fixtures::hmtw(),    fixtures::rgorenstein(3),
                                      fixtures::cone23()};
    for (int i = 0; i < 8; ++i)
        pairs.push_back(testsupport::random_cone(rng, i % 2 ? 2 : 3, false, 30));

    for (const auto& pair : pairs) {
        const Cone redual = dual_cone(pair->sigma_dual.rays);
        CHECK(ray_set(redual.rays) == ray_set(pair->sigma.rays));

        // random rational points: H-representation membership must agree
        // with being a nonnegative combination of the rays
        std::uniform_int_distribution<long> den(1, 3);
        for (int t = 0; t < 12; ++t) {
            QVector u(pair->sigma_dual.dim);
            for (auto& x : u) x = make_rational(coord(rng), den(rng));
            CHECK(cone_contains(pair->sigma_dual, u) ==
                  in_cone_by_rays(pair->sigma_dual.rays, u));
        }
    }
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(make_dual_pair(ivecs({{1, 0}, {-1, 0}})), Error);           // not spanning
    CHECK_THROWS_AS(make_dual_pair(ivecs({{1, 0}, {-1, 0}, {0, 1}})), Error);   // contains a line
    CHECK_THROWS_AS(make_dual_pair(ivecs({{0, 0}, {0, 1}})), Error);            // zero ray
}

TEST_CASE("non-extreme input rays are dropped with a warning") {
    const DualPairPtr pair = make_dual_pair(ivecs({{1, 0}, {1, 1}, {0, 1}}));
    CHECK(ray_set(pair->sigma.rays) == ray_set(ivecs({{1, 0}, {0, 1}})));
    REQUIRE(pair->warnings.size() == 1);
    CHECK(pair->warnings[0].find("non-extreme") != std::string::npos);
}

TEST_CASE("containment against facet normals") {
    const DualPairPtr orthant = fixtures::orthant(2);
    CHECK(cone_contains(orthant->sigma_dual, qvec({1, 1})));
    CHECK(cone_contains_strict(orthant->sigma_dual, qvec({1, 1})));
    CHECK(cone_contains(orthant->sigma_dual, qvec({1, 0})));
    CHECK(!cone_contains_strict(orthant->sigma_dual, qvec({1, 0})));

    const DualPairPtr a1 = fixtures::a1();
    CHECK(!cone_contains(a1->sigma_dual, qvec({1, -1})));  // pairs -1 with (1,2)
    CHECK_THROWS_AS(cone_contains(a1->sigma_dual, qvec({1, 2, 3})), Error);
}

TEST_CASE("simplicial and smooth predicates") {
    CHECK(is_simplicial(fixtures::orthant(2)->sigma));
    CHECK(is_smooth(fixtures::orthant(2)->sigma));
    CHECK(is_simplicial(fixtures::a1()->sigma));
    CHECK(!is_smooth(fixtures::a1()->sigma));  // index-2 determinant
    CHECK(!is_simplicial(fixtures::hmtw()->sigma));
    CHECK(!is_smooth(fixtures::hmtw()->sigma));
}

TEST_CASE("Hilbert basis of the orthant semigroup") {
    CHECK(ray_set(hilbert_basis(*fixtures::orthant(2))) == ray_set(ivecs({{1, 0}, {0, 1}})));
}

TEST_CASE("Hilbert basis of the A1 dual semigroup") {
    CHECK(ray_set(hilbert_basis(*fixtures::a1())) ==
          ray_set(ivecs({{0, 1}, {1, 0}, {2, -1}})));
}

TEST_CASE("Hilbert basis of the HMTW dual semigroup") {
    const DualPairPtr pair = fixtures::hmtw();
    const auto& basis = hilbert_basis(*pair);
    const auto rays = ray_set(ivecs({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}, {1, 1, 1}}));
    for (const auto& r : rays)
        CHECK(std::find(basis.begin(), basis.end(), r) != basis.end());
    // irreducibility by pairwise subtraction
    for (const auto& b : basis)
        for (const auto& other : basis) {
            const IVector diff = sub(b, other);
            if (!is_zero(diff)) CHECK(!cone_contains(pair->sigma_dual, diff));
        }
}

TEST_CASE("Hilbert basis generates every small lattice point of the semigroup") {
    for (const auto& pair : {fixtures::orthant(2), fixtures::a1(), fixtures::hmtw(),
                             fixtures::rgorenstein(2), fixtures::cone23()}) {
        const auto& basis = hilbert_basis(*pair);
        const std::size_t dim = pair->sigma_dual.dim;
        // reachability by recursive descent through the basis
        std::set<IVector> reachable;
        auto reach = [&](auto&& self, const IVector& u) -> bool {
            if (is_zero(u)) return true;
            if (reachable.count(u)) return true;
            for (const auto& b : basis) {
                const IVector rest = sub(u, b);
                if (cone_contains(pair->sigma_dual, rest) && self(self, rest)) {
                    reachable.insert(u);
                    return true;
                }
            }
            return false;
        };
        IVector point(dim, Int(-5));
        for (;;) {
            if (cone_contains(pair->sigma_dual, point)) CHECK(reach(reach, point));
            std::size_t k = 0;
            while (k < dim) {
                if (point[k] < 5) {
                    ++point[k];
                    break;
                }
                point[k] = -5;
                ++k;
            }
            if (k == dim) break;
        }
    }
}

TEST_CASE("Gorenstein data on the A1 cone") {
    const GorensteinData gd = gorenstein_data(*fixtures::a1());
    REQUIRE(gd.omega.has_value());
    CHECK(*gd.omega == qvec({1, 0}));
    CHECK(gd.index == 1);
    CHECK(gd.unique);
}

TEST_CASE("Gorenstein data on the r-Gorenstein family") {
    for (long r : {2L, 3L, 5L}) {
        const GorensteinData gd = gorenstein_data(*fixtures::rgorenstein(r));
        REQUIRE(gd.omega.has_value());
        QVector expected = qvec({1, 0, 0});
        expected[2] = make_rational(1, r);
        CHECK(*gd.omega == expected);
        CHECK(gd.index == r);
    }
}

TEST_CASE("Gorenstein data on the HMTW cone") {
    const DualPairPtr pair = fixtures::hmtw();
    const GorensteinData gd = gorenstein_data(*pair);
    REQUIRE(gd.omega.has_value());
    CHECK(*gd.omega == qvec({1, 1, 2}));
    CHECK(gd.index == 1);
    for (const auto& v : pair->sigma.rays) CHECK(dot(*gd.omega, v) == 1);
}

TEST_CASE("Gorenstein data on a non-Gorenstein cone") {
    const GorensteinData gd = gorenstein_data(*fixtures::cone23());
    REQUIRE(gd.omega.has_value());
    CHECK(gd.index == 3);  // omega = (1, -1/3)
}
