#include "eigenrestrict/torus.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace eigenrestrict;

TEST_SUITE("torus") {

TEST_CASE("lattice points on small circles") {
    const auto one = representations(1);
    CHECK(one.points == std::vector<std::pair<int, int>>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
    const auto r25 = representations(25);
    CHECK(r25.count() == 12);
    const std::set<std::pair<int, int>> expected{{5, 0}, {-5, 0}, {0, 5}, {0, -5}, {3, 4}, {3, -4},
                                                 {-3, 4}, {-3, -4}, {4, 3}, {4, -3}, {-4, 3}, {-4, -3}};
    CHECK(std::set<std::pair<int, int>>(r25.points.begin(), r25.points.end()) == expected);
    CHECK(std::is_sorted(r25.points.begin(), r25.points.end()));
    CHECK(representations(3).count() == 0);
    CHECK(representations(2).count() == 4);
    CHECK(representations(0).degenerate);
    CHECK_THROWS_AS(representations(-1), std::invalid_argument);
}

TEST_CASE("r2 agrees with the scan and divisor-class oracles") {
    // Frozen spot values from the scan oracle.
    CHECK(oracle::r2_scan(5) == 8);
    CHECK(oracle::r2_scan(25) == 12);
    CHECK(oracle::r2_scan(65) == 16);
    const auto table = r2_table(20000);
    REQUIRE(table.size() == 20001);
    for (long long N = 1; N <= 20000; ++N) {
        CHECK(table[static_cast<std::size_t>(N)] == oracle::r2_jacobi(N));
        if (N <= 2000) CHECK(static_cast<int>(representations(N).count()) == oracle::r2_scan(N));
    }
}

TEST_CASE("divisor growth records") {
    const auto g = divisor_growth(100);
    REQUIRE_FALSE(g.records.empty());
    CHECK(g.records.back().N == 65);
    CHECK(g.records.back().r2 == 16);
    CHECK(g.tails.empty());
    const auto row25 = std::find_if(g.records.begin(), g.records.end(), [](const DivisorRow& r) { return r.N == 25; });
    REQUIRE(row25 != g.records.end());
    CHECK(row25->exponent == doctest::Approx(1.5439593106327716).epsilon(1e-14));

    const auto big = divisor_growth(100000);
    REQUIRE(big.tails.size() == 2);
    CHECK(big.tails[0].cutoff == 1000);
    CHECK(big.tails[1].cutoff == 10000);
    CHECK(big.tails[0].exponent > big.tails[1].exponent);
    CHECK(big.decreasing);
    CHECK_THROWS_AS(divisor_growth(1), std::invalid_argument);
}

TEST_CASE("random eigenfunctions are normalized and reproducible") {
    for (long long N : {25LL, 65LL, 1105LL}) {
        for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
            const auto f = random_eigenfunction(N, seed);
            CHECK(f.radius_squared() == N);
            CHECK(f.l2_norm() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(torus_grid_l2(f, torus_grid_floor(N)) == doctest::Approx(1.0).epsilon(1e-10));
            const auto again = random_eigenfunction(N, seed);
            for (std::size_t i = 0; i < f.terms().size(); ++i) CHECK(f.terms()[i].coefficient == again.terms()[i].coefficient);
        }
        CHECK(random_eigenfunction(N, 1).terms()[0].coefficient != random_eigenfunction(N, 2).terms()[0].coefficient);
    }
    CHECK_THROWS_AS(random_eigenfunction(3, 1), std::invalid_argument);
}

TEST_CASE("sup norms") {
    const auto z25 = zero_phase_eigenfunction(25);
    CHECK(torus_sup_norm(z25, torus_grid_floor(25)).value == doctest::Approx(3.4641016151377544).epsilon(1e-14));
    const auto z5 = zero_phase_eigenfunction(5);
    CHECK(torus_sup_norm(z5, torus_grid_floor(5)).value == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));

    const TorusSum single({{3, 4, 1.0}});
    const auto s = torus_sup_norm(single, torus_grid_floor(25));
    CHECK(s.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.coarse == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(torus_curve_l2(single) == doctest::Approx(1.0).epsilon(1e-12));

    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto f = random_eigenfunction(25, seed);
        CHECK(torus_sup_norm(f, torus_grid_floor(25)).value <= std::sqrt(12.0) * (1 + 1e-14));
    }
    CHECK_THROWS_AS(torus_sup_norm(z25, 10), std::invalid_argument);
}

TEST_CASE("short torus report") {
    const std::vector<long long> Ns{25, 65, 325, 1105};
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    const auto report = verify_linfty_bound(Ns, seeds);
    CHECK(report.rows.size() == Ns.size() * seeds.size());
    CHECK(report.sup_bound_holds);
    for (const auto& row : report.rows) {
        CHECK(row.sup <= std::sqrt(static_cast<double>(row.r2)) * (1 + 1e-14));
        CHECK(row.curve_l2 > 0.0);
    }
    CHECK_THROWS_AS(verify_linfty_bound(Ns, seeds, 10), std::invalid_argument);
}

}  // TEST_SUITE
