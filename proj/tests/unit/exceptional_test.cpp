#include "zrabi/exceptional.hpp"

#include "zrabi/errors.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace zrabi;

TEST_CASE("ladder energies") {
    CHECK(exceptional_energy(2, 1.0, 0.5) == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(exceptional_energy(0, 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(exceptional_energy(1, 2.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(exceptional_energy(1, 0.0, 0.1), PreconditionError);
    CHECK_THROWS_AS(exceptional_energy(-1, 1.0, 0.1), PreconditionError);
}

TEST_CASE("ladder spacing is the boson quantum") {
    for (double omega : {0.7, 1.0, 2.3}) {
        for (int n = 0; n < 6; ++n) {
            const double gap = exceptional_energy(n + 1, omega, 0.4)
                             - exceptional_energy(n, omega, 0.4);
            CHECK(std::abs(gap - omega) < 1e-12);
        }
    }
}

TEST_CASE("indicial exponent") {
    CHECK(indicial_exponent(0.0, 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(indicial_exponent(0.5, 1.0, 0.3) == doctest::Approx(0.59).epsilon(1e-15));
    for (int n = 0; n < 8; ++n) {
        const double e = exceptional_energy(n, 1.3, 0.45);
        CHECK(std::abs(indicial_exponent(e, 1.3, 0.45) - n) < 1e-12);
    }
}

TEST_CASE("near-ladder classification") {
    CHECK(is_near_exceptional(1.75, 1.0, 0.5));
    CHECK(is_near_exceptional(1.75 + 5e-7, 1.0, 0.5));
    CHECK_FALSE(is_near_exceptional(1.75 + 1e-3, 1.0, 0.5));
    CHECK_FALSE(is_near_exceptional(-2.0, 1.0, 0.5)); // below the ladder
}

TEST_CASE("crossing search at the degenerate endpoint") {
    // At Delta = 0 every level sits on the ladder with three-fold degeneracy,
    // so a sweep that includes it locks on immediately.
    const auto base = ModelParams::three_state(1.0, 0.3, 0.4, 0.0);
    SweepSpec sweep{"Delta", 0.0, 0.5, 26};
    const auto res = find_exceptional_crossing(0, base, sweep, Truncation{50});
    CHECK(res.gap < 1e-8);
    CHECK(res.degeneracy_count == 3);
    CHECK(std::abs(res.value) < 1e-6);
    CHECK(std::abs(res.indicial - 0.0) < 1e-6);
}

TEST_CASE("crossing search at finite Delta") {
    const auto base = ModelParams::three_state(1.0, 0.3, 0.2, 0.0);
    SweepSpec sweep{"Delta", 0.05, 1.5, 59};
    const auto res = find_exceptional_crossing(1, base, sweep, Truncation{50});
    CHECK(res.gap < 1e-6);
    CHECK(res.value > 0.05);
    CHECK(std::abs(res.indicial - std::lround(res.indicial)) < 1e-6);
    CHECK(res.degeneracy_count >= 1);
    CHECK(res.e_exceptional == doctest::Approx(0.96).epsilon(1e-15));
}

TEST_CASE("sweep without a crossing reports failure") {
    const auto base = ModelParams::three_state(1.0, 0.3, 0.6, M_PI / 6.0);
    SweepSpec sweep{"Delta", 0.02, 0.05, 7};
    CHECK_THROWS_AS(find_exceptional_crossing(0, base, sweep, Truncation{40}), NoCrossingFound);
}

TEST_CASE("sweep validation") {
    const auto base = ModelParams::three_state(1.0, 0.3, 0.2, 0.0);
    CHECK_THROWS_AS(find_exceptional_crossing(1, base, {"lambda", 0.0, 1.0, 11}, Truncation{30}),
                    PreconditionError);
    CHECK_THROWS_AS(find_exceptional_crossing(1, base, {"Delta", 1.0, 0.0, 11}, Truncation{30}),
                    PreconditionError);
    const auto base2 = ModelParams::two_state(1.0, 0.3, 0.2);
    CHECK_THROWS_AS(find_exceptional_crossing(1, base2, {"phi", 0.0, 1.0, 11}, Truncation{30}),
                    PreconditionError);
}

TEST_CASE("phi sweep touches the ladder only in the symmetric limit of Delta = 0") {
    // With Delta fixed at 0, any phi value is a crossing; the search should
    // succeed trivially and report the three-fold cluster.
    const auto base = ModelParams::three_state(1.0, 0.0, 0.3, 0.0);
    SweepSpec sweep{"phi", 0.0, 1.0, 11};
    const auto res = find_exceptional_crossing(2, base, sweep, Truncation{50});
    CHECK(res.gap < 1e-8);
    CHECK(res.degeneracy_count == 3);
}
