#include "zrabi/cf_solver.hpp"

#include "zrabi/eigensolver.hpp"
#include "zrabi/errors.hpp"
#include "zrabi/fulton_gouterman.hpp"
#include "zrabi/hamiltonian.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace zrabi;

namespace {

double lgamma_term(double mag, int n) {
    return mag == 0.0 ? 0.0 : std::exp(2.0 * std::log(mag) + std::lgamma(n + 1.0));
}

ModelParams generic3(double delta = 0.5, double lambda = 0.3, double phi = M_PI / 6.0) {
    return ModelParams::three_state(1.0, delta, lambda, phi);
}

} // namespace

TEST_CASE("recurrence coefficients") {
    const auto p = ModelParams::three_state(1.0, 1.0, 1.0, 0.0);

    SUBCASE("B_n = 1/(n+1)") {
        for (int n : {0, 1, 2, 7, 100}) {
            const auto c = recurrence_coeff(0, n, 0.7, p);
            CHECK(c.B == doctest::Approx(1.0 / (n + 1)).epsilon(1e-15));
        }
    }
    SUBCASE("A_0 phase combinations at E = 0") {
        // s = 0 picks ω^0 twice (sum 2); s = 1 and s = 2 pick ω + ω² = -1.
        CHECK(std::abs(recurrence_coeff(0, 0, 0.0, p).A - Complex(2.0, 0.0)) < 1e-14);
        CHECK(std::abs(recurrence_coeff(1, 0, 0.0, p).A - Complex(-1.0, 0.0)) < 1e-14);
        CHECK(std::abs(recurrence_coeff(2, 0, 0.0, p).A - Complex(-1.0, 0.0)) < 1e-14);
    }
    SUBCASE("asymptotic limit") {
        const auto q = generic3(0.5, 0.3, 0.0);
        const auto c = recurrence_coeff(1, 10000, 1.0, q);
        CHECK(std::abs(c.A - q.Omega / q.lambda) < 1e-3 * (q.Omega / q.lambda));
        // |A_1000 - Ω/λ| < 10 (Δ + |E|) / (1000 λ) in the generic regime
        const auto c1000 = recurrence_coeff(1, 1000, 1.0, q);
        CHECK(std::abs(c1000.A - q.Omega / q.lambda) < 10.0 * (q.Delta + 1.0) / (1000.0 * q.lambda));
    }
    SUBCASE("generator form matches the free function") {
        RecurrenceCoeffs gen{2, &p};
        const auto a = gen.at(5, 0.3);
        const auto b = recurrence_coeff(2, 5, 0.3, p);
        CHECK(std::abs(a.A - b.A) < 1e-16);
        CHECK(a.B == b.B);
    }
    SUBCASE("rejected regimes") {
        auto z = ModelParams::three_state(1.0, 0.5, 0.0, 0.0);
        CHECK_THROWS_AS(recurrence_coeff(0, 0, 0.0, z), CouplingZero);
        std::mt19937 rng(1);
        const auto p4 = testing::random_params(4, rng);
        CHECK_THROWS_AS(recurrence_coeff(0, 0, 0.0, p4), UnsupportedDimension);
        CHECK_THROWS_AS(recurrence_coeff(3, 0, 0.0, p), PreconditionError);
    }
}

TEST_CASE("continued-fraction evaluation") {
    const auto p = generic3();

    SUBCASE("depth doubling certifies at the first comparison away from poles") {
        const auto r = eval_cf_ratio(0, 0.37, p);
        CHECK(r.converged);
        CHECK(r.depth == 128);
    }
    SUBCASE("converges far below the spectrum") {
        const auto r = eval_cf_ratio(0, -1000.0, p);
        CHECK(r.converged);
        CHECK(std::isfinite(std::abs(r.value)));
    }
}

TEST_CASE("displaced-oscillator limit of the spectral function") {
    // Delta = 0 reduces every sector to the displaced oscillator with roots at
    // E = Ω n - λ²/Ω.
    const auto p = ModelParams::three_state(1.0, 0.0, 0.3, 0.0);
    const double shift = -0.3 * 0.3;

    SUBCASE("F vanishes on the analytic levels") {
        const auto f = spectral_function(0, shift, p);
        CHECK(std::abs(f.F) < 1e-8);
    }
    SUBCASE("scan recovers the ladder") {
        for (int s = 0; s < 3; ++s) {
            const auto scan = find_regular_energies(s, -0.2, 5.0, 0.01, p);
            REQUIRE(scan.roots.size() >= 6);
            for (int n = 0; n < 6; ++n)
                CHECK(std::abs(scan.roots[static_cast<std::size_t>(n)].E - (n + shift)) < 1e-8);
            for (const auto& r : scan.roots)
                CHECK(r.near_exceptional); // the Delta = 0 ladder coincides with it
        }
    }
}

TEST_CASE("scan preconditions") {
    const auto p = generic3();
    CHECK_THROWS_AS(find_regular_energies(0, 1.0, 1.0, 0.01, p), PreconditionError);
    CHECK_THROWS_AS(find_regular_energies(0, 1.0, 2.0, 0.0, p), PreconditionError);
}

TEST_CASE("roots match the dense oracle sector by sector") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Truncation trunc{120};
    for (int set = 0; set < 2; ++set) {
        const double delta = 0.1 + 0.9 * u(rng);
        const double lambda = 0.1 + 0.7 * u(rng);
        const double phi = u(rng) * M_PI / 3.0;
        const auto p = ModelParams::three_state(1.0, delta, lambda, phi);

        const double lo = -lambda * lambda - 2.0 * delta - 0.5;
        const double hi = 7.6 + 2.0 * delta;
        std::vector<double> all_roots;
        for (int s = 0; s < 3; ++s) {
            const auto scan = find_regular_energies(s, lo, hi, 0.01, p);
            const auto block = sector_hamiltonian(p, s, trunc);
            const auto eig = eig_hermitian(block.matrix, false);
            REQUIRE(scan.roots.size() >= 8);
            for (int i = 0; i < 8; ++i) {
                CHECK(std::abs(scan.roots[static_cast<std::size_t>(i)].E - eig.values(i)) < 1e-6);
                all_roots.push_back(scan.roots[static_cast<std::size_t>(i)].E);
            }
        }
        // Union across sectors tracks the full spectrum.
        std::sort(all_roots.begin(), all_roots.end());
        const auto full = eig_hermitian(build_hamiltonian(p, trunc), false);
        for (int i = 0; i < 18; ++i)
            CHECK(std::abs(all_roots[static_cast<std::size_t>(i)] - full.values(i)) < 1e-6);
    }
}

TEST_CASE("phi = 0 sector roots coincide for s = 1 and s = 2") {
    const auto p = generic3(0.5, 0.3, 0.0);
    const auto s1 = find_regular_energies(1, -1.5, 4.0, 0.01, p);
    const auto s2 = find_regular_energies(2, -1.5, 4.0, 0.01, p);
    REQUIRE(s1.roots.size() == s2.roots.size());
    for (std::size_t i = 0; i < s1.roots.size(); ++i)
        CHECK(std::abs(s1.roots[i].E - s2.roots[i].E) < 1e-8);
}

TEST_CASE("reported roots never sit on poles") {
    const auto p = generic3();
    const auto scan = find_regular_energies(0, -1.5, 5.0, 0.01, p);
    CHECK(scan.roots.size() >= 5);
    for (const auto& r : scan.roots) {
        for (double e : {r.bracket_lo, 0.5 * (r.bracket_lo + r.bracket_hi), r.bracket_hi}) {
            const auto f = spectral_function(0, e, p);
            CHECK(f.flag == CfFlag::Regular);
        }
        CHECK(r.residual < 1e-6);
    }
    // Poles do exist between roots: the scan flags at least one grid point.
    CHECK(std::count(scan.flags.begin(), scan.flags.end(), CfFlag::NearPole) > 0);
}

TEST_CASE("minimal solution at a root") {
    const auto p = generic3();
    const auto scan = find_regular_energies(0, -1.5, 2.0, 0.01, p);
    REQUIRE(!scan.roots.empty());
    const double root = scan.roots[0].E;

    const auto sol = minimal_solution(0, root, p, 200);
    CHECK(sol.boundary_residual < 1e-8);
    CHECK(sol.tail_ratio_check);
    CHECK(sol.norm_plateau);

    SUBCASE("off-spectrum energies are rejected") {
        CHECK_THROWS_AS(minimal_solution(0, root + 1e-2, p, 200), NotAnEigenvalue);
    }

    SUBCASE("partial Bargmann sums plateau") {
        double partial = 0.0;
        std::vector<double> partials;
        for (std::size_t n = 0; n < sol.coeffs.size(); ++n) {
            partial += lgamma_term(std::abs(sol.coeffs[n]), static_cast<int>(n));
            partials.push_back(partial);
        }
        CHECK((partials.back() - partials[partials.size() / 2]) < 1e-12 * partials.back());
    }
}

TEST_CASE("minimal solution matches the coherent state in the displaced limit") {
    const auto p = ModelParams::three_state(1.0, 0.0, 0.3, 0.0);
    const double root = -0.09;
    const auto sol = minimal_solution(0, root, p, 60);
    double fact = 1.0;
    for (int n = 0; n <= 40; ++n) {
        if (n > 0)
            fact *= n;
        const double expect = std::pow(-0.3, n) / fact;
        CHECK(std::abs(sol.coeffs[static_cast<std::size_t>(n)] - expect) < 1e-8);
    }
}

TEST_CASE("dominant branch emerges off the spectrum") {
    const auto p = generic3();
    const auto scan = find_regular_energies(0, -1.5, 2.0, 0.01, p);
    REQUIRE(!scan.roots.empty());
    const double e_off = scan.roots[0].E + 1e-2;
    const double target = p.Omega / p.lambda;

    SUBCASE("low window for a low root") {
        const auto ratios = forward_ratios(0, e_off, p, 50, 100);
        for (const auto& r : ratios)
            CHECK(std::abs(r - Complex(-target, 0.0)) < 0.05 * target);
    }
    SUBCASE("forward coefficients blow up at the dominant rate") {
        const auto k = forward_coefficients(0, e_off, p, 40);
        const double r30 = std::abs(k[31]) / std::abs(k[30]);
        CHECK(r30 == doctest::Approx(target).epsilon(0.2));
    }
}
