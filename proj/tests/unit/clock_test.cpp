#include "zrabi/clock.hpp"
#include "zrabi/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>

using namespace zrabi;

TEST_CASE("omega returns the primitive root of unity") {
    CHECK(std::abs(omega(2) - Complex(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(omega(4) - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(omega(3) - Complex(-0.5, 0.86602540378443865)) < 1e-15);
    CHECK_THROWS_AS(omega(1), InvalidDimension);
    CHECK_THROWS_AS(omega(0), InvalidDimension);
}

TEST_CASE("N = 2 ZDiagonal pair reduces to the Pauli matrices") {
    const auto pair = make_clock_pair(2, RepChoice::ZDiagonal);
    ComplexMatrix sz(2, 2), sx(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    CHECK(max_abs(pair.Z - sz) < 1e-15);
    CHECK(max_abs(pair.X - sx) < 1e-15);
}

TEST_CASE("N = 3 XDiagonal pair matches the explicit representation") {
    const auto pair = make_clock_pair(3, RepChoice::XDiagonal);
    const auto w = unit_roots(3);
    ComplexMatrix xdag(3, 3);
    xdag.setZero();
    xdag(0, 0) = 1.0;
    xdag(1, 1) = w[1];
    xdag(2, 2) = w[2];
    CHECK(max_abs(ComplexMatrix(pair.X.adjoint()) - xdag) < 1e-15);

    ComplexMatrix z(3, 3);
    z << 0, 0, 1,
         1, 0, 0,
         0, 1, 0;
    CHECK(max_abs(pair.Z - z) < 1e-15);
}

TEST_CASE("Weyl relations hold for N = 2..8 in both representations") {
    for (int n = 2; n <= 8; ++n) {
        for (auto rep : {RepChoice::ZDiagonal, RepChoice::XDiagonal}) {
            const auto pair = make_clock_pair(n, rep);
            CHECK(verify_weyl_relations(pair, 1e-12));

            const ComplexMatrix eye = identity(n);
            ComplexMatrix zn = eye, xn = eye;
            for (int k = 0; k < n; ++k) {
                zn = zn * pair.Z;
                xn = xn * pair.X;
            }
            CHECK(max_abs(zn - eye) < 1e-12);
            CHECK(max_abs(xn - eye) < 1e-12);
            CHECK(max_abs(pair.Z * pair.X - omega(n) * (pair.X * pair.Z)) < 1e-12);
        }
    }
}

TEST_CASE("verify_weyl_relations rejects broken pairs") {
    SUBCASE("conjugate representation (Z replaced by Z adjoint)") {
        auto pair = make_clock_pair(3, RepChoice::XDiagonal);
        pair.Z = pair.Z.adjoint().eval();
        CHECK_FALSE(verify_weyl_relations(pair, 1e-12));
    }
    SUBCASE("single perturbed entry") {
        auto pair = make_clock_pair(5, RepChoice::XDiagonal);
        pair.X(2, 2) += 1e-6;
        CHECK_FALSE(verify_weyl_relations(pair, 1e-12));
    }
    SUBCASE("valid pair passes at tight tolerance") {
        const auto pair = make_clock_pair(5, RepChoice::ZDiagonal);
        CHECK(verify_weyl_relations(pair, 1e-12));
    }
    CHECK_THROWS_AS(verify_weyl_relations(make_clock_pair(3, RepChoice::XDiagonal), -1.0),
                    PreconditionError);
}

TEST_CASE("the two representations are unitarily equivalent") {
    const auto eigs = [](const ComplexMatrix& m) {
        Eigen::ComplexEigenSolver<ComplexMatrix> solver(m);
        std::vector<Complex> out;
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
            out.push_back(solver.eigenvalues()(i));
        return out;
    };
    // Multiset comparison: every eigenvalue of one rep has a partner in the
    // other within 1e-10 (roots of unity are well separated, greedy is fine).
    const auto multisets_match = [&](std::vector<Complex> a, std::vector<Complex> b) {
        for (const Complex& va : a) {
            auto best = b.end();
            double best_d = 1e-10;
            for (auto it = b.begin(); it != b.end(); ++it) {
                const double d = std::abs(va - *it);
                if (d < best_d) {
                    best_d = d;
                    best = it;
                }
            }
            if (best == b.end())
                return false;
            b.erase(best);
        }
        return b.empty();
    };
    for (int n = 2; n <= 8; ++n) {
        const auto a = make_clock_pair(n, RepChoice::ZDiagonal);
        const auto b = make_clock_pair(n, RepChoice::XDiagonal);
        CHECK(multisets_match(eigs(a.Z), eigs(b.Z)));
        CHECK(multisets_match(eigs(a.X), eigs(b.X)));
    }
}
