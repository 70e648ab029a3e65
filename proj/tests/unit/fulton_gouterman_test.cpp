#include "zrabi/fulton_gouterman.hpp"

#include "zrabi/clock.hpp"
#include "zrabi/errors.hpp"
#include "zrabi/hamiltonian.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace zrabi;

namespace {

std::vector<double> sorted_union_of_block_eigs(const std::vector<SectorBlock>& blocks) {
    std::vector<double> all;
    for (const auto& b : blocks) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(b.matrix);
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
            all.push_back(eig.eigenvalues()(i));
    }
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace

TEST_CASE("N = 3 transform matches the displayed operator matrix") {
    const Truncation trunc{5};
    const int fd = trunc.fock_dim();
    const auto fg = build_fg_transform(3, trunc);
    const auto w = unit_roots(3);
    const ComplexMatrix rot = boson_rotation(3, trunc);

    // Rows of blocks: [1, 1, 1; R, ωR, ω²R; R², ω²R², ωR²] / sqrt(3).
    const double scale = 1.0 / std::sqrt(3.0);
    const ComplexMatrix r2 = rot * rot;
    const ComplexMatrix eye = identity(fd);
    const ComplexMatrix blocks[3][3] = {
        {eye, eye, eye},
        {rot, w[1] * rot, w[2] * rot},
        {r2, w[2] * r2, w[1] * r2},
    };
    for (int r = 0; r < 3; ++r)
        for (int g = 0; g < 3; ++g)
            CHECK(max_abs(ComplexMatrix(fg.U.block(r * fd, g * fd, fd, fd))
                          - scale * blocks[r][g]) < 1e-14);
}

TEST_CASE("N = 2 transform is the parity splitter") {
    const Truncation trunc{4};
    const int fd = trunc.fock_dim();
    const auto fg = build_fg_transform(2, trunc);
    ComplexMatrix rot = ComplexMatrix::Zero(fd, fd);
    for (int n = 0; n < fd; ++n)
        rot(n, n) = n % 2 == 0 ? 1.0 : -1.0;
    const double scale = 1.0 / std::sqrt(2.0);
    CHECK(max_abs(ComplexMatrix(fg.U.block(0, 0, fd, fd)) - scale * identity(fd)) < 1e-14);
    CHECK(max_abs(ComplexMatrix(fg.U.block(0, fd, fd, fd)) - scale * identity(fd)) < 1e-14);
    CHECK(max_abs(ComplexMatrix(fg.U.block(fd, 0, fd, fd)) - scale * rot) < 1e-14);
    CHECK(max_abs(ComplexMatrix(fg.U.block(fd, fd, fd, fd)) + scale * rot) < 1e-14);
}

TEST_CASE("transform unitarity for N = 2..6") {
    for (int n = 2; n <= 6; ++n) {
        const auto fg = build_fg_transform(n, Truncation{12});
        CHECK(max_abs(fg.U.adjoint() * fg.U - identity(fg.U.rows())) < 1e-12);
    }
}

TEST_CASE("index-arithmetic boson rotation closes exactly") {
    for (int n = 2; n <= 6; ++n) {
        const auto roots = unit_roots(n);
        for (int k = 0; k < 4 * n; ++k)
            CHECK(roots[static_cast<std::size_t>((k * n) % n)] == Complex(1.0, 0.0));
        const ComplexMatrix rot = boson_rotation(n, Truncation{9});
        ComplexMatrix power = identity(rot.rows());
        for (int k = 0; k < n; ++k)
            power = power * rot;
        CHECK(max_abs(power - identity(rot.rows())) < 1e-13);
    }
}

TEST_CASE("block diagonalization") {
    std::mt19937 rng(31);

    SUBCASE("off-diagonal residue is floating-point noise, blocks match the formula") {
        const auto p = ModelParams::three_state(1.0, 0.5, 0.3, 0.2);
        const Truncation trunc{30};
        const auto fg = build_fg_transform(3, trunc);
        const auto blocks = block_diagonalize(build_hamiltonian(p, trunc), fg);
        REQUIRE(blocks.size() == 3);
        for (int s = 0; s < 3; ++s) {
            const auto analytic = sector_hamiltonian(p, s, trunc);
            CHECK(max_abs(blocks[static_cast<std::size_t>(s)].matrix - analytic.matrix) < 1e-12);
        }
    }

    SUBCASE("N = 2 parity blocks partition the spectrum") {
        const auto p = ModelParams::two_state(1.0, 0.7, 0.4);
        const Truncation trunc{40};
        const auto fg = build_fg_transform(2, trunc);
        const ComplexMatrix h = build_hamiltonian(p, trunc);
        const auto blocks = block_diagonalize(h, fg);
        const auto unioned = sorted_union_of_block_eigs(blocks);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> full(h);
        for (int i = 0; i < 20; ++i)
            CHECK(std::abs(unioned[static_cast<std::size_t>(i)] - full.eigenvalues()(i)) < 1e-9);
    }

    SUBCASE("spectrum partition for N = 2, 3, 4") {
        for (int n : {2, 3, 4}) {
            const auto p = testing::random_params(n, rng);
            const Truncation trunc{30};
            const auto fg = build_fg_transform(n, trunc);
            const ComplexMatrix h = build_hamiltonian(p, trunc);
            const auto unioned = sorted_union_of_block_eigs(block_diagonalize(h, fg));
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> full(h);
            for (int i = 0; i < 20; ++i)
                CHECK(std::abs(unioned[static_cast<std::size_t>(i)] - full.eigenvalues()(i)) < 1e-9);
        }
    }

    SUBCASE("gauge mismatch is caught") {
        const auto p = testing::random_params(3, rng);
        const Truncation trunc{20};
        const auto fg = build_fg_transform(3, trunc);
        const ComplexMatrix h = build_hamiltonian(p, trunc, RepChoice::ZDiagonal);
        CHECK_THROWS_AS(block_diagonalize(h, fg), SymmetryBroken);
    }

    SUBCASE("size mismatch is caught") {
        const auto fg = build_fg_transform(3, Truncation{10});
        CHECK_THROWS_AS(block_diagonalize(identity(9), fg), DimensionError);
    }
}

TEST_CASE("sector Hamiltonians") {
    SUBCASE("s = 0 at phi = 0 is the fully symmetric combination") {
        const auto p = ModelParams::three_state(1.0, 0.4, 0.3, 0.0);
        const Truncation trunc{10};
        const auto ops = build_boson_ops(trunc);
        const ComplexMatrix rot = boson_rotation(3, trunc);
        const ComplexMatrix expect = ops.number + 0.3 * (ops.create + ops.annihilate)
                                   + 0.4 * (rot + rot * rot);
        CHECK(max_abs(sector_hamiltonian(p, 0, trunc).matrix - expect) < 1e-13);
    }

    SUBCASE("phi = 0 pairs sectors 1 and 2 into conjugates") {
        const auto p = ModelParams::three_state(1.0, 0.5, 0.3, 0.0);
        const Truncation trunc{60};
        const auto b1 = sector_hamiltonian(p, 1, trunc);
        const auto b2 = sector_hamiltonian(p, 2, trunc);
        CHECK(max_abs(b1.matrix.conjugate() - b2.matrix) < 1e-13);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> e1(b1.matrix), e2(b2.matrix);
        for (int i = 0; i < 20; ++i)
            CHECK(std::abs(e1.eigenvalues()(i) - e2.eigenvalues()(i)) < 1e-9);
    }

    SUBCASE("general-N closed form survives its conjugation cross-check") {
        std::mt19937 rng(8);
        for (int n : {4, 5}) {
            const auto p = testing::random_params(n, rng);
            const Truncation trunc{16};
            const auto fg = build_fg_transform(n, trunc);
            const auto blocks = block_diagonalize(build_hamiltonian(p, trunc), fg);
            for (int s = 0; s < n; ++s) {
                const auto analytic = sector_hamiltonian(p, s, trunc); // verifies internally
                CHECK(max_abs(analytic.matrix - blocks[static_cast<std::size_t>(s)].matrix) < 1e-10);
            }
        }
    }

    SUBCASE("sector out of range") {
        const auto p = ModelParams::three_state(1.0, 0.5, 0.3, 0.0);
        CHECK_THROWS_AS(sector_hamiltonian(p, 3, Truncation{10}), PreconditionError);
    }
}

TEST_CASE("symmetry eigenvalue per transform column block") {
    for (int n = 2; n <= 5; ++n) {
        const Truncation trunc{11};
        const auto fg = build_fg_transform(n, trunc);
        const ComplexMatrix pi = build_symmetry_op(n, trunc);
        const int fd = trunc.fock_dim();
        const ComplexMatrix applied = pi * fg.U;
        for (int s = 0; s < n; ++s) {
            const Complex expect = sector_symmetry_eigenvalue(n, s);
            CHECK(max_abs(ComplexMatrix(applied.block(0, s * fd, n * fd, fd)
                                        - expect * fg.U.block(0, s * fd, n * fd, fd))) < 1e-12);
        }
    }
}
