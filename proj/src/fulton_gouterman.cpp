#include "zrabi/fulton_gouterman.hpp"

#include "zrabi/clock.hpp"
#include "zrabi/errors.hpp"
#include "zrabi/hamiltonian.hpp"

#include <cmath>
#include <string>

namespace zrabi {

ComplexMatrix boson_rotation(int n_levels, const Truncation& trunc) {
    if (n_levels < 2)
        throw InvalidDimension("boson_rotation: need N >= 2");
    const auto roots = unit_roots(n_levels);
    const int fd = trunc.fock_dim();
    ComplexMatrix rot = ComplexMatrix::Zero(fd, fd);
    for (int n = 0; n < fd; ++n)
        rot(n, n) = roots[static_cast<std::size_t>(n % n_levels)];
    return rot;
}

FGTransform build_fg_transform(int n_levels, const Truncation& trunc) {
    if (n_levels < 2)
        throw InvalidDimension("build_fg_transform: need N >= 2");
    const auto roots = unit_roots(n_levels);
    const int fd = trunc.fock_dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_levels));

    FGTransform fg;
    fg.N = n_levels;
    fg.trunc = trunc;
    fg.U = ComplexMatrix::Zero(n_levels * fd, n_levels * fd);
    for (int r = 0; r < n_levels; ++r) {
        for (int g = 0; g < n_levels; ++g) {
            const Complex phase = scale * roots[static_cast<std::size_t>((r * g) % n_levels)];
            for (int n = 0; n < fd; ++n) {
                // (R^r)_{nn} = ω^{rn}
                fg.U(r * fd + n, g * fd + n) =
                    phase * roots[static_cast<std::size_t>((r * n) % n_levels)];
            }
        }
    }
    return fg;
}

std::vector<SectorBlock> block_diagonalize(const ComplexMatrix& h, const FGTransform& fg) {
    const int fd = fg.trunc.fock_dim();
    const int dim = fg.N * fd;
    if (h.rows() != dim || h.cols() != dim)
        throw DimensionError("block_diagonalize: Hamiltonian does not match transform size");

    const ComplexMatrix conj = fg.U.adjoint() * h * fg.U;

    double off_sq = 0.0;
    for (int r = 0; r < fg.N; ++r)
        for (int g = 0; g < fg.N; ++g)
            if (r != g)
                off_sq += conj.block(r * fd, g * fd, fd, fd).squaredNorm();
    const double off = std::sqrt(off_sq);
    const double h_norm = h.norm();
    if (off > 1e-10 * h_norm)
        throw SymmetryBroken("block_diagonalize: off-diagonal residue " + std::to_string(off)
                             + " exceeds 1e-10 * ||H||_F = " + std::to_string(1e-10 * h_norm));

    std::vector<SectorBlock> blocks;
    blocks.reserve(static_cast<std::size_t>(fg.N));
    for (int s = 0; s < fg.N; ++s)
        blocks.push_back({s, conj.block(s * fd, s * fd, fd, fd)});
    return blocks;
}

SectorBlock sector_hamiltonian(const ModelParams& params, int s, const Truncation& trunc) {
    params.validate();
    if (s < 0 || s >= params.N)
        throw PreconditionError("sector_hamiltonian: sector out of range");
    const auto roots = unit_roots(params.N);
    const auto boson = build_boson_ops(trunc);
    const ComplexMatrix rot = boson_rotation(params.N, trunc);
    const int fd = trunc.fock_dim();

    ComplexMatrix block = params.Omega * boson.number
                        + params.lambda * (boson.create + boson.annihilate);
    ComplexMatrix rp = identity(fd);
    for (int m = 1; m <= params.N - 1; ++m) {
        rp = rp * rot;
        const Complex alpha = params.alphas[static_cast<std::size_t>(params.N - m - 1)]; // α_{N-m}
        block += params.Delta * alpha * roots[static_cast<std::size_t>((m * s) % params.N)] * rp;
    }

    if (params.N > 3) {
        // Only the N = 3 form is established; cross-check the extrapolation.
        const auto fg = build_fg_transform(params.N, trunc);
        const auto blocks = block_diagonalize(build_hamiltonian(params, trunc), fg);
        const double dev = max_abs(block - blocks[static_cast<std::size_t>(s)].matrix);
        if (dev > 1e-10)
            throw FormulaMismatch("sector_hamiltonian: closed formula deviates from conjugation by "
                                  + std::to_string(dev));
    }
    return {s, block};
}

Complex sector_symmetry_eigenvalue(int n_levels, int s) {
    const auto roots = unit_roots(n_levels);
    return roots[static_cast<std::size_t>((n_levels - s) % n_levels)];
}

} // namespace zrabi
