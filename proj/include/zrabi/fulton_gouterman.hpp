// fulton_gouterman.hpp — sector transform that block-diagonalizes the
// cyclic-symmetric Hamiltonian
//
// U is built from roots of unity and powers of the boson rotation
// R = diag(e^{i 2π n / N}): block (r, γ) of U equals ω^{rγ} R^r / sqrt(N)
// (0-indexed).  Conjugation U†HU is exactly block diagonal, block s hosting
// the sector Hamiltonian
//   H_s = Ω b†b + λ (b† + b) + Δ Σ_m α_{N-m} ω^{ms} R^m .
// The symmetry generator acts on block s with eigenvalue ω^{(N-s) mod N}.

#pragma once

#include "zrabi/params.hpp"

#include <vector>

namespace zrabi {

struct FGTransform {
    int N = 0;
    Truncation trunc;
    ComplexMatrix U;
};

// R = diag(e^{i 2π n / N}), n = 0..n_max; R^N = 1 exactly.
ComplexMatrix boson_rotation(int n_levels, const Truncation& trunc);

// Unitary within 1e-12 by construction.
FGTransform build_fg_transform(int n_levels, const Truncation& trunc);

struct SectorBlock {
    int s = 0;
    ComplexMatrix matrix; // (n_max+1) square, hermitian
};

// Conjugates H by U and returns the N diagonal blocks in sector order.
// Throws SymmetryBroken when the off-diagonal block residue exceeds
// 1e-10 ||H||_F (inconsistent gauge or invalid parameters).
std::vector<SectorBlock> block_diagonalize(const ComplexMatrix& h, const FGTransform& fg);

// Sector Hamiltonian from the closed formula above.  For N > 3 the formula is
// cross-checked against block_diagonalize; FormulaMismatch if they disagree
// beyond 1e-10.
SectorBlock sector_hamiltonian(const ModelParams& params, int s, const Truncation& trunc);

// Eigenvalue of the symmetry generator on sector s (verified in tests by
// applying it to the transform columns).
Complex sector_symmetry_eigenvalue(int n_levels, int s);

} // namespace zrabi
