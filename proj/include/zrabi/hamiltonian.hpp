// hamiltonian.hpp — truncated Fock⊗spin Hamiltonians and the cyclic symmetry
// generator
//
// Matrices live on C^N ⊗ F(n_max) with the composite index k (n_max+1) + n
// (spin-major).  The XDiagonal clock gauge is the canonical one: it makes the
// boson coupling diagonal in the spin index and is what the sector transform
// expects.

#pragma once

#include "zrabi/clock.hpp"
#include "zrabi/params.hpp"

namespace zrabi {

struct BosonOps {
    ComplexMatrix create;      // b†, (b†)_{n+1,n} = sqrt(n+1)
    ComplexMatrix annihilate;  // b = (b†)†
    ComplexMatrix number;      // b†b = diag(0..n_max)
};

// Truncated ladder operators; requires n_max >= 1.
BosonOps build_boson_ops(const Truncation& trunc);

// H = Ω (1 ⊗ b†b) + Δ Σ_m α_m (Z^m ⊗ 1) + λ (X† ⊗ b† + X ⊗ b).
// Hermitian by the α constraint; throws NonHermitianParams otherwise.
ComplexMatrix build_hamiltonian(const ModelParams& params, const Truncation& trunc,
                                RepChoice rep = RepChoice::XDiagonal);

// The N = 3 operator-block matrix written out literally: diagonal blocks
// Ω b†b + λ(ω^k b† + ω^{-k} b), off-diagonal level couplings Δ e^{∓iφ}.
// Equals build_hamiltonian(..., XDiagonal) entrywise.
ComplexMatrix build_hamiltonian3_explicit(const ModelParams& params, const Truncation& trunc);

// Symmetry generator Π = Z ⊗ diag(e^{i 2π n / N}); satisfies Π^N = 1 and
// [H, Π] = 0 (exactly, also under truncation).
ComplexMatrix build_symmetry_op(int n_levels, const Truncation& trunc,
                                RepChoice rep = RepChoice::XDiagonal);

// Alternate model with the nonlinear interaction
//   λ Σ_m [ β_m X^m ⊗ (b†)^{N-m} + conj(β_m) (X†)^m ⊗ b^{N-m} ],
// hermitian by pairing; the β constraint makes the two sums a reindexing of
// each other.  Throws MissingParams when betas are absent.
ComplexMatrix build_hamiltonian_alt(const ModelParams& params, const Truncation& trunc,
                                    RepChoice rep = RepChoice::XDiagonal);

// ||[A, B]||_F restricted to the interior Fock levels n <= n_max - margin on
// both sides (projects away truncation-edge artifacts of raised powers).
double interior_commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b,
                                int n_levels, const Truncation& trunc, int margin);

} // namespace zrabi
