// clock.hpp — generalized Pauli (clock/shift) operators Z, X on C^N
//
// Z and X obey Z^N = X^N = 1, Z† = Z^{N-1}, X† = X^{N-1} and the Weyl
// relation ZX = ω XZ with ω = e^{2πi/N}.  Two diagonal gauges are provided:
// ZDiagonal (Z = diag(1, ω, ..., ω^{N-1}), X the cyclic shift) and XDiagonal
// (X† = diag(1, ω, ..., ω^{N-1}), Z the cyclic shift).

#pragma once

#include "zrabi/matrix.hpp"

#include <vector>

namespace zrabi {

enum class RepChoice { ZDiagonal, XDiagonal };

struct ClockPair {
    int dim = 0;
    ComplexMatrix Z;
    ComplexMatrix X;
    RepChoice rep = RepChoice::XDiagonal;
};

// ω = e^{2πi/N}; throws InvalidDimension for N < 2.
Complex omega(int n);

// Table ω^k, k = 0..N-1, each computed from its own angle (no phase drift);
// cardinal angles come out exact.
std::vector<Complex> unit_roots(int n);

ClockPair make_clock_pair(int n, RepChoice rep);

// True iff Z^N = X^N = 1, Z† = Z^{N-1}, X† = X^{N-1} and ZX = ω XZ all hold
// entrywise within tol, and the rep-defining diagonal matches.
bool verify_weyl_relations(const ClockPair& pair, double tol);

} // namespace zrabi
