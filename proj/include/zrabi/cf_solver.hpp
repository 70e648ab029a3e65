// cf_solver.hpp — regular energies of the three-state model from
// minimal-solution continued fractions
//
// The sector Hamiltonian acting on power series Σ K_n z^n yields the
// three-term recurrence
//   K_{n+1} + A_n K_n + B_n K_{n-1} = 0,
//   A_n = [nΩ + Δ α_2 ω^{n+s} + Δ α_1 ω^{2(n+s)} - E] / (λ(n+1)),
//   B_n = 1/(n+1),
// whose two solution branches grow like (-Ω/λ)^n (dominant) and decay like
// (-λ/Ω)^n / n! (minimal).  Backward recursion with a zero tail selects the
// minimal branch, its leading ratio S_0 = K_1/K_0 equals the continued
// fraction -B_1/(A_1-) B_2/(A_2-) ..., and an energy is in the spectrum
// exactly when that ratio also satisfies the n = 0 relation, i.e. when
//   F_s(E) = S_0(E) + A_0(E) = 0.
// Only these roots give entire (finite Bargmann norm) wavefunctions.
//
// Only N = 3 is implemented: the power-series recurrence closes at three
// terms for three sectors; for larger N the sector recurrence couples N
// terms and needs a higher-order minimal-solution theory.

#pragma once

#include "zrabi/params.hpp"

#include <string>
#include <vector>

namespace zrabi {

struct CfOptions {
    double cf_tol = 1e-12;       // depth-doubling convergence certificate
    int depth_min = 64;
    int depth_max = 1 << 16;
    double pole_threshold = 1e6; // |S_0| above this flags a pole
    double root_tol = 1e-6;      // |F| cap at an accepted wide root
    double newton_tol = 1e-8;    // |F/F'| cap: distance-to-zero certificate
    double bisect_tol = 1e-12;   // final bracket width
    double exceptional_tol = 1e-6;
};

// Recurrence coefficients at index n; throws CouplingZero for λ = 0 and
// UnsupportedDimension for N != 3.
struct CoeffPair {
    Complex A;
    double B;
};
CoeffPair recurrence_coeff(int s, int n, double e, const ModelParams& params);

// Generator form of the same coefficients, fixed (sector, params).
struct RecurrenceCoeffs {
    int s = 0;
    const ModelParams* params = nullptr;
    CoeffPair at(int n, double e) const { return recurrence_coeff(s, n, e, *params); }
};

struct S0Result {
    Complex value;
    bool converged = false;
    int depth = 0;
};

// Continued fraction by backward recursion from a zero tail, doubling the
// depth from depth_min until two successive evaluations agree within cf_tol
// (capped at depth_max; converged = false if the cap is hit).
S0Result eval_cf_ratio(int s, double e, const ModelParams& params, const CfOptions& opt = {});

enum class CfFlag { Regular, NearPole, NotConverged };
std::string to_string(CfFlag flag);

struct FResult {
    Complex F;
    Complex S0;
    CfFlag flag = CfFlag::Regular;
};

// F_s(E) = S_0(E) + A_0(E).
FResult spectral_function(int s, double e, const ModelParams& params, const CfOptions& opt = {});

// Matching form of the same eigenvalue condition evaluated at split index n0:
//   G(E) = K_{n0+1}/K_{n0} (forward from the n = 0 boundary) - S_{n0} (minimal
//   tail).
// G and F have identical zeros, but while F degenerates into unresolvable
// pole-zero dipoles for levels whose Fock-0 weight underflows (weak coupling,
// high levels), G evaluated with n0 inside the level's Fock support keeps
// O(1) residues and well-separated poles.  n0 < 0 picks
// floor((E + λ²/Ω + 2|Δ|)/Ω) + 8 automatically.
struct SplitResult {
    Complex G;
    Complex head;
    Complex tail;
    int n0 = 0;
    CfFlag flag = CfFlag::Regular;
};
SplitResult matching_function(int s, double e, const ModelParams& params, int n0 = -1,
                              const CfOptions& opt = {});

struct RootRecord {
    int s = 0;
    double E = 0.0;
    double residual = 0.0;       // |F| at the refined point
    double newton_step = 0.0;    // |F/F'|: estimated distance to the true zero
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool near_exceptional = false; // within exceptional_tol of the isolated-energy
                                   // ladder; cross-check against that module
};

struct SpectralScan {
    int s = 0;
    std::vector<double> e_grid;
    std::vector<Complex> f_values;
    std::vector<CfFlag> flags;
    std::vector<RootRecord> roots;
    std::vector<double> poles;   // rejected-bracket locations (pole candidates)
    double grid_step = 0.0;
    std::string notes; // missed-root risk and refinement record
};

// Root search over [e_lo, e_hi]: samples F on the grid for the record,
// brackets sign changes of Re G (the well-conditioned matching form of the
// same condition), bisects each bracket to bisect_tol, rejects brackets
// where |G| grows across the interval (pole signature), and re-scans at
// grid_step/4 around root pairs closer than 3 grid steps.  A root is
// accepted when |G| < root_tol or the Newton correction |G/G'| pins the
// zero within newton_tol.
SpectralScan find_regular_energies(int s, double e_lo, double e_hi, double grid_step,
                                   const ModelParams& params, const CfOptions& opt = {});

struct MinimalSolution {
    int s = 0;
    double E = 0.0;
    std::vector<Complex> coeffs;    // K_0..K_n, K_0 = 1
    double boundary_residual = 0.0; // |K_1 + A_0 K_0|
    bool tail_ratio_check = false;  // |K_{n+1}/K_n| < 2λ/(Ωn) in the asymptotic window
    bool norm_plateau = false;      // Σ |K_n|² n! stationary over the last decade
};

// Minimal-branch coefficients at a refined root via the ratio chain
// K_{n+1} = S_n K_n; throws NotAnEigenvalue when the n = 0 relation is
// violated beyond 1e-6.
MinimalSolution minimal_solution(int s, double e, const ModelParams& params, int n_max,
                                 const CfOptions& opt = {});

// Plain forward recursion K_0 = 1, K_1 = -A_0, K_{n+1} = -A_n K_n - B_n K_{n-1};
// away from the spectrum this runs up the dominant branch.
std::vector<Complex> forward_coefficients(int s, double e, const ModelParams& params, int n_max);

// Successive ratios K_{n+1}/K_n of the forward recursion for n in
// [n_lo, n_hi]; overflow-free (ratio recurrence).
std::vector<Complex> forward_ratios(int s, double e, const ModelParams& params, int n_lo, int n_hi);

} // namespace zrabi
