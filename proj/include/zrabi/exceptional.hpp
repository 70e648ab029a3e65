// exceptional.hpp — closed-form isolated energies, indicial exponents, and the
// numerical search for parameter values where an oracle level hits the ladder
//
// The isolated-energy ladder is E = Ω 𝒩 - λ²/Ω for integer 𝒩 >= 0, equally
// spaced by Ω.  The Frobenius-type indicial exponent at the finite singular
// points is ρ = E/Ω + λ²/Ω², an integer exactly on the ladder.

#pragma once

#include "zrabi/params.hpp"

#include <string>

namespace zrabi {

// Ω 𝒩 - λ²/Ω; requires Omega > 0.
double exceptional_energy(int script_n, double omega_boson, double lambda);

// ρ = E/Ω + λ²/Ω²; requires Omega > 0.
double indicial_exponent(double e, double omega_boson, double lambda);

// True iff E sits within tol of the ladder point with 𝒩 = round((E + λ²/Ω)/Ω) >= 0.
bool is_near_exceptional(double e, double omega_boson, double lambda, double tol = 1e-6);

struct SweepSpec {
    std::string param;  // "Delta" or "phi"
    double lo = 0.0;
    double hi = 1.0;
    int grid_points = 121;
};

struct CrossingResult {
    int script_n = 0;
    std::string param;
    double value = 0.0;          // refined sweep-parameter value
    double e_exceptional = 0.0;  // ladder energy targeted
    double e_found = 0.0;        // closest oracle eigenvalue at the optimum
    double gap = 0.0;            // |e_found - e_exceptional|
    int degeneracy_count = 0;    // eigenvalues within 1e-6 of the ladder energy
    double indicial = 0.0;       // indicial exponent at e_found
    int sector = -1;             // sector of the crossing level (N = 3 only)
    bool polynomial_evidence = false; // forward-recursion drop after n = 𝒩
};

// Scans the swept parameter for min_i |E_i(p) - E_ladder| over the oracle
// spectrum, golden-section refines the best grid point to |Δp| < 1e-8, and
// reports the measured degeneracy at the optimum.  Throws NoCrossingFound if
// the refined gap is not below 1e-4.
CrossingResult find_exceptional_crossing(int script_n, const ModelParams& base,
                                         const SweepSpec& sweep, const Truncation& trunc);

} // namespace zrabi
