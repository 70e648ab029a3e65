// eigensolver.hpp — dense complex-Hermitian eigensolver (cyclic Jacobi) and
// the spectrum / truncation-convergence harness built on it
//
// The solver is the ground truth for every analytic result in this project,
// so it is kept self-contained and auditable: cyclic sweeps over index pairs,
// each pair annihilated by an exact 2x2 Hermitian rotation, until the
// off-diagonal Frobenius norm falls below tol_rel * ||M||_F.

#pragma once

#include "zrabi/params.hpp"

#include <optional>
#include <vector>

namespace zrabi {

struct JacobiOptions {
    double target_tol_rel = 1e-14;   // sweep until off-norm below this ...
    double accept_tol_rel = 1e-12;   // ... but accept anything below this
    int max_sweeps = 60;
};

struct EigenResult {
    RealVector values;                    // ascending
    std::optional<ComplexMatrix> vectors; // eigencolumns, same order
    double residual = 0.0;                // max_i ||M v_i - λ_i v_i||_2 (with vectors)
    double offdiag_final = 0.0;
    int sweeps = 0;
};

// Throws NotHermitian for non-hermitian input, NoConvergence if the sweep cap
// is hit while the off-norm is still above accept_tol_rel * ||M||_F.
EigenResult eig_hermitian(const ComplexMatrix& m, bool want_vectors,
                          const JacobiOptions& opt = {});

enum class LevelKind { Regular, Exceptional };

struct EnergyLevel {
    double E = 0.0;
    int sector = -1;
    LevelKind kind = LevelKind::Regular;
    int degeneracy = 1;       // size of the energy cluster this level sits in
    double sector_weight = 0.0;
};

// Lowest n_levels eigenvalues of the full Hamiltonian, sector-tagged by the
// overlap of eigenvectors with the sector-transform columns.  Degenerate
// clusters (width < cluster_tol) are tagged through their per-sector weight
// sums, which must be near-integers; otherwise TruncationTooSmall.
// Requires n_levels <= dim/4.
std::vector<EnergyLevel> spectrum(const ModelParams& params, const Truncation& trunc,
                                  int n_levels, double cluster_tol = 1e-7);

struct ConvergenceReport {
    std::vector<int> n_max_list;
    std::vector<std::vector<double>> level_table; // level_table[level][i] = E at n_max_list[i]
    std::vector<double> drift_last;               // |ΔE| between the two largest truncations
    int converged_count = 0;
    double tol = 0.0;
};

// Per-level energy drift across increasing truncations; n_max_list must be
// strictly increasing with length >= 2.
ConvergenceReport convergence_study(const ModelParams& params, const std::vector<int>& n_max_list,
                                    double tol, int n_levels = 30);

// Cluster multiplicities of an ascending eigenvalue list: result[i] is the
// size of the cluster containing values[i].
std::vector<int> cluster_degeneracies(const RealVector& values, double cluster_tol);

} // namespace zrabi
