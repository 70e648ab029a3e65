#include "zrabi/exceptional.hpp"

#include "zrabi/cf_solver.hpp"
#include "zrabi/eigensolver.hpp"
#include "zrabi/errors.hpp"
#include "zrabi/fulton_gouterman.hpp"
#include "zrabi/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace zrabi {

double exceptional_energy(int script_n, double omega_boson, double lambda) {
    if (!(omega_boson > 0.0))
        throw PreconditionError("exceptional_energy: Omega must be positive");
    if (script_n < 0)
        throw PreconditionError("exceptional_energy: script_n must be >= 0");
    return omega_boson * script_n - lambda * lambda / omega_boson;
}

double indicial_exponent(double e, double omega_boson, double lambda) {
    if (!(omega_boson > 0.0))
        throw PreconditionError("indicial_exponent: Omega must be positive");
    return e / omega_boson + lambda * lambda / (omega_boson * omega_boson);
}

bool is_near_exceptional(double e, double omega_boson, double lambda, double tol) {
    const double rho = indicial_exponent(e, omega_boson, lambda);
    const long n = std::lround(rho);
    if (n < 0)
        return false;
    return std::abs(e - exceptional_energy(static_cast<int>(n), omega_boson, lambda)) < tol;
}

namespace {

ModelParams with_sweep_value(const ModelParams& base, const std::string& param, double value) {
    ModelParams p = base;
    if (param == "Delta") {
        p.Delta = value;
    } else { // "phi"
        p.phi = value;
        p.alphas = {std::polar(1.0, value), std::polar(1.0, -value)};
    }
    p.validate();
    return p;
}

struct GapEval {
    double gap = std::numeric_limits<double>::infinity();
    double e_found = 0.0;
    int sector = -1;
    std::vector<double> energies;       // eigenvalues near the ladder point
    std::vector<int> sectors;
};

// Oracle eigenvalues at one sweep value.  For N = 3 the sector blocks are
// diagonalized separately (same multiset as the full matrix, sector tags for
// free); otherwise the full Hamiltonian is used.
GapEval eval_gap(const ModelParams& p, const Truncation& trunc, double e_target) {
    GapEval g;
    if (p.N == 3) {
        for (int s = 0; s < 3; ++s) {
            const auto block = sector_hamiltonian(p, s, trunc);
            const auto eig = eig_hermitian(block.matrix, false);
            for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
                g.energies.push_back(eig.values(i));
                g.sectors.push_back(s);
            }
        }
    } else {
        const auto eig = eig_hermitian(build_hamiltonian(p, trunc), false);
        for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
            g.energies.push_back(eig.values(i));
            g.sectors.push_back(-1);
        }
    }
    for (std::size_t i = 0; i < g.energies.size(); ++i) {
        const double d = std::abs(g.energies[i] - e_target);
        if (d < g.gap) {
            g.gap = d;
            g.e_found = g.energies[i];
            g.sector = g.sectors[i];
        }
    }
    return g;
}

} // namespace

CrossingResult find_exceptional_crossing(int script_n, const ModelParams& base,
                                         const SweepSpec& sweep, const Truncation& trunc) {
    base.validate();
    if (sweep.param != "Delta" && sweep.param != "phi")
        throw PreconditionError("find_exceptional_crossing: sweep parameter must be Delta or phi");
    if (sweep.param == "phi" && base.N != 3)
        throw PreconditionError("find_exceptional_crossing: phi sweep requires N = 3");
    if (!(sweep.lo <= sweep.hi) || sweep.grid_points < 3)
        throw PreconditionError("find_exceptional_crossing: bad sweep range/grid");

    const double e_target = exceptional_energy(script_n, base.Omega, base.lambda);
    const auto gap_at = [&](double p) { return eval_gap(with_sweep_value(base, sweep.param, p), trunc, e_target); };

    // Coarse grid.
    const int npts = sweep.grid_points;
    double best_p = sweep.lo;
    double best_gap = std::numeric_limits<double>::infinity();
    int best_idx = 0;
    std::vector<double> grid(static_cast<std::size_t>(npts));
    for (int j = 0; j < npts; ++j) {
        const double p = sweep.lo + (sweep.hi - sweep.lo) * j / (npts - 1);
        grid[static_cast<std::size_t>(j)] = p;
        const double gap = gap_at(p).gap;
        if (gap < best_gap) {
            best_gap = gap;
            best_p = p;
            best_idx = j;
        }
    }

    // Golden-section refinement on the bracketing grid interval.
    double lo = grid[static_cast<std::size_t>(std::max(0, best_idx - 1))];
    double hi = grid[static_cast<std::size_t>(std::min(npts - 1, best_idx + 1))];
    const double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double g1 = gap_at(x1).gap;
    double g2 = gap_at(x2).gap;
    while (hi - lo > 1e-8) {
        if (g1 < g2) {
            hi = x2; x2 = x1; g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = gap_at(x1).gap;
        } else {
            lo = x1; x1 = x2; g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = gap_at(x2).gap;
        }
    }
    const double p_star = 0.5 * (lo + hi);
    const GapEval at_opt = gap_at(p_star);
    double refined_p = p_star;
    GapEval refined = at_opt;
    if (best_gap < refined.gap) { // keep the better of grid vs refined
        refined = gap_at(best_p);
        refined_p = best_p;
    }

    if (refined.gap > 1e-4)
        throw NoCrossingFound("find_exceptional_crossing: min gap " + std::to_string(refined.gap)
                              + " over " + sweep.param + " in [" + std::to_string(sweep.lo) + ", "
                              + std::to_string(sweep.hi) + "]");

    CrossingResult result;
    result.script_n = script_n;
    result.param = sweep.param;
    result.value = refined_p;
    result.e_exceptional = e_target;
    result.e_found = refined.e_found;
    result.gap = refined.gap;
    result.sector = refined.sector;
    result.indicial = indicial_exponent(refined.e_found, base.Omega, base.lambda);
    result.degeneracy_count = static_cast<int>(std::count_if(
        refined.energies.begin(), refined.energies.end(),
        [&](double e) { return std::abs(e - e_target) < 1e-6; }));

    // Supporting evidence only: does the forward recursion collapse right
    // after n = 𝒩 at the crossing?  Recorded, never asserted.
    if (base.N == 3 && base.lambda > 0.0 && refined.sector >= 0) {
        const ModelParams p_at = with_sweep_value(base, sweep.param, refined_p);
        const auto k = forward_coefficients(refined.sector, e_target, p_at, script_n + 5);
        double head = 0.0, tail = 0.0;
        for (int n = 0; n <= script_n; ++n)
            head = std::max(head, std::abs(k[static_cast<std::size_t>(n)]));
        for (int n = script_n + 1; n <= std::min<int>(script_n + 4, static_cast<int>(k.size()) - 1); ++n)
            tail = std::max(tail, std::abs(k[static_cast<std::size_t>(n)]));
        result.polynomial_evidence = tail > 0.0 ? head / tail > 1e6 : true;
    }
    return result;
}

} // namespace zrabi
