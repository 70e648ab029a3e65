#include "zrabi/cf_solver.hpp"

#include "zrabi/clock.hpp"
#include "zrabi/errors.hpp"
#include "zrabi/exceptional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zrabi {

namespace {

struct CoeffContext {
    double omega_boson;
    double delta;
    double lambda;
    double e;
    Complex a1, a2;
    std::vector<Complex> roots;
    int s;

    Complex a_at(int n) const {
        const int base = (n + s) % 3;
        return (static_cast<double>(n) * omega_boson
                + delta * (a2 * roots[static_cast<std::size_t>(base)]
                           + a1 * roots[static_cast<std::size_t>((2 * base) % 3)])
                - e)
               / (lambda * (n + 1));
    }
    double b_at(int n) const { return 1.0 / (n + 1); }
};

CoeffContext make_context(int s, double e, const ModelParams& params) {
    if (params.N != 3)
        throw UnsupportedDimension("cf_solver: the recurrence is implemented for N = 3 only");
    if (s < 0 || s > 2)
        throw PreconditionError("cf_solver: sector must be 0, 1 or 2");
    if (!(params.lambda > 0.0))
        throw CouplingZero("cf_solver: lambda = 0 has no continued-fraction form; "
                           "use the decoupled closed form instead");
    params.validate();
    return CoeffContext{params.Omega, params.Delta, params.lambda, e,
                        params.alphas[0], params.alphas[1], unit_roots(3), s};
}

// S_0 from one backward pass of depth D (zero tail):
// S_{n-1} = -B_n / (A_n + S_n), n = D..1.
Complex backward_pass(const CoeffContext& ctx, int depth) {
    Complex sn = 0.0;
    for (int n = depth; n >= 1; --n)
        sn = -ctx.b_at(n) / (ctx.a_at(n) + sn);
    return sn;
}

} // namespace

CoeffPair recurrence_coeff(int s, int n, double e, const ModelParams& params) {
    if (n < 0)
        throw PreconditionError("recurrence_coeff: n must be >= 0");
    const auto ctx = make_context(s, e, params);
    return {ctx.a_at(n), ctx.b_at(n)};
}

S0Result eval_cf_ratio(int s, double e, const ModelParams& params, const CfOptions& opt) {
    const auto ctx = make_context(s, e, params);
    Complex prev = backward_pass(ctx, opt.depth_min);
    for (int depth = 2 * opt.depth_min; depth <= opt.depth_max; depth *= 2) {
        const Complex cur = backward_pass(ctx, depth);
        // Absolute certificate, loosened to relative only where the ratio
        // itself is huge (close to one of its poles).
        if (std::abs(cur - prev) < opt.cf_tol * std::max(1.0, std::abs(cur)))
            return {cur, true, depth};
        prev = cur;
    }
    return {prev, false, opt.depth_max};
}

std::string to_string(CfFlag flag) {
    switch (flag) {
        case CfFlag::Regular: return "Regular";
        case CfFlag::NearPole: return "NearPole";
        case CfFlag::NotConverged: return "NotConverged";
    }
    return "?";
}

FResult spectral_function(int s, double e, const ModelParams& params, const CfOptions& opt) {
    const auto ctx = make_context(s, e, params);
    const S0Result s0 = eval_cf_ratio(s, e, params, opt);
    FResult out;
    out.S0 = s0.value;
    out.F = s0.value + ctx.a_at(0);
    if (!s0.converged || !std::isfinite(out.F.real()) || !std::isfinite(out.F.imag()))
        out.flag = CfFlag::NotConverged;
    else if (std::abs(s0.value) > opt.pole_threshold)
        out.flag = CfFlag::NearPole;
    else
        out.flag = CfFlag::Regular;
    return out;
}

namespace {

// The recurrence coefficients are real on the real axis, so all sign logic
// below runs on Re G; the imaginary parts are rounding noise.

int auto_split_index(double e, const ModelParams& params) {
    const double level = (e + params.lambda * params.lambda / params.Omega
                          + 2.0 * std::abs(params.Delta)) / params.Omega;
    return std::max(8, static_cast<int>(std::floor(level)) + 8);
}

Complex forward_head_ratio(const CoeffContext& ctx, int n0) {
    // r_n = K_{n+1}/K_n with K_0 = 1, K_1 = -A_0; IEEE handles transient
    // zeros in the chain (inf propagates and recovers).
    Complex r = -ctx.a_at(0);
    for (int n = 1; n <= n0; ++n)
        r = -ctx.a_at(n) - ctx.b_at(n) / r;
    return r;
}

SplitResult matching_eval(const CoeffContext& ctx, int s, double e, const ModelParams& params,
                          int n0, const CfOptions& opt) {
    SplitResult out;
    out.n0 = n0 < 0 ? auto_split_index(e, params) : n0;
    out.head = forward_head_ratio(ctx, out.n0);

    // Minimal tail S_{n0} by backward recursion with the usual doubling
    // certificate.
    const auto tail_at = [&](int depth) {
        Complex sn = 0.0;
        for (int n = depth; n >= out.n0 + 1; --n)
            sn = -ctx.b_at(n) / (ctx.a_at(n) + sn);
        return sn;
    };
    Complex prev = tail_at(out.n0 + opt.depth_min);
    bool converged = false;
    for (int extra = 2 * opt.depth_min; out.n0 + extra <= opt.depth_max; extra *= 2) {
        const Complex cur = tail_at(out.n0 + extra);
        if (std::abs(cur - prev) < opt.cf_tol * std::max(1.0, std::abs(cur))) {
            prev = cur;
            converged = true;
            break;
        }
        prev = cur;
    }
    out.tail = prev;
    out.G = out.head - out.tail;

    if (!converged || !std::isfinite(out.G.real()) || !std::isfinite(out.G.imag()))
        out.flag = CfFlag::NotConverged;
    else if (std::abs(out.head) > opt.pole_threshold || std::abs(out.tail) > opt.pole_threshold)
        out.flag = CfFlag::NearPole;
    else
        out.flag = CfFlag::Regular;
    return out;
}

// Bisection for a zero of Re G on [lo, hi] with opposite edge signs, at a
// fixed split index.  Pole signature: |G| grows across the interval instead
// of dipping, in which case the refined location lands in `poles`.
void refine_bracket(int s, const ModelParams& params, const CfOptions& opt, int n0,
                    double lo, double hi, double g_lo, double ambient,
                    std::vector<RootRecord>& roots, std::vector<double>& poles) {
    const auto ctx = make_context(s, lo, params);
    const auto eval = [&](double e) {
        CoeffContext c = ctx;
        c.e = e;
        return matching_eval(c, s, e, params, n0, opt);
    };

    while (hi - lo > opt.bisect_tol * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        const SplitResult gm = eval(mid);
        if (gm.flag == CfFlag::NotConverged)
            return;
        if ((gm.G.real() < 0.0) == (g_lo < 0.0)) {
            lo = mid;
            g_lo = gm.G.real();
        } else {
            hi = mid;
        }
    }

    const double root = 0.5 * (lo + hi);
    const SplitResult g_root = eval(root);
    if (g_root.flag == CfFlag::NotConverged)
        return;
    if (std::abs(g_root.G) > std::max(1.0, ambient)) { // grew across the interval
        poles.push_back(root);
        return;
    }
    const double h = 1e4 * opt.bisect_tol * std::max(1.0, std::abs(root));
    const SplitResult g_m = eval(root - h);
    const SplitResult g_p = eval(root + h);
    const double slope = std::abs(g_p.G.real() - g_m.G.real()) / (2.0 * h);
    const double newton = std::abs(g_root.G) / std::max(slope, 1e-300);
    if (std::abs(g_root.G) >= opt.root_tol && newton >= opt.newton_tol) {
        poles.push_back(root);
        return;
    }

    RootRecord rec;
    rec.s = s;
    rec.E = root;
    rec.residual = std::abs(g_root.G);
    rec.newton_step = newton;
    rec.bracket_lo = lo;
    rec.bracket_hi = hi;
    roots.push_back(rec);
}

void dedupe_sorted(std::vector<RootRecord>& roots, double tol) {
    std::sort(roots.begin(), roots.end(),
              [](const RootRecord& a, const RootRecord& b) { return a.E < b.E; });
    std::vector<RootRecord> unique;
    for (const auto& r : roots) {
        if (unique.empty() || r.E - unique.back().E > tol)
            unique.push_back(r);
        else if (r.newton_step < unique.back().newton_step)
            unique.back() = r;
    }
    roots.swap(unique);
}

// One sweep of [lo, hi] at the given step: sample Re G, bracket its sign
// changes (per-cell fixed split index), refine each bracket.
void scan_range(int s, const ModelParams& params, const CfOptions& opt,
                double lo, double hi, double step,
                std::vector<RootRecord>& roots, std::vector<double>& poles) {
    auto ctx = make_context(s, lo, params);
    const auto eval = [&](double e, int n0) {
        ctx.e = e;
        return matching_eval(ctx, s, e, params, n0, opt);
    };

    const int npts = static_cast<int>(std::floor((hi - lo) / step)) + 1;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(npts) + 1);
    for (int i = 0; i < npts; ++i)
        grid.push_back(lo + i * step);
    if (grid.back() < hi - 1e-12 * std::max(1.0, std::abs(hi)))
        grid.push_back(hi);

    std::vector<SplitResult> values;
    values.reserve(grid.size());
    for (double e : grid)
        values.push_back(eval(e, -1));

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const SplitResult& a = values[i];
        SplitResult b = values[i + 1];
        if (a.flag == CfFlag::NotConverged)
            continue;
        if (b.n0 != a.n0)
            b = eval(grid[i + 1], a.n0); // keep G continuous across the cell
        if (b.flag == CfFlag::NotConverged)
            continue;
        const double ga = a.G.real();
        const double gb = b.G.real();
        if (ga == 0.0 || (ga < 0.0) == (gb < 0.0))
            continue;
        const double ambient = std::max(std::abs(a.G), std::abs(b.G));
        refine_bracket(s, params, opt, a.n0, grid[i], grid[i + 1], ga, ambient, roots, poles);
    }
}

} // namespace

SplitResult matching_function(int s, double e, const ModelParams& params, int n0,
                              const CfOptions& opt) {
    auto ctx = make_context(s, e, params);
    return matching_eval(ctx, s, e, params, n0, opt);
}

SpectralScan find_regular_energies(int s, double e_lo, double e_hi, double grid_step,
                                   const ModelParams& params, const CfOptions& opt) {
    if (!(e_lo < e_hi))
        throw PreconditionError("find_regular_energies: need e_lo < e_hi");
    if (!(grid_step > 0.0))
        throw PreconditionError("find_regular_energies: need grid_step > 0");
    make_context(s, e_lo, params); // validates N, sector, lambda

    SpectralScan scan;
    scan.s = s;
    scan.grid_step = grid_step;

    // Record of the spectral function itself on the grid.
    const int npts = static_cast<int>(std::floor((e_hi - e_lo) / grid_step)) + 1;
    scan.e_grid.reserve(static_cast<std::size_t>(npts) + 1);
    for (int i = 0; i < npts; ++i)
        scan.e_grid.push_back(e_lo + i * grid_step);
    if (scan.e_grid.back() < e_hi - 1e-12 * std::max(1.0, std::abs(e_hi)))
        scan.e_grid.push_back(e_hi);
    for (double e : scan.e_grid) {
        const FResult f = spectral_function(s, e, params, opt);
        scan.f_values.push_back(f.F);
        scan.flags.push_back(f.flag);
    }

    scan_range(s, params, opt, e_lo, e_hi, grid_step, scan.roots, scan.poles);
    dedupe_sorted(scan.roots, 100.0 * opt.bisect_tol);

    // Close root pairs get one extra sweep at grid_step/4 in case a third
    // zero fell between grid points.
    int rescans = 0;
    std::vector<RootRecord> extra;
    for (std::size_t i = 0; i + 1 < scan.roots.size(); ++i) {
        if (scan.roots[i + 1].E - scan.roots[i].E >= 3.0 * grid_step)
            continue;
        ++rescans;
        const double lo = std::max(e_lo, scan.roots[i].E - grid_step);
        const double hi = std::min(e_hi, scan.roots[i + 1].E + grid_step);
        scan_range(s, params, opt, lo, hi, grid_step / 4.0, extra, scan.poles);
    }
    if (!extra.empty()) {
        scan.roots.insert(scan.roots.end(), extra.begin(), extra.end());
        dedupe_sorted(scan.roots, 100.0 * opt.bisect_tol);
    }
    std::sort(scan.poles.begin(), scan.poles.end());

    for (auto& r : scan.roots)
        r.near_exceptional =
            is_near_exceptional(r.E, params.Omega, params.lambda, opt.exceptional_tol);

    scan.notes = "grid_step=" + std::to_string(grid_step) + "; poles="
               + std::to_string(scan.poles.size()) + "; local_rescans="
               + std::to_string(rescans)
               + "; pole pairs separated by less than one grid step may hide roots";
    return scan;
}

MinimalSolution minimal_solution(int s, double e, const ModelParams& params, int n_max,
                                 const CfOptions& opt) {
    if (n_max < 10)
        throw PreconditionError("minimal_solution: need n_max >= 10");
    const auto ctx = make_context(s, e, params);

    // One backward pass gives every ratio S_n = K_{n+1}/K_n below the start
    // depth; the zero-tail error contracts away long before n_max.
    const S0Result cert = eval_cf_ratio(s, e, params, opt);
    const int depth = std::max(2 * cert.depth, n_max + 64);
    std::vector<Complex> ratios(static_cast<std::size_t>(n_max) + 1);
    Complex sn = 0.0;
    for (int n = depth; n >= 1; --n) {
        sn = -ctx.b_at(n) / (ctx.a_at(n) + sn);
        if (n - 1 <= n_max)
            ratios[static_cast<std::size_t>(n - 1)] = sn;
    }

    MinimalSolution sol;
    sol.s = s;
    sol.E = e;
    sol.coeffs.resize(static_cast<std::size_t>(n_max) + 1);
    sol.coeffs[0] = 1.0;
    for (int n = 0; n < n_max; ++n)
        sol.coeffs[static_cast<std::size_t>(n + 1)] =
            ratios[static_cast<std::size_t>(n)] * sol.coeffs[static_cast<std::size_t>(n)];

    sol.boundary_residual = std::abs(sol.coeffs[1] + ctx.a_at(0) * sol.coeffs[0]);
    if (sol.boundary_residual > 1e-6)
        throw NotAnEigenvalue("minimal_solution: n = 0 relation violated by "
                              + std::to_string(sol.boundary_residual) + " at E = "
                              + std::to_string(e));

    // Minimal-branch tail bound |S_n| < 2λ/(Ωn) once the energy and level
    // offsets are negligible against nΩ.
    const int n_asym = std::max(
        40, static_cast<int>(std::ceil(
                4.0 * (std::abs(e) + 2.0 * std::abs(params.Delta) + params.Omega) / params.Omega)));
    sol.tail_ratio_check = n_asym < n_max;
    for (int n = n_asym; n < n_max; ++n) {
        if (std::abs(ratios[static_cast<std::size_t>(n)]) >= 2.0 * params.lambda / (params.Omega * n)) {
            sol.tail_ratio_check = false;
            break;
        }
    }

    // Entirety proxy: partial sums of |K_n|^2 n! must be flat over the last
    // decade of n.  Terms evaluated in log space (n! overflows past 170).
    std::vector<double> terms(sol.coeffs.size());
    for (std::size_t n = 0; n < sol.coeffs.size(); ++n) {
        const double mag = std::abs(sol.coeffs[n]);
        terms[n] = mag == 0.0 ? 0.0
                              : std::exp(2.0 * std::log(mag) + std::lgamma(static_cast<double>(n) + 1.0));
    }
    double partial = 0.0;
    double at_90 = 0.0;
    const std::size_t idx90 = static_cast<std::size_t>(std::floor(0.9 * n_max));
    for (std::size_t n = 0; n < terms.size(); ++n) {
        partial += terms[n];
        if (n == idx90)
            at_90 = partial;
    }
    sol.norm_plateau = partial > 0.0 && (partial - at_90) <= 1e-12 * partial;
    return sol;
}

std::vector<Complex> forward_coefficients(int s, double e, const ModelParams& params, int n_max) {
    const auto ctx = make_context(s, e, params);
    std::vector<Complex> k(static_cast<std::size_t>(n_max) + 1);
    k[0] = 1.0;
    if (n_max >= 1)
        k[1] = -ctx.a_at(0);
    for (int n = 1; n < n_max; ++n)
        k[static_cast<std::size_t>(n + 1)] =
            -ctx.a_at(n) * k[static_cast<std::size_t>(n)] - ctx.b_at(n) * k[static_cast<std::size_t>(n - 1)];
    return k;
}

std::vector<Complex> forward_ratios(int s, double e, const ModelParams& params, int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi < n_lo)
        throw PreconditionError("forward_ratios: need 1 <= n_lo <= n_hi");
    const auto ctx = make_context(s, e, params);
    // r_n = K_{n+1}/K_n: r_0 = -A_0, r_n = -A_n - B_n / r_{n-1}.
    Complex r = -ctx.a_at(0);
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = 1; n <= n_hi; ++n) {
        r = -ctx.a_at(n) - ctx.b_at(n) / r;
        if (n >= n_lo)
            out.push_back(r);
    }
    return out;
}

} // namespace zrabi
