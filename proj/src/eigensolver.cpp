#include "zrabi/eigensolver.hpp"

#include "zrabi/errors.hpp"
#include "zrabi/exceptional.hpp"
#include "zrabi/fulton_gouterman.hpp"
#include "zrabi/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace zrabi {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double sq = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j)
                sq += std::norm(a(i, j));
    return std::sqrt(sq);
}

// One two-sided rotation J annihilating a(p,q).  J restricted to the (p,q)
// plane is [[c, s], [-s e^{-iθ}, c e^{-iθ}]] with a(p,q) = ρ e^{iθ}; the
// diagonal moves to app - tρ, aqq + tρ.
void rotate(ComplexMatrix& a, ComplexMatrix* v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double rho = std::abs(apq);
    if (rho == 0.0)
        return;
    const Complex phase = apq / rho;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * rho);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex jqp = -s * std::conj(phase); // J(q,p)
    const Complex jqq = c * std::conj(phase);  // J(q,q)

    const Eigen::Index n = a.rows();
    // A <- A J (columns p, q)
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex aip = a(i, p);
        const Complex aiq = a(i, q);
        a(i, p) = c * aip + jqp * aiq;
        a(i, q) = s * aip + jqq * aiq;
    }
    // A <- J† A (rows p, q)
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex apj = a(p, j);
        const Complex aqj = a(q, j);
        a(p, j) = c * apj + std::conj(jqp) * aqj;
        a(q, j) = s * apj + std::conj(jqq) * aqj;
    }
    // Pin the analytically known values; kills accumulated rounding in the
    // imaginary parts of the diagonal.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * rho;
    a(q, q) = aqq + t * rho;

    if (v) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex vip = (*v)(i, p);
            const Complex viq = (*v)(i, q);
            (*v)(i, p) = c * vip + jqp * viq;
            (*v)(i, q) = s * vip + jqq * viq;
        }
    }
}

} // namespace

EigenResult eig_hermitian(const ComplexMatrix& m, bool want_vectors, const JacobiOptions& opt) {
    if (m.rows() != m.cols())
        throw DimensionError("eig_hermitian: matrix must be square");
    const Eigen::Index n = m.rows();
    const double herm_err = hermiticity_error(m);
    const double scale = std::max(1.0, max_abs(m));
    if (herm_err > 1e-10 * scale)
        throw NotHermitian("eig_hermitian: ||M - M'||_max = " + std::to_string(herm_err));

    ComplexMatrix a = m;
    ComplexMatrix vecs;
    if (want_vectors)
        vecs = ComplexMatrix::Identity(n, n);

    const double norm_f = std::max(m.norm(), 1e-300);
    const double target = opt.target_tol_rel * norm_f;
    const double skip = 0.01 * target / static_cast<double>(n);

    EigenResult result;
    double off = offdiag_norm(a);
    int sweep = 0;
    while (off > target && sweep < opt.max_sweeps) {
        for (Eigen::Index p = 0; p + 1 < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > skip)
                    rotate(a, want_vectors ? &vecs : nullptr, p, q);
        ++sweep;
        off = offdiag_norm(a);
    }
    if (off > opt.accept_tol_rel * norm_f)
        throw NoConvergence("eig_hermitian: off-norm " + std::to_string(off) + " after "
                            + std::to_string(sweep) + " sweeps");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

    result.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        result.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]).real();
    result.offdiag_final = off;
    result.sweeps = sweep;

    if (want_vectors) {
        ComplexMatrix sorted(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            sorted.col(i) = vecs.col(order[static_cast<std::size_t>(i)]);
        result.vectors = std::move(sorted);
        double res = 0.0;
        const ComplexMatrix defect = m * (*result.vectors)
                                   - (*result.vectors) * result.values.asDiagonal();
        for (Eigen::Index i = 0; i < n; ++i)
            res = std::max(res, defect.col(i).norm());
        result.residual = res;
    }
    return result;
}

std::vector<int> cluster_degeneracies(const RealVector& values, double cluster_tol) {
    const Eigen::Index n = values.size();
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (i == n || values(i) - values(i - 1) > cluster_tol) {
            for (Eigen::Index j = start; j < i; ++j)
                deg[static_cast<std::size_t>(j)] = static_cast<int>(i - start);
            start = i;
        }
    }
    return deg;
}

std::vector<EnergyLevel> spectrum(const ModelParams& params, const Truncation& trunc,
                                  int n_levels, double cluster_tol) {
    params.validate();
    const int dim = trunc.dim(params.N);
    if (n_levels < 1 || n_levels > dim / 4)
        throw PreconditionError("spectrum: need 1 <= n_levels <= dim/4 = " + std::to_string(dim / 4));

    const ComplexMatrix h = build_hamiltonian(params, trunc);
    const EigenResult eig = eig_hermitian(h, true);
    const auto fg = build_fg_transform(params.N, trunc);
    const int fd = trunc.fock_dim();

    // Sector weights per eigenvector: squared norm of each sector slice of U†v.
    const auto weights_of = [&](Eigen::Index col) {
        const ComplexVector w = fg.U.adjoint() * eig.vectors->col(col);
        std::vector<double> ws(static_cast<std::size_t>(params.N));
        for (int s = 0; s < params.N; ++s)
            ws[static_cast<std::size_t>(s)] = w.segment(s * fd, fd).squaredNorm();
        return ws;
    };

    std::vector<EnergyLevel> out;
    out.reserve(static_cast<std::size_t>(n_levels));

    Eigen::Index start = 0;
    while (static_cast<int>(out.size()) < n_levels) {
        // Extend the cluster to its true end even past n_levels.
        Eigen::Index end = start + 1;
        while (end < eig.values.size() && eig.values(end) - eig.values(end - 1) <= cluster_tol)
            ++end;
        const int cluster_size = static_cast<int>(end - start);

        std::vector<std::vector<double>> ws(static_cast<std::size_t>(cluster_size));
        std::vector<double> sector_sum(static_cast<std::size_t>(params.N), 0.0);
        for (int i = 0; i < cluster_size; ++i) {
            ws[static_cast<std::size_t>(i)] = weights_of(start + i);
            for (int s = 0; s < params.N; ++s)
                sector_sum[static_cast<std::size_t>(s)] += ws[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
        }

        // Per-sector multiplicities must be near-integers: the cluster span is
        // a direct sum of its sector components.
        std::vector<int> mult(static_cast<std::size_t>(params.N));
        int mult_total = 0;
        bool clean = true;
        for (int s = 0; s < params.N; ++s) {
            const double v = sector_sum[static_cast<std::size_t>(s)];
            mult[static_cast<std::size_t>(s)] = static_cast<int>(std::lround(v));
            if (std::abs(v - std::lround(v)) > 0.01)
                clean = false;
            mult_total += mult[static_cast<std::size_t>(s)];
        }
        if (cluster_size == 1) {
            // Unambiguous assignment requires a dominant sector.
            const auto& w = ws[0];
            const auto it = std::max_element(w.begin(), w.end());
            if (*it < 0.99)
                throw TruncationTooSmall("spectrum: no dominant sector for level "
                                         + std::to_string(start) + " (max weight "
                                         + std::to_string(*it) + ")");
        } else if (!clean || mult_total != cluster_size) {
            throw TruncationTooSmall("spectrum: ambiguous sector content in degenerate cluster at E = "
                                     + std::to_string(eig.values(start)));
        }

        // Emit cluster members, tags in ascending sector order.
        int emitted = 0;
        for (int s = 0; s < params.N && emitted < cluster_size; ++s) {
            const int count = cluster_size == 1
                ? (static_cast<int>(std::max_element(ws[0].begin(), ws[0].end()) - ws[0].begin()) == s ? 1 : 0)
                : mult[static_cast<std::size_t>(s)];
            for (int c = 0; c < count; ++c, ++emitted) {
                if (static_cast<int>(out.size()) >= n_levels)
                    break;
                EnergyLevel lvl;
                lvl.E = eig.values(start + emitted);
                lvl.sector = s;
                lvl.degeneracy = cluster_size;
                lvl.sector_weight = cluster_size == 1 ? ws[0][static_cast<std::size_t>(s)]
                                                      : sector_sum[static_cast<std::size_t>(s)];
                lvl.kind = is_near_exceptional(lvl.E, params.Omega, params.lambda)
                         ? LevelKind::Exceptional : LevelKind::Regular;
                out.push_back(lvl);
            }
        }
        start = end;
        if (start >= eig.values.size())
            break;
    }
    return out;
}

ConvergenceReport convergence_study(const ModelParams& params, const std::vector<int>& n_max_list,
                                    double tol, int n_levels) {
    params.validate();
    if (n_max_list.size() < 2)
        throw PreconditionError("convergence_study: need at least two truncations");
    for (std::size_t i = 1; i < n_max_list.size(); ++i)
        if (n_max_list[i] <= n_max_list[i - 1])
            throw PreconditionError("convergence_study: n_max_list must be strictly increasing");
    if (tol <= 0.0)
        throw PreconditionError("convergence_study: tol must be positive");

    const int smallest_dim = params.N * (n_max_list.front() + 1);
    const int levels = std::min(n_levels, smallest_dim / 4);
    if (levels < 1)
        throw PreconditionError("convergence_study: smallest truncation too small");

    ConvergenceReport report;
    report.n_max_list = n_max_list;
    report.tol = tol;
    report.level_table.assign(static_cast<std::size_t>(levels),
                              std::vector<double>(n_max_list.size(), 0.0));

    for (std::size_t i = 0; i < n_max_list.size(); ++i) {
        const Truncation trunc{n_max_list[i]};
        const ComplexMatrix h = build_hamiltonian(params, trunc);
        const EigenResult eig = eig_hermitian(h, false);
        for (int l = 0; l < levels; ++l)
            report.level_table[static_cast<std::size_t>(l)][i] = eig.values(l);
    }

    report.drift_last.resize(static_cast<std::size_t>(levels));
    for (int l = 0; l < levels; ++l) {
        const auto& row = report.level_table[static_cast<std::size_t>(l)];
        const double drift = std::abs(row[row.size() - 1] - row[row.size() - 2]);
        report.drift_last[static_cast<std::size_t>(l)] = drift;
        if (drift < tol)
            ++report.converged_count;
    }
    return report;
}

} // namespace zrabi
