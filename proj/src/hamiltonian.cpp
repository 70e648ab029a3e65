#include "zrabi/hamiltonian.hpp"

#include "zrabi/errors.hpp"

#include <cmath>

namespace zrabi {

BosonOps build_boson_ops(const Truncation& trunc) {
    if (trunc.n_max < 1)
        throw PreconditionError("build_boson_ops: need n_max >= 1");
    const int d = trunc.fock_dim();
    BosonOps ops;
    ops.create = ComplexMatrix::Zero(d, d);
    ops.number = ComplexMatrix::Zero(d, d);
    for (int n = 0; n < trunc.n_max; ++n)
        ops.create(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
    for (int n = 0; n < d; ++n)
        ops.number(n, n) = static_cast<double>(n);
    ops.annihilate = ops.create.adjoint();
    return ops;
}

namespace {

constexpr double kHermTol = 1e-12;

ComplexMatrix level_term(const ModelParams& params, const ClockPair& clock) {
    ComplexMatrix term = ComplexMatrix::Zero(params.N, params.N);
    ComplexMatrix zp = identity(params.N);
    for (int m = 1; m <= params.N - 1; ++m) {
        zp = zp * clock.Z;
        term += params.alphas[static_cast<std::size_t>(m - 1)] * zp;
    }
    return term;
}

} // namespace

ComplexMatrix build_hamiltonian(const ModelParams& params, const Truncation& trunc, RepChoice rep) {
    params.validate();
    const auto clock = make_clock_pair(params.N, rep);
    const auto boson = build_boson_ops(trunc);
    const int fd = trunc.fock_dim();

    ComplexMatrix h = params.Omega * kron(identity(params.N), boson.number);
    h += params.Delta * kron(level_term(params, clock), identity(fd));
    h += params.lambda * (kron(clock.X.adjoint(), boson.create) + kron(clock.X, boson.annihilate));

    require_hermitian(h, kHermTol, "build_hamiltonian");
    return h;
}

ComplexMatrix build_hamiltonian3_explicit(const ModelParams& params, const Truncation& trunc) {
    params.validate();
    if (params.N != 3)
        throw UnsupportedDimension("build_hamiltonian3_explicit: N must be 3");

    const auto w = unit_roots(3);
    const auto boson = build_boson_ops(trunc);
    const int fd = trunc.fock_dim();
    // α_1 = Δ-coupling phase e^{iφ}; for alphas given directly this is α_1 itself.
    const Complex a1 = params.alphas[0];
    const Complex a2 = params.alphas[1];

    const ComplexMatrix eye = identity(fd);
    ComplexMatrix h = ComplexMatrix::Zero(3 * fd, 3 * fd);
    for (int k = 0; k < 3; ++k) {
        const Complex wk = w[static_cast<std::size_t>(k)];
        const Complex wkc = w[static_cast<std::size_t>((3 - k) % 3)];
        h.block(k * fd, k * fd, fd, fd) =
            params.Omega * boson.number + params.lambda * (wk * boson.create + wkc * boson.annihilate);
    }
    // Level couplings: Z sits on (k, k-1) and the corner, Z† transposed.
    for (int k = 0; k < 3; ++k) {
        const int km = (k + 2) % 3;
        h.block(k * fd, km * fd, fd, fd) = params.Delta * a1 * eye;
        h.block(km * fd, k * fd, fd, fd) = params.Delta * a2 * eye;
    }

    require_hermitian(h, kHermTol, "build_hamiltonian3_explicit");
    return h;
}

ComplexMatrix build_symmetry_op(int n_levels, const Truncation& trunc, RepChoice rep) {
    if (n_levels < 2)
        throw InvalidDimension("build_symmetry_op: need N >= 2");
    const auto clock = make_clock_pair(n_levels, rep);
    const auto roots = unit_roots(n_levels);
    const int fd = trunc.fock_dim();
    ComplexMatrix rot = ComplexMatrix::Zero(fd, fd);
    for (int n = 0; n < fd; ++n)
        rot(n, n) = roots[static_cast<std::size_t>(n % n_levels)];
    return kron(clock.Z, rot);
}

ComplexMatrix build_hamiltonian_alt(const ModelParams& params, const Truncation& trunc, RepChoice rep) {
    params.validate();
    if (!params.betas)
        throw MissingParams("build_hamiltonian_alt: beta couplings are required");
    const auto clock = make_clock_pair(params.N, rep);
    const auto boson = build_boson_ops(trunc);
    const int fd = trunc.fock_dim();

    ComplexMatrix h = params.Omega * kron(identity(params.N), boson.number);
    h += params.Delta * kron(level_term(params, clock), identity(fd));

    ComplexMatrix xp = identity(params.N);
    for (int m = 1; m <= params.N - 1; ++m) {
        xp = xp * clock.X;
        ComplexMatrix raise = identity(fd);
        for (int j = 0; j < params.N - m; ++j)
            raise = boson.create * raise;
        const Complex beta = (*params.betas)[static_cast<std::size_t>(m - 1)];
        const ComplexMatrix term = beta * kron(xp, raise);
        h += params.lambda * (term + term.adjoint());
    }

    require_hermitian(h, kHermTol, "build_hamiltonian_alt");
    return h;
}

double interior_commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b,
                                int n_levels, const Truncation& trunc, int margin) {
    if (margin < 0 || margin > trunc.n_max)
        throw PreconditionError("interior_commutator_norm: bad margin");
    const int fd = trunc.fock_dim();
    const int keep = fd - margin;
    const int dim = n_levels * fd;
    if (a.rows() != dim || b.rows() != dim)
        throw DimensionError("interior_commutator_norm: dimension mismatch with truncation");

    // Gather the interior rows/cols (n < keep in every spin block).
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(n_levels * keep));
    for (int k = 0; k < n_levels; ++k)
        for (int n = 0; n < keep; ++n)
            idx.push_back(k * fd + n);

    const auto project = [&](const ComplexMatrix& m) {
        ComplexMatrix out(idx.size(), idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    m(idx[i], idx[j]);
        return out;
    };
    return commutator_norm(project(a), project(b));
}

} // namespace zrabi
