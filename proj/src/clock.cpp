#include "zrabi/clock.hpp"

#include "zrabi/errors.hpp"

#include <cmath>

namespace zrabi {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Complex root_at(int k, int n) {
    // Quarter-turn multiples are representable exactly; snapping them keeps
    // Z^N = 1 at machine zero for N = 2 and 4.
    const int r = ((k % n) + n) % n;
    if (4 * r % n == 0) {
        switch (4 * r / n) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            case 3: return {0.0, -1.0};
        }
    }
    const double angle = kTwoPi * r / n;
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

Complex omega(int n) {
    if (n < 2)
        throw InvalidDimension("omega: need N >= 2, got " + std::to_string(n));
    return root_at(1, n);
}

std::vector<Complex> unit_roots(int n) {
    if (n < 2)
        throw InvalidDimension("unit_roots: need N >= 2, got " + std::to_string(n));
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        roots[static_cast<std::size_t>(k)] = root_at(k, n);
    return roots;
}

ClockPair make_clock_pair(int n, RepChoice rep) {
    if (n < 2)
        throw InvalidDimension("make_clock_pair: need N >= 2, got " + std::to_string(n));
    const auto roots = unit_roots(n);

    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    ComplexMatrix shift = ComplexMatrix::Zero(n, n);
    for (int l = 0; l < n; ++l) {
        shift(l, (l + n - 1) % n) = 1.0; // shift_{l,m} = δ_{l, m+1 mod N}
    }

    ClockPair pair;
    pair.dim = n;
    pair.rep = rep;
    if (rep == RepChoice::ZDiagonal) {
        for (int l = 0; l < n; ++l)
            diag(l, l) = roots[static_cast<std::size_t>(l)];
        pair.Z = diag;
        pair.X = shift;
    } else {
        // X† = diag(1, ω, ..., ω^{N-1}), so X carries the conjugate phases.
        for (int l = 0; l < n; ++l)
            diag(l, l) = roots[static_cast<std::size_t>((n - l) % n)];
        pair.X = diag;
        pair.Z = shift;
    }
    return pair;
}

bool verify_weyl_relations(const ClockPair& pair, double tol) {
    if (tol < 0.0)
        throw PreconditionError("verify_weyl_relations: tol must be >= 0");
    const int n = pair.dim;
    if (n < 2 || pair.Z.rows() != n || pair.Z.cols() != n || pair.X.rows() != n || pair.X.cols() != n)
        return false;

    const ComplexMatrix eye = identity(n);
    ComplexMatrix zp = eye, xp = eye; // running powers
    for (int k = 0; k < n; ++k) {
        zp = zp * pair.Z;
        xp = xp * pair.X;
        if (k == n - 2) {
            if (max_abs(pair.Z.adjoint() - zp) > tol) return false;
            if (max_abs(pair.X.adjoint() - xp) > tol) return false;
        }
    }
    if (max_abs(zp - eye) > tol) return false;
    if (max_abs(xp - eye) > tol) return false;

    const Complex w = omega(n);
    if (max_abs(pair.Z * pair.X - w * (pair.X * pair.Z)) > tol) return false;

    // Rep-defining diagonal.
    const auto roots = unit_roots(n);
    const ComplexMatrix& d = pair.rep == RepChoice::ZDiagonal ? pair.Z : ComplexMatrix(pair.X.adjoint());
    for (int l = 0; l < n; ++l)
        if (std::abs(d(l, l) - roots[static_cast<std::size_t>(l)]) > tol) return false;
    return true;
}

} // namespace zrabi
