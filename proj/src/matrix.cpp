#include "zrabi/matrix.hpp"

#include "zrabi/errors.hpp"

namespace zrabi {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix identity(Eigen::Index n) {
    return ComplexMatrix::Identity(n, n);
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) {
    if (m.rows() != m.cols())
        throw DimensionError("hermiticity_error: matrix must be square");
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return hermiticity_error(m) <= tol;
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* what) {
    const double err = hermiticity_error(m);
    if (err > tol)
        throw NotHermitian(std::string(what) + ": ||M - M'||_max = " + std::to_string(err));
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw DimensionError("commutator_norm: matrices must be square and conformable");
    return (a * b - b * a).norm();
}

} // namespace zrabi
