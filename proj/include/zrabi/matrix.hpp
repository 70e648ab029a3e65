// matrix.hpp — dense complex matrix aliases and small helpers shared by all modules

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace zrabi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Kronecker product with the left factor major: index = i * b.rows() + k.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity(Eigen::Index n);

// Entrywise max modulus.
double max_abs(const ComplexMatrix& m);

// ||M - M†||_max; throws DimensionError for non-square input.
double hermiticity_error(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);

// Throws NotHermitian if ||M - M†||_max exceeds tol.
void require_hermitian(const ComplexMatrix& m, double tol, const char* what);

// ||AB - BA||_F for conformable square matrices; throws DimensionError otherwise.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace zrabi
