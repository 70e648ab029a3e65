// params.hpp — model parameters, Fock truncation, and their JSON form

#pragma once

#include "zrabi/matrix.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace zrabi {

// Parameters of the N-level chiral Rabi Hamiltonian
//   H = Ω b†b + Δ Σ_m α_m Z^m + λ (X† b† + X b),
// with complex level couplings constrained by α_m* = α_{N-m} (hermiticity).
// For N = 3 the phase convenience phi fixes α_1 = e^{iφ}, α_2 = e^{-iφ}.
// The optional β couplings (same constraint) feed the alternate Hamiltonian
// with the nonlinear X^m (b†)^{N-m} + h.c. interaction.
struct ModelParams {
    int N = 2;
    double Omega = 1.0;
    double Delta = 0.0;
    double lambda = 0.0;
    std::vector<Complex> alphas;                 // α_1 .. α_{N-1}
    std::optional<std::vector<Complex>> betas;   // β_1 .. β_{N-1}
    std::optional<double> phi;                   // radians, N = 3 only

    // Throws InvalidDimension / PreconditionError / NonHermitianParams /
    // MissingParams on any violated constraint.
    void validate() const;

    // N = 3 model with α_1 = e^{iφ}, α_2 = e^{-iφ}.
    static ModelParams three_state(double omega_boson, double delta, double lambda, double phi);

    // N = 2 model (α_1 = 1): the two-state Rabi Hamiltonian.
    static ModelParams two_state(double omega_boson, double delta, double lambda);

    nlohmann::json to_json() const;
    static ModelParams from_json(const nlohmann::json& j);
    static ModelParams load_file(const std::string& path);

    static constexpr double kCouplingConstraintTol = 1e-14;
};

// Checks conj(c[m-1]) == c[N-m-1] within tol for m = 1..N-1.
bool coupling_constraint_holds(const std::vector<Complex>& c, int n, double tol);

// Fock-space truncation; composite basis index = k (n_max + 1) + n with the
// spin index k outermost.
struct Truncation {
    int n_max = 80;

    int fock_dim() const { return n_max + 1; }
    int dim(int n_levels) const { return n_levels * (n_max + 1); }
};

} // namespace zrabi
