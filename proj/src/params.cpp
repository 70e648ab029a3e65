#include "zrabi/params.hpp"

#include "zrabi/clock.hpp"
#include "zrabi/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace zrabi {

bool coupling_constraint_holds(const std::vector<Complex>& c, int n, double tol) {
    if (static_cast<int>(c.size()) != n - 1)
        return false;
    for (int m = 1; m <= n - 1; ++m) {
        const Complex lhs = std::conj(c[static_cast<std::size_t>(m - 1)]);
        const Complex rhs = c[static_cast<std::size_t>(n - m - 1)];
        if (std::abs(lhs - rhs) > tol)
            return false;
    }
    return true;
}

void ModelParams::validate() const {
    if (N < 2)
        throw InvalidDimension("ModelParams: need N >= 2, got " + std::to_string(N));
    if (!(Omega > 0.0) || !std::isfinite(Omega))
        throw PreconditionError("ModelParams: Omega must be positive");
    if (lambda < 0.0 || !std::isfinite(lambda))
        throw PreconditionError("ModelParams: lambda must be nonnegative");
    if (!std::isfinite(Delta))
        throw PreconditionError("ModelParams: Delta must be finite");
    if (phi && N != 3)
        throw PreconditionError("ModelParams: phi is defined for N = 3 only");
    if (static_cast<int>(alphas.size()) != N - 1)
        throw MissingParams("ModelParams: expected " + std::to_string(N - 1) + " alpha couplings, got "
                            + std::to_string(alphas.size()));
    if (!coupling_constraint_holds(alphas, N, kCouplingConstraintTol))
        throw NonHermitianParams("ModelParams: alpha couplings violate conj(alpha_m) = alpha_{N-m}");
    if (betas) {
        if (static_cast<int>(betas->size()) != N - 1)
            throw MissingParams("ModelParams: expected " + std::to_string(N - 1) + " beta couplings");
        if (!coupling_constraint_holds(*betas, N, kCouplingConstraintTol))
            throw NonHermitianParams("ModelParams: beta couplings violate conj(beta_m) = beta_{N-m}");
    }
}

ModelParams ModelParams::three_state(double omega_boson, double delta, double lambda, double phi) {
    ModelParams p;
    p.N = 3;
    p.Omega = omega_boson;
    p.Delta = delta;
    p.lambda = lambda;
    p.phi = phi;
    p.alphas = {std::polar(1.0, phi), std::polar(1.0, -phi)};
    p.validate();
    return p;
}

ModelParams ModelParams::two_state(double omega_boson, double delta, double lambda) {
    ModelParams p;
    p.N = 2;
    p.Omega = omega_boson;
    p.Delta = delta;
    p.lambda = lambda;
    p.alphas = {Complex(1.0, 0.0)};
    p.validate();
    return p;
}

namespace {

std::vector<Complex> complex_list_from_json(const nlohmann::json& j, const char* key) {
    std::vector<Complex> out;
    if (!j.is_array())
        throw ParseError(std::string("ModelParams: '") + key + "' must be an array of [re, im] pairs");
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw ParseError(std::string("ModelParams: every '") + key + "' entry must be [re, im]");
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

nlohmann::json complex_list_to_json(const std::vector<Complex>& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : c)
        arr.push_back({v.real(), v.imag()});
    return arr;
}

} // namespace

nlohmann::json ModelParams::to_json() const {
    nlohmann::json j;
    j["N"] = N;
    j["Omega"] = Omega;
    j["Delta"] = Delta;
    j["lambda"] = lambda;
    if (phi)
        j["phi"] = *phi;
    else
        j["alphas"] = complex_list_to_json(alphas);
    if (betas)
        j["betas"] = complex_list_to_json(*betas);
    return j;
}

ModelParams ModelParams::from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ParseError("ModelParams: top-level JSON value must be an object");
    for (const char* key : {"N", "Omega", "Delta", "lambda"})
        if (!j.contains(key))
            throw ParseError(std::string("ModelParams: missing required field '") + key + "'");

    ModelParams p;
    try {
        p.N = j.at("N").get<int>();
        p.Omega = j.at("Omega").get<double>();
        p.Delta = j.at("Delta").get<double>();
        p.lambda = j.at("lambda").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("ModelParams: ") + e.what());
    }

    const bool has_phi = j.contains("phi");
    const bool has_alphas = j.contains("alphas");
    if (has_phi && has_alphas)
        throw ParseError("ModelParams: 'alphas' and 'phi' are mutually exclusive");
    if (has_phi) {
        if (p.N != 3)
            throw ParseError("ModelParams: 'phi' is only valid for N = 3");
        const double phi = j.at("phi").get<double>();
        p.phi = phi;
        p.alphas = {std::polar(1.0, phi), std::polar(1.0, -phi)};
    } else if (has_alphas) {
        p.alphas = complex_list_from_json(j.at("alphas"), "alphas");
    } else {
        throw ParseError("ModelParams: need either 'alphas' or 'phi'");
    }
    if (j.contains("betas"))
        p.betas = complex_list_from_json(j.at("betas"), "betas");

    p.validate();
    return p;
}

ModelParams ModelParams::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("ModelParams: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("ModelParams: malformed JSON in '" + path + "': " + e.what());
    }
    return from_json(j);
}

} // namespace zrabi
