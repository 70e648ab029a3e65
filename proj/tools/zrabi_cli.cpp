// zrabi_cli.cpp — command-line front end: oracle spectra, sector scans,
// continued-fraction root searches, exceptional-point sweeps, and
// truncation-convergence tables as CSV/JSON.

#include "zrabi/cf_solver.hpp"
#include "zrabi/eigensolver.hpp"
#include "zrabi/errors.hpp"
#include "zrabi/exceptional.hpp"
#include "zrabi/fulton_gouterman.hpp"
#include "zrabi/hamiltonian.hpp"
#include "zrabi/io.hpp"
#include "zrabi/params.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace zrabi;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;        // bad flags, malformed config
constexpr int kExitUnsupported = 3;  // regime the solver does not cover

struct RangeArg {
    double lo = 0.0;
    double hi = 0.0;
};

RangeArg parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("range must be <lo:hi>, got '" + text + "'");
    RangeArg r;
    try {
        r.lo = std::stod(text.substr(0, colon));
        r.hi = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw ParseError("range must be numeric <lo:hi>, got '" + text + "'");
    }
    return r;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError("expected comma-separated integers, got '" + text + "'");
        }
    }
    if (out.empty())
        throw ParseError("expected comma-separated integers, got '" + text + "'");
    return out;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    if (!out)
        throw Error("write to '" + path + "' failed");
}

void emit_config(CsvWriter& csv, const std::string& command, const json& config) {
    csv.comment("zrabi " + command);
    for (auto it = config.begin(); it != config.end(); ++it)
        csv.comment(it.key() + " = " + it.value().dump());
}

std::string kind_name(LevelKind kind) {
    return kind == LevelKind::Exceptional ? "exceptional" : "regular";
}

// ------------------------------- spectrum -----------------------------------

int cmd_spectrum(const std::string& model_path, int n_max, int n_levels,
                 const std::string& out_path, const std::string& format, double cluster_tol) {
    const ModelParams params = ModelParams::load_file(model_path);
    const Truncation trunc{n_max};
    const auto levels = spectrum(params, trunc, n_levels, cluster_tol);

    json config;
    config["model"] = params.to_json();
    config["nmax"] = n_max;
    config["levels"] = n_levels;
    config["cluster_tol"] = cluster_tol;

    if (format == "json") {
        json j;
        j["config"] = config;
        j["levels"] = json::array();
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto& l = levels[i];
            j["levels"].push_back({{"level_index", i},
                                   {"E", l.E},
                                   {"sector", l.sector},
                                   {"kind", kind_name(l.kind)},
                                   {"degeneracy_cluster", l.degeneracy}});
        }
        write_json_file(out_path, j);
    } else {
        CsvWriter csv(out_path);
        emit_config(csv, "spectrum", config);
        csv.header({"level_index", "E", "sector", "kind", "degeneracy_cluster"});
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto& l = levels[i];
            csv.row({CsvWriter::cell(static_cast<int>(i)), CsvWriter::cell(l.E),
                     CsvWriter::cell(l.sector), kind_name(l.kind), CsvWriter::cell(l.degeneracy)});
        }
        csv.close();
    }
    return kExitOk;
}

// ------------------------------- cfroots ------------------------------------

int cmd_cfroots(const std::string& model_path, std::optional<RangeArg> range, double step,
                const std::string& sector_arg, const std::string& out_prefix) {
    const ModelParams params = ModelParams::load_file(model_path);
    if (params.N != 3) {
        std::cerr << "cfroots: continued-fraction roots are implemented for N = 3 only\n";
        return kExitUnsupported;
    }
    if (!(params.lambda > 0.0)) {
        std::cerr << "cfroots: lambda = 0 has no continued-fraction form; the spectrum is the "
                     "decoupled closed form O*n + 2*Delta*cos(phi + 2*pi*k/3) (see `spectrum`)\n";
        return kExitUnsupported;
    }
    if (!(step > 0.0)) {
        std::cerr << "cfroots: --step must be positive\n";
        return kExitUsage;
    }

    RangeArg r;
    if (range) {
        r = *range;
    } else {
        r.lo = -params.lambda * params.lambda / params.Omega - 2.0 * std::abs(params.Delta) - 1.0;
        r.hi = 6.0 * params.Omega;
    }

    std::vector<int> sectors;
    if (sector_arg == "all")
        sectors = {0, 1, 2};
    else if (sector_arg == "0" || sector_arg == "1" || sector_arg == "2")
        sectors = {std::stoi(sector_arg)};
    else {
        std::cerr << "cfroots: --sector must be 0, 1, 2 or all\n";
        return kExitUsage;
    }

    json config;
    config["model"] = params.to_json();
    config["range"] = {r.lo, r.hi};
    config["step"] = step;
    config["sector"] = sector_arg;

    json roots_json;
    roots_json["config"] = config;
    roots_json["roots"] = json::array();

    for (int s : sectors) {
        const SpectralScan scan = find_regular_energies(s, r.lo, r.hi, step, params);

        CsvWriter csv(out_prefix + "_scan_s" + std::to_string(s) + ".csv");
        emit_config(csv, "cfroots", config);
        csv.comment("notes: " + scan.notes);
        csv.header({"s", "E", "Re_F", "Im_F", "abs_S0", "flag"});
        for (std::size_t i = 0; i < scan.e_grid.size(); ++i) {
            const Complex f = scan.f_values[i];
            // |S0| = |F - A0|; recover it from the stored F for the table.
            const Complex s0 = f - recurrence_coeff(s, 0, scan.e_grid[i], params).A;
            csv.row({CsvWriter::cell(s), CsvWriter::cell(scan.e_grid[i]),
                     CsvWriter::cell(f.real()), CsvWriter::cell(f.imag()),
                     CsvWriter::cell(std::abs(s0)), to_string(scan.flags[i])});
        }
        csv.close();

        for (const auto& root : scan.roots) {
            roots_json["roots"].push_back({{"s", root.s},
                                           {"E", root.E},
                                           {"residual", root.residual},
                                           {"bracket_lo", root.bracket_lo},
                                           {"bracket_hi", root.bracket_hi},
                                           {"near_exceptional", root.near_exceptional}});
        }
    }
    write_json_file(out_prefix + "_roots.json", roots_json);
    return kExitOk;
}

// -------------------------------- sweep -------------------------------------

int cmd_sweep(const std::string& model_path, const std::string& param, RangeArg range, int steps,
              int n_max, int n_levels, const std::string& out_path, const std::string& guides_path,
              int max_script_n) {
    ModelParams params = ModelParams::load_file(model_path);
    if (param != "lambda" && param != "Delta" && param != "phi") {
        std::cerr << "sweep: --param must be lambda, Delta or phi\n";
        return kExitUsage;
    }
    if (param == "phi" && params.N != 3) {
        std::cerr << "sweep: phi sweeps require an N = 3 model\n";
        return kExitUnsupported;
    }
    if (steps < 2 || !(range.lo < range.hi)) {
        std::cerr << "sweep: need at least 2 steps and a nonempty range\n";
        return kExitUsage;
    }

    json config;
    config["model"] = params.to_json();
    config["param"] = param;
    config["range"] = {range.lo, range.hi};
    config["steps"] = steps;
    config["nmax"] = n_max;
    config["levels"] = n_levels;

    const Truncation trunc{n_max};

    CsvWriter csv(out_path);
    emit_config(csv, "sweep", config);
    csv.header({"sweep_value", "level_index", "E", "sector"});

    for (int i = 0; i < steps; ++i) {
        const double value = range.lo + (range.hi - range.lo) * i / (steps - 1);
        ModelParams p = params;
        if (param == "lambda")
            p.lambda = value;
        else if (param == "Delta")
            p.Delta = value;
        else {
            p.phi = value;
            p.alphas = {std::polar(1.0, value), std::polar(1.0, -value)};
        }
        p.validate();

        // Sector-resolved levels straight from the block Hamiltonians.
        std::vector<std::pair<double, int>> levels;
        for (int s = 0; s < p.N; ++s) {
            const auto block = sector_hamiltonian(p, s, trunc);
            const auto eig = eig_hermitian(block.matrix, false);
            for (Eigen::Index l = 0; l < eig.values.size(); ++l)
                levels.emplace_back(eig.values(l), s);
        }
        std::sort(levels.begin(), levels.end());
        const int count = std::min<int>(n_levels, static_cast<int>(levels.size()));
        for (int l = 0; l < count; ++l)
            csv.row({CsvWriter::cell(value), CsvWriter::cell(l),
                     CsvWriter::cell(levels[static_cast<std::size_t>(l)].first),
                     CsvWriter::cell(levels[static_cast<std::size_t>(l)].second)});
    }
    csv.close();

    if (!guides_path.empty()) {
        CsvWriter guides(guides_path);
        emit_config(guides, "sweep (exceptional-energy guides)", config);
        guides.header({"sweep_value", "script_n", "E_guide"});
        for (int i = 0; i < steps; ++i) {
            const double value = range.lo + (range.hi - range.lo) * i / (steps - 1);
            const double lambda = param == "lambda" ? value : params.lambda;
            for (int n = 0; n <= max_script_n; ++n)
                guides.row({CsvWriter::cell(value), CsvWriter::cell(n),
                            CsvWriter::cell(exceptional_energy(n, params.Omega, lambda))});
        }
        guides.close();
    }
    return kExitOk;
}

// ----------------------------- exceptional ----------------------------------

int cmd_exceptional(const std::string& model_path, int script_n, const std::string& sweep_arg,
                    int grid, int n_max, const std::string& out_path) {
    const ModelParams params = ModelParams::load_file(model_path);

    // --sweep <param>:<lo>:<hi>
    const auto c1 = sweep_arg.find(':');
    const auto c2 = sweep_arg.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("--sweep must be <param>:<lo>:<hi>, got '" + sweep_arg + "'");
    SweepSpec sweep;
    sweep.param = sweep_arg.substr(0, c1);
    try {
        sweep.lo = std::stod(sweep_arg.substr(c1 + 1, c2 - c1 - 1));
        sweep.hi = std::stod(sweep_arg.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ParseError("--sweep bounds must be numeric, got '" + sweep_arg + "'");
    }
    sweep.grid_points = grid;

    const Truncation trunc{n_max};
    const CrossingResult res = find_exceptional_crossing(script_n, params, sweep, trunc);

    json j;
    j["config"] = {{"model", params.to_json()},
                   {"scriptN", script_n},
                   {"sweep", sweep_arg},
                   {"grid", grid},
                   {"nmax", n_max}};
    j["crossing"] = {{"script_N", res.script_n},
                     {"param", res.param},
                     {"value", res.value},
                     {"E_exceptional", res.e_exceptional},
                     {"E_found", res.e_found},
                     {"gap", res.gap},
                     {"degeneracy_count", res.degeneracy_count},
                     {"indicial_exponent", res.indicial},
                     {"sector", res.sector},
                     {"polynomial_evidence", res.polynomial_evidence}};
    write_json_file(out_path, j);
    return kExitOk;
}

// ------------------------------- converge -----------------------------------

int cmd_converge(const std::string& model_path, const std::string& nmax_list_arg, double tol,
                 int n_levels, const std::string& out_path) {
    const ModelParams params = ModelParams::load_file(model_path);
    const std::vector<int> n_max_list = parse_int_list(nmax_list_arg);
    const ConvergenceReport report = convergence_study(params, n_max_list, tol, n_levels);

    json config;
    config["model"] = params.to_json();
    config["nmax_list"] = n_max_list;
    config["tol"] = tol;
    config["levels"] = n_levels;

    CsvWriter csv(out_path);
    emit_config(csv, "converge", config);
    csv.comment("converged_count = " + std::to_string(report.converged_count));
    std::vector<std::string> head{"level_index"};
    for (int nm : report.n_max_list)
        head.push_back("nmax_" + std::to_string(nm));
    head.push_back("drift_last");
    csv.header(head);
    for (std::size_t l = 0; l < report.level_table.size(); ++l) {
        std::vector<std::string> cells{CsvWriter::cell(static_cast<int>(l))};
        for (double e : report.level_table[l])
            cells.push_back(CsvWriter::cell(e));
        cells.push_back(CsvWriter::cell(report.drift_last[l]));
        csv.row(cells);
    }
    csv.close();
    return kExitOk;
}

// -------------------------------- check -------------------------------------

int cmd_check(const std::string& roots_path, const std::string& spectrum_path, double tol) {
    std::ifstream in(roots_path);
    if (!in)
        throw ParseError("check: cannot open '" + roots_path + "'");
    json roots_json;
    try {
        in >> roots_json;
    } catch (const json::exception& e) {
        throw ParseError("check: malformed roots JSON: " + std::string(e.what()));
    }
    if (!roots_json.contains("roots"))
        throw ParseError("check: roots JSON has no 'roots' array");

    std::ifstream spec_in(spectrum_path);
    if (!spec_in)
        throw ParseError("check: cannot open '" + spectrum_path + "'");
    std::vector<double> oracle;
    std::string line;
    bool header_seen = false;
    while (std::getline(spec_in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) { // column header
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ','); // level_index
        std::getline(ss, cell, ','); // E
        oracle.push_back(std::stod(cell));
    }
    if (oracle.empty())
        throw ParseError("check: no levels found in '" + spectrum_path + "'");
    const double e_ceiling = oracle.back() - 0.5; // top oracle levels may be incomplete

    int compared = 0, matched = 0;
    double worst = 0.0;
    for (const auto& r : roots_json["roots"]) {
        const double e = r.at("E").get<double>();
        if (e > e_ceiling)
            continue;
        ++compared;
        double best = std::numeric_limits<double>::infinity();
        for (double o : oracle)
            best = std::min(best, std::abs(o - e));
        worst = std::max(worst, best);
        if (best <= tol)
            ++matched;
        else
            std::cerr << "check: root E = " << format_double(e) << " off by "
                      << format_double(best) << "\n";
    }
    std::cout << "check: " << matched << "/" << compared
              << " roots matched within tol = " << format_double(tol)
              << " (max deviation " << format_double(worst) << ")\n";
    return matched == compared ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver for the cyclic-symmetric chiral N-level Rabi model"};
    app.require_subcommand(1);

    std::string model_path, out_path = "out.csv", format = "csv";
    std::string range_arg, sector_arg = "all", param_arg, sweep_arg, nmax_list_arg, guides_path;
    std::string roots_path, spectrum_path;
    int n_max = 80, n_levels = 20, steps = 51, script_n = 0, grid = 121, max_script_n = 4;
    double step = 0.0, tol = 1e-6, cluster_tol = 1e-7, conv_tol = 1e-8;

    auto* sp = app.add_subcommand("spectrum", "Oracle spectrum with sector and degeneracy tags");
    sp->add_option("--model", model_path, "model JSON file")->required();
    sp->add_option("--nmax", n_max, "Fock truncation");
    sp->add_option("--levels", n_levels, "number of levels");
    sp->add_option("--out", out_path, "output file")->required();
    sp->add_option("--format", format, "csv or json");
    sp->add_option("--cluster-tol", cluster_tol, "degeneracy clustering tolerance");

    auto* cf = app.add_subcommand("cfroots", "Regular energies as continued-fraction roots (N = 3)");
    cf->add_option("--model", model_path, "model JSON file")->required();
    cf->add_option("--range", range_arg, "energy window lo:hi (default from model)");
    cf->add_option("--step", step, "grid step (default 0.01*Omega)");
    cf->add_option("--sector", sector_arg, "0, 1, 2 or all");
    cf->add_option("--out", out_path, "output prefix")->required();

    auto* sw = app.add_subcommand("sweep", "Spectral flow vs lambda, Delta or phi");
    sw->add_option("--model", model_path, "model JSON file")->required();
    sw->add_option("--param", param_arg, "lambda, Delta or phi")->required();
    sw->add_option("--range", range_arg, "sweep range lo:hi")->required();
    sw->add_option("--steps", steps, "number of sweep points");
    sw->add_option("--nmax", n_max, "Fock truncation");
    sw->add_option("--levels", n_levels, "levels per sweep point");
    sw->add_option("--out", out_path, "output CSV")->required();
    sw->add_option("--guides-out", guides_path, "exceptional-energy guide CSV");
    sw->add_option("--max-script-n", max_script_n, "highest guide index");

    auto* ex = app.add_subcommand("exceptional", "Locate a parameter crossing of the isolated-energy ladder");
    ex->add_option("--model", model_path, "model JSON file")->required();
    ex->add_option("--scriptN", script_n, "ladder index")->required();
    ex->add_option("--sweep", sweep_arg, "<param>:<lo>:<hi> with param Delta or phi")->required();
    ex->add_option("--grid", grid, "coarse grid points");
    ex->add_option("--nmax", n_max, "Fock truncation");
    ex->add_option("--out", out_path, "output JSON")->required();

    auto* cv = app.add_subcommand("converge", "Truncation convergence table");
    cv->add_option("--model", model_path, "model JSON file")->required();
    cv->add_option("--nmax", nmax_list_arg, "comma-separated truncation list")->required();
    cv->add_option("--tol", conv_tol, "per-level convergence tolerance");
    cv->add_option("--levels", n_levels, "levels to track");
    cv->add_option("--out", out_path, "output CSV")->required();

    auto* ck = app.add_subcommand("check", "Cross-validate cfroots output against a spectrum CSV");
    ck->add_option("--roots", roots_path, "roots JSON from cfroots")->required();
    ck->add_option("--spectrum", spectrum_path, "CSV from spectrum")->required();
    ck->add_option("--tol", tol, "match tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sp->parsed()) {
            if (format != "csv" && format != "json") {
                std::cerr << "spectrum: --format must be csv or json\n";
                return kExitUsage;
            }
            return cmd_spectrum(model_path, n_max, n_levels, out_path, format, cluster_tol);
        }
        if (cf->parsed()) {
            std::optional<RangeArg> range;
            if (!range_arg.empty())
                range = parse_range(range_arg);
            if (step == 0.0) {
                const ModelParams p = ModelParams::load_file(model_path);
                step = 0.01 * p.Omega;
            }
            return cmd_cfroots(model_path, range, step, sector_arg, out_path);
        }
        if (sw->parsed())
            return cmd_sweep(model_path, param_arg, parse_range(range_arg), steps, n_max, n_levels,
                             out_path, guides_path, max_script_n);
        if (ex->parsed())
            return cmd_exceptional(model_path, script_n, sweep_arg, grid, n_max, out_path);
        if (cv->parsed())
            return cmd_converge(model_path, nmax_list_arg, conv_tol, n_levels, out_path);
        if (ck->parsed())
            return cmd_check(roots_path, spectrum_path, tol);
    } catch (const UnsupportedDimension& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const CouplingZero& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const NoCrossingFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
