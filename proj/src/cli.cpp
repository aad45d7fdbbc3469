#include "dirac_ladder/cli.hpp"

#include "dirac_ladder/channels.hpp"
#include "dirac_ladder/ladder.hpp"
#include "dirac_ladder/oracle.hpp"
#include "dirac_ladder/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

namespace dirac_ladder::cli {

namespace {

using json = nlohmann::ordered_json;
using boost::multiprecision::mpfr_float;

std::string g15(double v) { return fmt::format("{:.15g}", v); }

/// Rounds to the printed precision so that re-reading reproduces the value exactly.
double round15(double v) { return std::isfinite(v) ? std::stod(g15(v)) : v; }

json number(double v) { return std::isfinite(v) ? json(round15(v)) : json(nullptr); }

bool needs_channel(Command c) { return c != Command::verify; }

double rest_energy_joule(const RunConfig& c) { return c.electron_mass * kSpeedOfLight * kSpeedOfLight; }

/// Inverse reduced Compton wavelength m c / ħ in 1/m.
double inverse_compton_metre(const RunConfig& c) { return c.electron_mass * kSpeedOfLight / kReducedPlanck; }

json base_meta(const RunConfig& c) {
    json meta;
    meta["command"] = to_string(c.command);
    if (needs_channel(c.command)) {
        meta["zeta"] = round15(c.resolved_zeta());
        if (c.Z) {
            meta["Z"] = *c.Z;
            meta["alpha"] = c.alpha;
        }
        meta["mass"] = c.mass;
    }
    meta["energy_unit"] = c.si ? "J" : "m";
    if (c.si) meta["electron_mass_kg"] = c.electron_mass;
    meta["precision_bits"] = c.precision;
    meta["precision_source"] = c.precision_source;
    meta["conventions"] = json::array({"mu = zeta*E/kappa + 1/2", "omega = tau^2 - zeta^2 - 1/4 = j(j+1) - zeta^2"});
    meta["excluded"] = "k=0 with eps=+1 (violates the first-order system)";
    return meta;
}

void write_meta_csv(std::ostream& os, const json& meta) {
    for (const auto& [key, value] : meta.items()) {
        if (value.is_array()) {
            for (const auto& item : value) os << "# " << key << ": " << (item.is_string() ? item.get<std::string>() : item.dump()) << '\n';
        } else {
            os << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
    }
}

std::string j_text(double j) { return fmt::format("{}/2", static_cast<int>(std::lround(2.0 * j))); }

/// Output sink: the configured file or `out`.
class Sink {
public:
    Sink(const RunConfig& c, std::ostream& out) {
        if (c.output_path.empty()) {
            os_ = &out;
        } else {
            file_.open(c.output_path);
            if (!file_) throw UsageError("cannot open output file '" + c.output_path + "'");
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

/// Spectrum table with skipped channels reported once each; throws
/// Supercritical when nothing is left.
SpectrumTable checked_table(const RunConfig& c, double zeta, std::ostream& err) {
    SpectrumTable table = spectrum_table(zeta, HalfInteger::from_double(c.j_max), c.k_max, c.mass);
    auto& w = table.warnings;
    w.erase(std::unique(w.begin(), w.end()), w.end());
    if (table.states.empty() && !w.empty()) throw Supercritical(w.front());
    for (const auto& line : w) err << "warning: " << line << '\n';
    return table;
}

struct SpectrumText {
    std::string mu, energy, wavenumber, nu;
};

SpectrumText extended_values(const RunConfig& c, const BoundState& st) {
    const int digits10 = static_cast<int>(std::floor(c.precision * std::log10(2.0)));
    mpfr_float::default_precision(digits10 + 5);
    const mpfr_float zeta = c.Z ? mpfr_float(*c.Z) * mpfr_float(g15(c.alpha)) : mpfr_float(g15(*c.zeta));
    const mpfr_float mass(g15(c.mass));
    const int twice_j = st.channel.j().twice;
    const mpfr_float half_tau = mpfr_float(twice_j + 1) / 2;
    const mpfr_float shifted = sqrt(half_tau * half_tau - zeta * zeta) + st.k;
    const mpfr_float root = sqrt(shifted * shifted + zeta * zeta);
    mpfr_float energy = closed_form_energy<mpfr_float>(twice_j, zeta, st.k, mass);
    mpfr_float kappa = mass * zeta / root;
    const mpfr_float nu = kappa / (mass + energy);
    const mpfr_float mu = shifted + mpfr_float(1) / 2;
    if (c.si) {
        energy *= mpfr_float(g15(rest_energy_joule(c)));
        kappa *= mpfr_float(g15(inverse_compton_metre(c)));
    }
    return {mu.str(digits10), energy.str(digits10), kappa.str(digits10), nu.str(digits10)};
}

int run_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const double zeta = c.resolved_zeta();
    const SpectrumTable table = checked_table(c, zeta, err);

    json meta = base_meta(c);
    meta["j_max"] = c.j_max;
    meta["k_max"] = c.k_max;
    meta["wavenumber_unit"] = c.si ? "1/m" : "m";
    if (!table.warnings.empty()) meta["skipped"] = table.warnings;

    const double e_scale = c.si ? rest_energy_joule(c) : 1.0;
    const double k_scale = c.si ? inverse_compton_metre(c) : 1.0;
    Sink sink(c, out);
    if (c.output_format == OutputFormat::json) {
        json rows = json::array();
        for (const auto& st : table.states) {
            rows.push_back({{"j", st.channel.j().value()},
                            {"eps", to_int(st.channel.epsilon())},
                            {"k", st.k},
                            {"mu", number(st.mu)},
                            {"E", number(st.energy * e_scale)},
                            {"kappa", number(st.wavenumber * k_scale)},
                            {"nu", number(st.nu)}});
        }
        *sink << json{{"meta", meta}, {"rows", rows}}.dump(2) << '\n';
        return kExitOk;
    }
    write_meta_csv(*sink, meta);
    *sink << "j,eps,k,mu,E,kappa,nu\n";
    for (const auto& st : table.states) {
        const std::string eps = to_int(st.channel.epsilon()) > 0 ? "+1" : "-1";
        if (c.precision > 53) {
            const SpectrumText t = extended_values(c, st);
            *sink << fmt::format("{},{},{},{},{},{},{}\n", j_text(st.channel.j().value()), eps, st.k, t.mu, t.energy,
                                 t.wavenumber, t.nu);
        } else {
            *sink << fmt::format("{},{},{},{},{},{},{}\n", j_text(st.channel.j().value()), eps, st.k, g15(st.mu),
                                 g15(st.energy * e_scale), g15(st.wavenumber * k_scale), g15(st.nu));
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// wavefunction
// ---------------------------------------------------------------------------

int run_wavefunction(const RunConfig& c, std::ostream& out) {
    const Channel ch = make_channel(HalfInteger::from_double(*c.j), sign_from_int(*c.epsilon), c.resolved_zeta());
    const BoundState st = bound_energy(ch, *c.k, c.mass);
    RadialSolution sol = build_solution(st);
    if (c.normalization == Normalization::physical) sol = physical_normalize(sol);
    const auto grid = log_grid(c.grid.min, c.grid.max, c.grid.count);
    const auto rows = evaluate_on_grid(sol, grid);

    json meta = base_meta(c);
    meta["channel"] = ch.describe();
    meta["k"] = st.k;
    meta["mu"] = round15(st.mu);
    meta["E"] = round15(st.energy * (c.si ? rest_energy_joule(c) : 1.0));
    meta["kappa"] = round15(st.wavenumber * (c.si ? inverse_compton_metre(c) : 1.0));
    meta["normalization"] = to_string(sol.normalization());
    meta["grid"] = fmt::format("log-spaced rho in [{:g}, {:g}], {} points", c.grid.min, c.grid.max, c.grid.count);
    meta["radial_variable"] = "rho = kappa * r";

    Sink sink(c, out);
    if (c.output_format == OutputFormat::json) {
        json data = json::array();
        for (const auto& r : rows) data.push_back({{"rho", number(r.rho)}, {"F", number(r.F)}, {"G", number(r.G)}});
        *sink << json{{"meta", meta}, {"rows", data}}.dump(2) << '\n';
        return kExitOk;
    }
    write_meta_csv(*sink, meta);
    *sink << "rho,F,G\n";
    for (const auto& r : rows) *sink << g15(r.rho) << ',' << g15(r.F) << ',' << g15(r.G) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const RunConfig& c, std::ostream& out) {
    const std::vector<std::string> names = c.suites.empty() ? suite_names() : c.suites;
    Sink sink(c, out);
    bool all_passed = true;
    json suites = json::object();
    std::ostringstream text;
    for (const auto& name : names) {
        const VerificationReport report = run_suite(name);
        all_passed = all_passed && report.passed();
        if (c.output_format == OutputFormat::json) {
            json entries = json::array();
            for (const auto& e : report.entries())
                entries.push_back(
                    {{"name", e.name}, {"measured", number(e.measured)}, {"tolerance", e.tolerance}, {"passed", e.passed}});
            suites[name] = entries;
        } else {
            text << "== " << name << '\n';
            report.print(text);
            text << fmt::format("{}: {} of {} checks passed, max measured {:.3e}\n", name,
                                report.entries().size() - report.failures(), report.entries().size(),
                                report.max_measured());
        }
    }
    json meta = base_meta(c);
    meta["suites"] = names;
    meta["result"] = all_passed ? "pass" : "fail";
    if (c.output_format == OutputFormat::json) {
        *sink << json{{"meta", meta}, {"suites", suites}}.dump(2) << '\n';
    } else {
        write_meta_csv(*sink, meta);
        *sink << text.str();
    }
    return all_passed ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// oracle-compare
// ---------------------------------------------------------------------------

int run_oracle_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const SpectrumTable table = checked_table(c, c.resolved_zeta(), err);

    struct Row {
        const BoundState* state;
        double shooting, delta;
        int nodes, expected;
        bool ok;
    };
    std::vector<Row> rows;
    bool all_ok = true;
    for (const auto& st : table.states) {
        Row row{&st, NAN, NAN, -1, expected_big_nodes(st.channel.epsilon(), st.k), false};
        try {
            const ShootingResult r = shooting_solve(st.channel, st.k, c.mass, default_shooting_config(st.channel, st.k, c.mass));
            row.shooting = r.energy;
            row.delta = std::abs(r.energy - st.energy) / st.energy;
            row.nodes = r.nodes;
            row.ok = row.delta <= c.compare_tolerance && r.nodes_match;
        } catch (const Error& e) {
            err << "warning: shooting failed for " << st.channel.describe() << " k=" << st.k << ": " << e.what() << '\n';
        }
        all_ok = all_ok && row.ok;
        rows.push_back(row);
    }

    json meta = base_meta(c);
    meta["j_max"] = c.j_max;
    meta["k_max"] = c.k_max;
    meta["tolerance"] = c.compare_tolerance;
    meta["result"] = all_ok ? "pass" : "fail";
    const double e_scale = c.si ? rest_energy_joule(c) : 1.0;
    Sink sink(c, out);
    if (c.output_format == OutputFormat::json) {
        json data = json::array();
        for (const auto& r : rows)
            data.push_back({{"j", r.state->channel.j().value()},
                            {"eps", to_int(r.state->channel.epsilon())},
                            {"k", r.state->k},
                            {"E_algebraic", number(r.state->energy * e_scale)},
                            {"E_shooting", number(r.shooting * e_scale)},
                            {"rel_delta", number(r.delta)},
                            {"nodes", r.nodes},
                            {"expected_nodes", r.expected},
                            {"ok", r.ok}});
        *sink << json{{"meta", meta}, {"rows", data}}.dump(2) << '\n';
    } else {
        write_meta_csv(*sink, meta);
        *sink << "j,eps,k,E_algebraic,E_shooting,rel_delta,nodes,expected_nodes,ok\n";
        for (const auto& r : rows)
            *sink << fmt::format("{},{},{},{},{},{:.3e},{},{},{}\n", j_text(r.state->channel.j().value()),
                                 to_int(r.state->channel.epsilon()) > 0 ? "+1" : "-1", r.state->k,
                                 g15(r.state->energy * e_scale), g15(r.shooting * e_scale), r.delta, r.nodes,
                                 r.expected, r.ok ? "yes" : "no");
    }
    return all_ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// demo-divergence
// ---------------------------------------------------------------------------

int run_demo_divergence(const RunConfig& c, std::ostream& out) {
    const Channel ch = make_channel(HalfInteger::from_double(*c.j), Sign::minus, c.resolved_zeta());
    const LadderFunction f = negative_branch_ground(ch.lambda());
    std::vector<double> cutoffs = c.cutoffs;
    std::sort(cutoffs.begin(), cutoffs.end());
    const VerificationReport report = divergence_check(f, cutoffs);

    json meta = base_meta(c);
    meta["channel"] = ch.describe();
    meta["lambda"] = round15(ch.lambda());
    meta["function"] = "rho^(lambda-1/2) exp(+rho) q0, truncated norm N(R) = int_0^R P^2 drho/rho";
    meta["result"] = report.passed() ? "diverges" : "check failed";

    std::vector<double> norms;
    for (double r : cutoffs) norms.push_back(truncated_norm(f, r));
    Sink sink(c, out);
    if (c.output_format == OutputFormat::json) {
        json data = json::array();
        for (std::size_t i = 0; i < cutoffs.size(); ++i) {
            json row{{"R", cutoffs[i]}, {"N", number(norms[i])}};
            if (i > 0) {
                row["ratio"] = number(norms[i] / norms[i - 1]);
                row["exp_gap"] = number(std::exp(cutoffs[i] - cutoffs[i - 1]));
            }
            data.push_back(row);
        }
        *sink << json{{"meta", meta}, {"rows", data}}.dump(2) << '\n';
    } else {
        write_meta_csv(*sink, meta);
        *sink << "R,N,ratio,exp_gap\n";
        for (std::size_t i = 0; i < cutoffs.size(); ++i) {
            const std::string ratio = i > 0 ? g15(norms[i] / norms[i - 1]) : "";
            const std::string gap = i > 0 ? g15(std::exp(cutoffs[i] - cutoffs[i - 1])) : "";
            *sink << fmt::format("{},{},{},{}\n", g15(cutoffs[i]), g15(norms[i]), ratio, gap);
        }
    }
    return report.passed() ? kExitOk : kExitFailed;
}

template <class E>
int report_error(std::ostream& err, const char* kind, const E& e, int code) {
    err << "error: " << kind << ": " << e.what() << '\n';
    return code;
}

int parse_sign(const std::string& text) {
    if (text == "+1" || text == "1" || text == "+") return 1;
    if (text == "-1" || text == "-") return -1;
    throw UsageError("--eps must be +1 or -1, got '" + text + "'");
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::wavefunction: return "wavefunction";
        case Command::verify: return "verify";
        case Command::oracle_compare: return "oracle-compare";
        case Command::demo_divergence: return "demo-divergence";
    }
    return "unknown";
}

double RunConfig::resolved_zeta() const {
    if (zeta) return *zeta;
    if (Z) return zeta_from_charge(*Z, alpha);
    throw UsageError("one of --zeta or --Z is required");
}

void RunConfig::validate() const {
    if (zeta && Z) throw UsageError("--zeta and --Z are mutually exclusive");
    if (needs_channel(command) && !zeta && !Z) throw UsageError(to_string(command) + " needs --zeta or --Z");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw UsageError("--mass must be positive");
    if (precision < 53 || precision > 4096) throw UsageError("precision must be between 53 and 4096 bits");
    if (si && !(electron_mass > 0.0)) throw UsageError("--electron-mass must be positive");
    if (k_max < 0) throw UsageError("--k-max must be non-negative");
    if (!(compare_tolerance > 0.0)) throw UsageError("--tolerance must be positive");
    switch (command) {
        case Command::wavefunction:
            if (!j || !epsilon || !k) throw UsageError("wavefunction needs --j, --eps and --k");
            if (*k < 0) throw UsageError("--k must be non-negative");
            if (!(grid.min > 0.0) || !(grid.max > grid.min) || grid.count < 2)
                throw UsageError("--grid needs 0 < MIN < MAX and COUNT >= 2");
            break;
        case Command::demo_divergence:
            if (!j) throw UsageError("demo-divergence needs --j");
            if (cutoffs.size() < 2) throw UsageError("--cutoffs needs at least two values");
            for (double r : cutoffs)
                if (!(r > 0.0)) throw UsageError("--cutoffs must be positive");
            break;
        case Command::verify:
            for (const auto& s : suites)
                if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
                    throw UsageError("unknown suite '" + s + "'");
            break;
        default: break;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        switch (config.command) {
            case Command::spectrum: return run_spectrum(config, out, err);
            case Command::wavefunction: return run_wavefunction(config, out);
            case Command::verify: return run_verify(config, out);
            case Command::oracle_compare: return run_oracle_compare(config, out, err);
            case Command::demo_divergence: return run_demo_divergence(config, out);
        }
    } catch (const UsageError& e) {
        return report_error(err, "usage", e, kExitUsage);
    } catch (const InvalidQuantumNumber& e) {
        return report_error(err, "InvalidQuantumNumber", e, kExitUsage);
    } catch (const DomainError& e) {
        return report_error(err, "DomainError", e, kExitUsage);
    } catch (const Supercritical& e) {
        return report_error(err, "Supercritical", e, kExitPhysics);
    } catch (const UnphysicalState& e) {
        return report_error(err, "UnphysicalState", e, kExitPhysics);
    } catch (const Error& e) {
        return report_error(err, "error", e, kExitPhysics);
    }
    return kExitUsage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    CLI::App app{"Dirac-Coulomb bound states by ladder operators"};
    app.require_subcommand(1);

    double zeta = 0.0, j = 0.0;
    int Z = 0, k = 0, precision = 53;
    std::string eps, format = "csv";
    std::vector<double> grid;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--zeta", zeta, "coupling zeta = Z*alpha");
        sub->add_option("--Z", Z, "nuclear charge; zeta = Z*alpha");
        sub->add_option("--alpha", config.alpha, "fine-structure constant used with --Z");
        sub->add_option("--mass", config.mass, "particle mass (energy unit)");
        sub->add_option("--precision", precision, "working precision in bits (default 53)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("-o,--output", config.output_path, "output file (default stdout)");
        sub->add_flag("--si", config.si, "energies in joules, wavenumbers in 1/m");
        sub->add_option("--electron-mass", config.electron_mass, "electron mass in kg for --si");
    };
    auto quantum = [&](CLI::App* sub) {
        sub->add_option("--j", j, "total angular momentum (half-odd-integer)");
        sub->add_option("--eps", eps, "+1 or -1");
        sub->add_option("--k", k, "radial index");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "bound-state table sorted by energy");
    common(spectrum);
    spectrum->add_option("--j-max", config.j_max, "largest j");
    spectrum->add_option("--k-max", config.k_max, "largest radial index");

    CLI::App* wave = app.add_subcommand("wavefunction", "(rho, F, G) table for one state");
    common(wave);
    quantum(wave);
    wave->add_option("--grid", grid, "MIN MAX COUNT of the log-spaced rho grid")->expected(3);
    wave->add_flag("--algebraic", "keep the ladder normalization instead of unit norm");

    CLI::App* verify = app.add_subcommand("verify", "run self-check suites");
    common(verify);
    verify->add_option("--suite", config.suites, "algebra, casimir, quadrature, ode, matrices (repeatable)");

    CLI::App* compare = app.add_subcommand("oracle-compare", "algebraic vs shooting energies");
    common(compare);
    compare->add_option("--j-max", config.j_max, "largest j");
    compare->add_option("--k-max", config.k_max, "largest radial index");
    compare->add_option("--tolerance", config.compare_tolerance, "relative tolerance for a pass");

    CLI::App* diverge = app.add_subcommand("demo-divergence", "truncated norms of the growing branch");
    common(diverge);
    quantum(diverge);
    diverge->add_option("--cutoffs", config.cutoffs, "cutoff radii R");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    config.command = name == "spectrum"         ? Command::spectrum
                     : name == "wavefunction"   ? Command::wavefunction
                     : name == "verify"         ? Command::verify
                     : name == "oracle-compare" ? Command::oracle_compare
                                                : Command::demo_divergence;
    auto given = [&](const char* opt) { return chosen->count(opt) > 0; };
    try {
        if (given("--zeta")) config.zeta = zeta;
        if (given("--Z")) config.Z = Z;
        if (config.command == Command::wavefunction || config.command == Command::demo_divergence) {
            if (given("--j")) config.j = j;
            if (given("--eps")) config.epsilon = parse_sign(eps);
            if (given("--k")) config.k = k;
        }
        if (config.command == Command::wavefunction) {
            if (given("--grid")) config.grid = {grid[0], grid[1], static_cast<int>(std::lround(grid[2]))};
            if (given("--algebraic")) config.normalization = Normalization::algebraic;
        }
        config.output_format = format == "json" ? OutputFormat::json : OutputFormat::csv;
        if (given("--precision")) {
            config.precision = precision;
            config.precision_source = "flag";
        } else if (const char* env = std::getenv(kPrecisionEnv); env && *env) {
            try {
                std::size_t used = 0;
                config.precision = std::stoi(env, &used);
                if (used != std::string(env).size()) throw std::invalid_argument(env);
            } catch (const std::exception&) {
                throw UsageError(std::string(kPrecisionEnv) + " must be an integer, got '" + env + "'");
            }
            config.precision_source = std::string("env ") + kPrecisionEnv;
        }
    } catch (const UsageError& e) {
        return report_error(err, "usage", e, kExitUsage);
    }
    return run(config, out, err);
}

std::vector<SpectrumRow> read_spectrum_json(std::istream& in) {
    const json doc = json::parse(in);
    std::vector<SpectrumRow> rows;
    for (const auto& r : doc.at("rows")) {
        rows.push_back({r.at("j").get<double>(), r.at("eps").get<int>(), r.at("k").get<int>(), r.at("mu").get<double>(),
                        r.at("E").get<double>(), r.at("kappa").get<double>(), r.at("nu").get<double>()});
    }
    return rows;
}

}  // namespace dirac_ladder::cli
