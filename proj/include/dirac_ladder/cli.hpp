#pragma once

#include "dirac_ladder/errors.hpp"
#include "dirac_ladder/radial.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dirac_ladder::cli {

enum class Command { spectrum, wavefunction, verify, oracle_compare, demo_divergence };
enum class OutputFormat { csv, json };

/// Bad or inconsistent flags. Exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  ///< a check or comparison did not pass
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPhysics = 3;

inline constexpr const char* kPrecisionEnv = "DIRAC_LADDER_PRECISION";
/// CODATA 2018 electron mass in kg and the exact speed of light in m/s.
inline constexpr double kElectronMassKg = 9.1093837015e-31;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kReducedPlanck = 1.054571817e-34;

struct GridSpec {
    double min = 1e-3;
    double max = 30.0;
    int count = 200;
};

struct RunConfig {
    Command command = Command::spectrum;
    std::optional<double> zeta;
    std::optional<int> Z;
    double alpha = 0.0072973525693;
    std::optional<double> j;
    std::optional<int> epsilon;
    std::optional<int> k;
    double j_max = 1.5;
    int k_max = 3;
    double mass = 1.0;
    GridSpec grid;
    int precision = 53;
    std::string precision_source = "default";
    OutputFormat output_format = OutputFormat::csv;
    std::string output_path;  ///< empty: stdout
    std::vector<std::string> suites;  ///< empty: every suite
    bool si = false;
    double electron_mass = kElectronMassKg;
    Normalization normalization = Normalization::physical;
    std::vector<double> cutoffs{5.0, 10.0, 20.0};
    double compare_tolerance = 1e-6;

    /// Throws UsageError when fields conflict with each other or the command.
    void validate() const;
    /// ζ given directly or as Zα.
    double resolved_zeta() const;
};

std::string to_string(Command c);

/// Executes a validated config; returns the process exit code. Library
/// errors are reported on `err` and mapped to exit codes 2 or 3.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (precision default from the environment) and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SpectrumRow {
    double j = 0.0;
    int epsilon = 0;
    int k = 0;
    double mu = 0.0, energy = 0.0, wavenumber = 0.0, nu = 0.0;
};

/// Reads the `rows` of a spectrum JSON document written by run().
std::vector<SpectrumRow> read_spectrum_json(std::istream& in);

}  // namespace dirac_ladder::cli
