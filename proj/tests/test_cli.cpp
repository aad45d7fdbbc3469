#include "dirac_ladder/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace dirac_ladder::cli;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dirac-ladder");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fmt_g15(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("spectrum for hydrogen lists the lowest levels") {
    const Outcome r = invoke({"spectrum", "--Z", "1", "--j-max", "0.5", "--k-max", "1"});
    CHECK(r.code == kExitOk);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "j,eps,k,mu,E,kappa,nu");
    CHECK(lines[1].rfind("1/2,-1,0,", 0) == 0);
    CHECK(lines[2].rfind("1/2,-1,1,", 0) == 0);
    CHECK(lines[3].rfind("1/2,+1,1,", 0) == 0);
    CHECK(r.out.find("# conventions: mu = zeta*E/kappa + 1/2") != std::string::npos);
    CHECK(r.out.find("0.999973373968267") != std::string::npos);
}

TEST_CASE("k-max is inclusive") {
    const Outcome r = invoke({"spectrum", "--Z", "1", "--j-max", "0.5", "--k-max", "2"});
    CHECK(data_lines(r.out).size() == 6);
}

TEST_CASE("spectrum JSON round-trips at printed precision") {
    const Outcome r = invoke({"spectrum", "--zeta", "0.37", "--j-max", "2.5", "--k-max", "4", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    std::istringstream in(r.out);
    const auto rows = read_spectrum_json(in);
    REQUIRE(rows.size() == 27);
    const auto table = dirac_ladder::spectrum_table(0.37, dirac_ladder::HalfInteger{5}, 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& st = table.states[i];
        CHECK(rows[i].k == st.k);
        CHECK(rows[i].epsilon == dirac_ladder::to_int(st.channel.epsilon()));
        CHECK(rows[i].energy == std::stod(fmt_g15(st.energy)));
    }
    // Re-serializing the parsed values reproduces the same text.
    const Outcome again = invoke({"spectrum", "--zeta", "0.37", "--j-max", "2.5", "--k-max", "4", "--format", "json"});
    CHECK(again.out == r.out);
}

TEST_CASE("extended precision prints more digits") {
    const Outcome r = invoke({"spectrum", "--zeta", "0.5", "--j-max", "0.5", "--k-max", "0", "--precision", "128"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("0.86602540378443864676372317075293618") != std::string::npos);
    CHECK(r.out.find("# precision_bits: 128") != std::string::npos);
}

TEST_CASE("precision default comes from the environment and is echoed") {
    setenv(kPrecisionEnv, "96", 1);
    const Outcome r = invoke({"spectrum", "--zeta", "0.5", "--j-max", "0.5", "--k-max", "0"});
    unsetenv(kPrecisionEnv);
    CHECK(r.out.find("# precision_source: env DIRAC_LADDER_PRECISION") != std::string::npos);
    CHECK(r.out.find("# precision_bits: 96") != std::string::npos);
    setenv(kPrecisionEnv, "lots", 1);
    CHECK(invoke({"spectrum", "--zeta", "0.5"}).code == kExitUsage);
    unsetenv(kPrecisionEnv);
}

TEST_CASE("SI units are explicit") {
    const Outcome r = invoke({"spectrum", "--zeta", "0.5", "--j-max", "0.5", "--k-max", "0", "--si"});
    CHECK(r.out.find("# energy_unit: J") != std::string::npos);
    CHECK(r.out.find("7.0902415861998") != std::string::npos);
}

TEST_CASE("wavefunction export") {
    const Outcome r = invoke({"wavefunction", "--zeta", "0.5", "--j", "0.5", "--eps", "-1", "--k", "1", "--grid", "0.01",
                              "10", "5"});
    CHECK(r.code == kExitOk);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "rho,F,G");
    CHECK(r.out.find("# normalization: physical") != std::string::npos);
    CHECK(r.out.find("# channel: j=1/2 eps=-1 zeta=0.5") != std::string::npos);
    const Outcome alg = invoke({"wavefunction", "--zeta", "0.5", "--j", "0.5", "--eps", "+1", "--k", "1", "--algebraic"});
    CHECK(alg.out.find("# normalization: algebraic") != std::string::npos);
}

TEST_CASE("wavefunction written to a file is deterministic") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "dirac_ladder_wf_a.json").string();
    const std::string b = (dir / "dirac_ladder_wf_b.json").string();
    for (const auto& path : {a, b})
        CHECK(invoke({"wavefunction", "--Z", "20", "--j", "1.5", "--eps", "+1", "--k", "2", "--format", "json", "-o", path})
                  .code
              == kExitOk);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(!sa.str().empty());
    CHECK(sa.str() == sb.str());
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("physics errors exit 3 and name the channel") {
    const Outcome r = invoke({"wavefunction", "--zeta", "0.5", "--j", "0.5", "--eps", "+1", "--k", "0"});
    CHECK(r.code == kExitPhysics);
    CHECK(r.err.find("UnphysicalState") != std::string::npos);
    CHECK(r.err.find("j=1/2 eps=+1") != std::string::npos);
    const Outcome s = invoke({"wavefunction", "--zeta", "1.1", "--j", "0.5", "--eps", "-1", "--k", "0"});
    CHECK(s.code == kExitPhysics);
    CHECK(s.err.find("Supercritical") != std::string::npos);
    CHECK(invoke({"spectrum", "--zeta", "1.2", "--j-max", "0.5"}).code == kExitPhysics);
}

TEST_CASE("usage errors exit 2") {
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"spectrum"}).code == kExitUsage);
    CHECK(invoke({"spectrum", "--zeta", "0.1", "--Z", "3"}).code == kExitUsage);
    CHECK(invoke({"spectrum", "--zeta", "0.1", "--j-max", "1"}).code == kExitUsage);
    CHECK(invoke({"spectrum", "--zeta", "0.1", "--format", "xml"}).code == kExitUsage);
    CHECK(invoke({"wavefunction", "--zeta", "0.1", "--j", "0.5"}).code == kExitUsage);
    CHECK(invoke({"wavefunction", "--zeta", "0.1", "--j", "0.5", "--eps", "0", "--k", "0"}).code == kExitUsage);
    CHECK(invoke({"wavefunction", "--zeta", "0.1", "--j", "0.5", "--eps", "-1", "--k", "0", "--grid", "5", "1", "10"}).code
          == kExitUsage);
    CHECK(invoke({"verify", "--suite", "nope"}).code == kExitUsage);
    CHECK(invoke({"spectrum", "--zeta", "0.1", "--mass", "-1"}).code == kExitUsage);
    CHECK(invoke({"demo-divergence", "--zeta", "0.1", "--j", "0.5", "--cutoffs", "5"}).code == kExitUsage);
    CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("verify suites pass") {
    const Outcome r = invoke({"verify", "--suite", "algebra", "--suite", "matrices"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("# result: pass") != std::string::npos);
}

TEST_CASE("oracle comparison and divergence demo") {
    const Outcome c = invoke({"oracle-compare", "--zeta", "0.1", "--j-max", "0.5", "--k-max", "2"});
    CHECK(c.code == kExitOk);
    CHECK(data_lines(c.out).size() == 6);
    const Outcome d = invoke({"demo-divergence", "--zeta", "0.5", "--j", "0.5", "--format", "json"});
    CHECK(d.code == kExitOk);
    CHECK(d.out.find("\"result\": \"diverges\"") != std::string::npos);
}

TEST_CASE("run validates a config built in code") {
    RunConfig cfg;
    cfg.command = Command::spectrum;
    cfg.zeta = 0.2;
    cfg.Z = 3;
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == kExitUsage);
    cfg.Z.reset();
    cfg.j_max = 0.5;
    cfg.k_max = 0;
    CHECK(run(cfg, out, err) == kExitOk);
}
