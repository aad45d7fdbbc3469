#include "dirac_ladder/suites.hpp"

#include "dirac_ladder/channels.hpp"
#include "dirac_ladder/errors.hpp"
#include "dirac_ladder/ladder.hpp"
#include "dirac_ladder/oracle.hpp"
#include "dirac_ladder/quadrature.hpp"
#include "dirac_ladder/radial.hpp"

#include <cmath>
#include <complex>

#include <fmt/format.h>

namespace dirac_ladder {

namespace {

constexpr double kAlgebraTol = 1e-10;
constexpr double kNormTol = 1e-8;
constexpr double kConvergenceTol = 1e-10;
constexpr double kResidualTol = 1e-8;
constexpr double kDiscrimination = 1e-4;
constexpr double kMatrixTol = 1e-12;

std::string label(double zeta, int twice_j) { return fmt::format("zeta={:g} j={}/2", zeta, twice_j); }

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double max_relative_difference(const Polynomial& a, const Polynomial& b) {
    const double scale = b.max_abs();
    double worst = 0.0;
    for (std::size_t n = 0; n < std::max(a.size(), b.size()); ++n) worst = std::max(worst, std::abs(a[n] - b[n]));
    return worst / scale;
}

VerificationReport algebra_suite(const SuiteGrid& grid) {
    VerificationReport report;
    for (double zeta : grid.zetas)
        for (int tj : grid.twice_js) {
            const Channel ch = make_channel(HalfInteger{tj}, Sign::minus, zeta);
            const double lam = ch.lambda();
            const std::string tag = label(zeta, tj);

            const LadderStep annihilated = lower(ground_ladder_function(lam));
            report.expect_at_most(tag + " lower(ground) coefficient", std::abs(annihilated.coefficient), 0.0);
            report.expect_at_most(tag + " lower(ground) is zero", annihilated.function.is_zero() ? 0.0 : 1.0, 0.0);

            double commutator = 0.0, closure = 0.0, product = 0.0, plus = 0.0, degree = 0.0;
            LadderFunction f = ground_ladder_function(lam);
            for (int k = 0; k <= grid.algebra_k_max; ++k) {
                commutator = std::max(commutator, commutator_check(f, kAlgebraTol).max_measured());
                degree = std::max(degree, std::abs(f.q().degree() - k) * 1.0);
                if (k == grid.algebra_k_max) break;
                const double mu = f.mu();
                const LadderStep up = raise(f);
                const LadderStep back = lower(up.function);
                closure = std::max(closure, max_relative_difference(back.function.q(), f.q()));
                const double expected = -(mu * (mu + 1.0) - lam * (lam - 1.0));
                product = std::max(product, relative(back.coefficient * up.coefficient, expected));
                plus = std::max(plus, relative(up.coefficient, std::sqrt(mu * (mu + 1.0) - lam * (lam - 1.0))));
                f = up.function;
            }
            report.expect_at_most(tag + " commutators", commutator, kAlgebraTol);
            report.expect_at_most(tag + " lower(raise(f)) = f", closure, kAlgebraTol);
            report.expect_at_most(tag + " C-(mu+1) C+(mu)", product, kAlgebraTol);
            report.expect_at_most(tag + " C+(mu) formula", plus, kAlgebraTol);
            report.expect_at_most(tag + " degree after k raises", degree, 0.0);
        }
    return report;
}

VerificationReport casimir_suite(const SuiteGrid& grid) {
    VerificationReport report;
    for (double zeta : grid.zetas)
        for (int tj : grid.twice_js) {
            const Channel ch = make_channel(HalfInteger{tj}, Sign::minus, zeta);
            const double lam = ch.lambda();
            double spread = 0.0, vs_channel = 0.0;
            LadderFunction f = ground_ladder_function(lam);
            for (int k = 0; k <= grid.algebra_k_max; ++k) {
                const double w = apply_casimir(f, kAlgebraTol).eigenvalue;
                spread = std::max(spread, relative(w, lam * (lam - 1.0)));
                vs_channel = std::max(vs_channel, relative(w, ch.omega()));
                if (k < grid.algebra_k_max) f = raise(f).function;
            }
            report.expect_at_most(label(zeta, tj) + " Casimir = lambda(lambda-1)", spread, kAlgebraTol);
            report.expect_at_most(label(zeta, tj) + " Casimir = j(j+1)-zeta^2", vs_channel, kAlgebraTol);
        }
    return report;
}

VerificationReport quadrature_suite(const SuiteGrid& grid) {
    VerificationReport report;
    for (double zeta : grid.zetas)
        for (int tj : grid.twice_js) {
            const Channel ch = make_channel(HalfInteger{tj}, Sign::minus, zeta);
            const double lam = ch.lambda();
            double norm = 0.0, convergence = 0.0;
            LadderFunction f = ground_ladder_function(lam);
            for (int k = 0; k <= grid.function_k_max; ++k) {
                norm = std::max(norm, std::abs(inner_product(f, f) - 1.0));
                QuadratureSpec at128;
                at128.nodes = 128;
                at128.max_nodes = 256;
                at128.exponent = 2.0 * lam - 2.0;
                const Polynomial& q = f.q();
                const auto r = integrate_weighted([&](double rho) { return q(rho) * q(rho); }, at128);
                convergence = std::max(convergence, r.last_change);
                if (k < grid.function_k_max) f = raise(f).function;
            }
            const LadderFunction g = ground_ladder_function(lam);
            const double cross = inner_product(g, raise(g).function);
            report.expect_at_most(label(zeta, tj) + " unit norms", norm, kNormTol);
            report.expect_at_most(label(zeta, tj) + " node doubling beyond 128", convergence, kConvergenceTol);
            report.expect_at_most(label(zeta, tj) + " distinct mu orthogonal", std::abs(cross), 0.0);
        }
    return report;
}

VerificationReport ode_suite(const SuiteGrid& grid) {
    VerificationReport report;
    const auto rho = log_grid(1e-3, 30.0, 2000);
    for (double zeta : grid.zetas)
        for (int tj : grid.twice_js)
            for (Sign eps : {Sign::minus, Sign::plus}) {
                const Channel ch = make_channel(HalfInteger{tj}, eps, zeta);
                double worst = 0.0, weakest = INFINITY;
                for (int k = 0; k <= grid.function_k_max; ++k) {
                    if (!is_physical(eps, k)) continue;
                    const BoundState st = bound_energy(ch, k);
                    const RadialSolution sol = build_solution(st);
                    worst = std::max(worst, ode_residual(sol, rho, kResidualTol).max_measured());
                    const RadialSolution off = sol.with_state(perturb_energy(st, -1e-3));
                    weakest = std::min(weakest, ode_residual(off, rho, kResidualTol).max_measured());
                }
                const std::string tag = label(zeta, tj) + " eps=" + to_string(eps);
                report.expect_at_most(tag + " residual sup", worst, kResidualTol);
                report.expect_above(tag + " perturbed-energy residual", weakest, kDiscrimination);
            }
    return report;
}

VerificationReport matrices_suite(const SuiteGrid& grid) {
    VerificationReport report;
    for (double zeta : grid.zetas)
        for (int tj : grid.twice_js) {
            const double lam = make_channel(HalfInteger{tj}, Sign::minus, zeta).lambda();
            const auto m1 = matrix_representation(Generator::omega1, lam, grid.matrix_K);
            const auto m2 = matrix_representation(Generator::omega2, lam, grid.matrix_K);
            const auto m3 = matrix_representation(Generator::omega3, lam, grid.matrix_K);
            const std::string tag = label(zeta, tj);
            report.expect_at_most(tag + " tr O1", std::abs(m1.entries.trace()), 0.0);
            report.expect_at_most(tag + " tr O2", std::abs(m2.entries.trace()), 0.0);
            report.expect_at_most(tag + " tr O3", std::abs(m3.entries.trace()), kMatrixTol);
            report.expect_at_most(tag + " O1 real antisymmetric",
                                  (m1.entries + m1.entries.transpose()).cwiseAbs().maxCoeff()
                                      + m1.entries.imag().cwiseAbs().maxCoeff(),
                                  0.0);
            report.expect_at_most(tag + " O2 anti-Hermitian", (m2.entries + m2.entries.adjoint()).cwiseAbs().maxCoeff(),
                                  0.0);
            const Eigen::MatrixXcd off_diag = m3.entries - Eigen::MatrixXcd(m3.entries.diagonal().asDiagonal());
            report.expect_at_most(tag + " O3 real diagonal",
                                  off_diag.cwiseAbs().maxCoeff() + m3.entries.imag().cwiseAbs().maxCoeff(), 0.0);
            report.expect_at_most(tag + " interior [O1,O2]-iO3", interior_commutator_defect(m1, m2, m3), kMatrixTol);
        }
    return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"algebra", "casimir", "quadrature", "ode", "matrices"};
    return names;
}

VerificationReport run_suite(std::string_view name, const SuiteGrid& grid) {
    if (name == "algebra") return algebra_suite(grid);
    if (name == "casimir") return casimir_suite(grid);
    if (name == "quadrature") return quadrature_suite(grid);
    if (name == "ode") return ode_suite(grid);
    if (name == "matrices") return matrices_suite(grid);
    throw DomainError("unknown suite '" + std::string(name) + "'");
}

}  // namespace dirac_ladder
