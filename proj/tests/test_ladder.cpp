#include "dirac_ladder/channels.hpp"
#include "dirac_ladder/errors.hpp"
#include "dirac_ladder/ladder.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace dirac_ladder;

namespace {

constexpr double kLambda = 1.3660254037844386;  // ζ = 0.5, j = 1/2

/// Fourth-order central difference of P in x = ln ρ.
double dx_fd(const LadderFunction& f, double rho, double h = 1e-3) {
    auto at = [&](double x) { return f(std::exp(x)); };
    const double x = std::log(rho);
    return (-at(x + 2 * h) + 8 * at(x + h) - 8 * at(x - h) + at(x - 2 * h)) / (12 * h);
}

double dxx_fd(const LadderFunction& f, double rho, double h = 1e-3) {
    auto at = [&](double x) { return f(std::exp(x)); };
    const double x = std::log(rho);
    return (-at(x + 2 * h) + 16 * at(x + h) - 30 * at(x) + 16 * at(x - h) - at(x - 2 * h)) / (12 * h * h);
}

}  // namespace

TEST_CASE("ground prefactor matches frozen values") {
    CHECK(ground_ladder_function(kLambda).q()[0] == doctest::Approx(1.9053062883085297).epsilon(1e-14));
    CHECK(ground_ladder_function(1.0).q()[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(ground_ladder_function(0.5), DomainError);
}

TEST_CASE("ladder coefficients") {
    CHECK(raising_coefficient(kLambda, kLambda) == doctest::Approx(1.6528916502810695).epsilon(1e-14));
    CHECK(lowering_coefficient(kLambda, kLambda) == 0.0);
    CHECK(lowering_coefficient(kLambda + 1, kLambda) == doctest::Approx(-1.6528916502810695).epsilon(1e-14));
}

TEST_CASE("raising and lowering act as the differential operators") {
    LadderFunction f = ground_ladder_function(kLambda);
    for (int k = 0; k < 5; ++k) {
        const LadderStep up = raise(f);
        for (double rho : {0.3, 1.0, 2.5, 6.0}) {
            const double p = f(rho);
            const double omega_plus = dx_fd(f, rho) - rho * p + (f.mu() + 0.5) * p;
            CHECK(up.coefficient * up.function(rho) == doctest::Approx(omega_plus).epsilon(1e-8).scale(1.0));
            const double casimir = dxx_fd(f, rho) + 2 * f.mu() * rho * p - rho * rho * p - 0.25 * p;
            CHECK(casimir == doctest::Approx(kLambda * (kLambda - 1) * p).epsilon(1e-6).scale(1.0));
            if (k > 0) {
                const LadderStep down = lower(f);
                const double omega_minus = dx_fd(f, rho) + rho * p - (f.mu() - 0.5) * p;
                CHECK(down.coefficient * down.function(rho) == doctest::Approx(omega_minus).epsilon(1e-8).scale(1.0));
            }
        }
        f = up.function;
    }
}

TEST_CASE("analytic x-derivative matches finite differences") {
    const LadderFunction f = ladder_state(kLambda, 3);
    for (double rho : {0.2, 1.5, 7.0}) CHECK(f.dx(rho) == doctest::Approx(dx_fd(f, rho)).epsilon(1e-8).scale(1.0));
    const LadderFunction g = negative_branch_ground(kLambda);
    CHECK(g.dx(1.0) == doctest::Approx(dx_fd(g, 1.0)).epsilon(1e-8));
}

TEST_CASE("lowering the ground state annihilates it") {
    const LadderStep s = lower(ground_ladder_function(kLambda));
    CHECK(s.function.is_zero());
    CHECK(s.coefficient == 0.0);
    CHECK_THROWS_AS(lower(s.function), DomainError);
}

TEST_CASE("lower undoes raise") {
    LadderFunction f = ground_ladder_function(0.9);
    for (int k = 0; k < 15; ++k) {
        const LadderFunction g = raise(f).function;
        const LadderFunction back = lower(g).function;
        REQUIRE(back.k() == f.k());
        for (std::size_t n = 0; n < f.q().size(); ++n)
            CHECK(back.q()[n] == doctest::Approx(f.q()[n]).epsilon(1e-12).scale(f.q().max_abs()));
        f = g;
    }
}

TEST_CASE("Casimir eigenvalue is constant along the ladder") {
    for (int k = 0; k <= 20; ++k) {
        const Eigenpair e = apply_casimir(ladder_state(kLambda, k));
        CHECK(e.eigenvalue == doctest::Approx(0.5).epsilon(1e-10));
    }
    CHECK(apply_omega3(ladder_state(kLambda, 4)).eigenvalue == doctest::Approx(kLambda + 4));
}

TEST_CASE("a non-eigenfunction is rejected by the Casimir check") {
    const LadderFunction g = ladder_state(kLambda, 2);
    const LadderFunction mixed(kLambda, 2, Branch::positive, g.q() + Polynomial({0.3}));
    CHECK_THROWS_AS(apply_casimir(mixed), NotAnEigenfunction);
}

TEST_CASE("commutation relations hold coefficient by coefficient") {
    for (int k : {0, 1, 7, 20}) {
        const VerificationReport r = commutator_check(ladder_state(kLambda, k));
        CHECK(r.passed());
        CHECK(r.entries().size() == 3);
    }
}

TEST_CASE("positive operator values") {
    CHECK(positive_operator_check(ladder_state(kLambda, 0)) == doctest::Approx(3.2320508075688773).epsilon(1e-14));
    CHECK(positive_operator_check(ladder_state(kLambda, 2)) == doctest::Approx(22.160254037844386).epsilon(1e-14));
}

TEST_CASE("branch and growth guards") {
    const LadderFunction neg = negative_branch_ground(kLambda);
    CHECK(neg.mu() == -kLambda);
    CHECK(neg.growth() == 1.0);
    CHECK_THROWS_AS(raise(neg), WrongBranch);
    CHECK_THROWS_AS(lower(neg), WrongBranch);
    CHECK_THROWS_AS(ladder_state(kLambda, 5, LadderLimits{4}), CoefficientGrowth);
    CHECK_THROWS_AS(ladder_state(kLambda, -1), DomainError);
    CHECK_THROWS_AS(ground_ladder_function(kLambda).envelope(0.0), DomainError);
}

TEST_CASE("the negative ground state is annihilated by the raising map") {
    const LadderFunction neg = negative_branch_ground(kLambda);
    const Polynomial r = maps::raising(neg.q(), kLambda, neg.mu(), neg.growth());
    CHECK(r.max_abs() <= 1e-14 * neg.q().max_abs());
}

TEST_CASE("matrix representation entries") {
    const auto m1 = matrix_representation(Generator::omega1, kLambda, 3);
    const auto m2 = matrix_representation(Generator::omega2, kLambda, 3);
    const auto m3 = matrix_representation(Generator::omega3, kLambda, 3);
    REQUIRE(m1.basis_mus.size() == 8);
    CHECK(m1.basis_mus[3] == doctest::Approx(-kLambda));
    CHECK(m1.basis_mus[4] == doctest::Approx(kLambda));
    // Row μ = λ, column μ = λ + 1.
    CHECK(m1.entries(4, 5).real() == doctest::Approx(-0.8264458251405347).epsilon(1e-14));
    CHECK(m1.entries(5, 4).real() == doctest::Approx(0.8264458251405347).epsilon(1e-14));
    // The branches do not couple.
    CHECK(std::abs(m1.entries(3, 4)) == 0.0);
    CHECK(m3.entries(4, 4).real() == doctest::Approx(kLambda));
    CHECK(m1.entries.trace() == std::complex<double>(0.0, 0.0));
    CHECK(m2.entries.trace() == std::complex<double>(0.0, 0.0));
    CHECK(std::abs(m3.entries.trace()) < 1e-12);
    CHECK(interior_commutator_defect(m1, m2, m3) < 1e-12);
}

TEST_CASE("truncation only breaks the commutator in the edge rows") {
    const auto m1 = matrix_representation(Generator::omega1, kLambda, 2);
    const auto m2 = matrix_representation(Generator::omega2, kLambda, 2);
    const auto m3 = matrix_representation(Generator::omega3, kLambda, 2);
    const std::complex<double> i(0.0, 1.0);
    const Eigen::MatrixXcd d = m1.entries * m2.entries - m2.entries * m1.entries - i * m3.entries;
    const auto last = d.rows() - 1;
    CHECK(d.row(last).cwiseAbs().maxCoeff() > 1e-3);
    CHECK(d.row(0).cwiseAbs().maxCoeff() > 1e-3);
}
