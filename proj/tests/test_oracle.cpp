#include "dirac_ladder/channels.hpp"
#include "dirac_ladder/errors.hpp"
#include "dirac_ladder/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace dirac_ladder;

namespace {
const std::vector<double> kGrid = log_grid(1e-3, 30.0, 400);
}

TEST_CASE("exact solutions have negligible residual in both derivative modes") {
    const Channel ch = make_channel(HalfInteger{3}, Sign::plus, 0.5);
    const RadialSolution sol = build_solution(bound_energy(ch, 3));
    const VerificationReport exact = ode_residual(sol, kGrid);
    CHECK(exact.passed());
    CHECK(exact.max_measured() < 1e-12);
    ResidualOptions fd;
    fd.mode = DerivativeMode::finite_difference;
    const VerificationReport approx = ode_residual(sol, kGrid, 1e-8, fd);
    CHECK(approx.passed());
}

TEST_CASE("perturbed energy is detected by the residual") {
    const BoundState st = bound_energy(make_channel(HalfInteger{1}, Sign::minus, 0.1), 4);
    const RadialSolution off = build_solution(st).with_state(perturb_energy(st, -1e-3));
    const VerificationReport r = ode_residual(off, kGrid);
    CHECK_FALSE(r.passed());
    CHECK(r.max_measured() > 1e-4);
    CHECK_THROWS_AS(perturb_energy(st, 1.0), DomainError);
}

TEST_CASE("shooting reproduces the closed-form levels") {
    for (Sign eps : {Sign::minus, Sign::plus})
        for (int k = eps == Sign::minus ? 0 : 1; k <= 3; ++k) {
            const Channel ch = make_channel(HalfInteger{1}, eps, 0.5);
            const double exact = bound_energy(ch, k).energy;
            const ShootingResult r = shooting_solve(ch, k, 1.0, default_shooting_config(ch, k));
            CHECK(r.energy == doctest::Approx(exact).epsilon(1e-10));
            CHECK(r.nodes == expected_big_nodes(eps, k));
            CHECK(r.nodes_match);
        }
}

TEST_CASE("shooting respects the mass scale") {
    const Channel ch = make_channel(HalfInteger{3}, Sign::minus, 0.2);
    const ShootingResult r = shooting_solve(ch, 1, 2.0, default_shooting_config(ch, 1, 2.0));
    CHECK(r.energy == doctest::Approx(bound_energy(ch, 1, 2.0).energy).epsilon(1e-10));
}

TEST_CASE("no eps=+1 level below the first excited energy") {
    const Channel ch = make_channel(HalfInteger{1}, Sign::plus, 0.5);
    ShootingConfig cfg = default_shooting_config(ch, 1);
    cfg.energy_bracket = {0.5, bound_energy(ch, 1).energy - 1e-3};
    CHECK_THROWS_AS(shooting_solve(ch, 1, 1.0, cfg), NoSignChange);
}

TEST_CASE("scan finds exactly the closed-form levels in a window") {
    ShootingConfig cfg;
    cfg.rho_match = 3.0;
    cfg.rho_max = 80.0;
    const Channel minus = make_channel(HalfInteger{1}, Sign::minus, 0.5);
    const auto a = scan_levels(minus, 1.0, 0.5, 0.99, 400, cfg);
    REQUIRE(a.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(a[k] == doctest::Approx(bound_energy(minus, k).energy).epsilon(1e-9));
    const Channel plus = make_channel(HalfInteger{1}, Sign::plus, 0.5);
    const auto b = scan_levels(plus, 1.0, 0.5, 0.99, 400, cfg);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == doctest::Approx(bound_energy(plus, 1).energy).epsilon(1e-9));
}

TEST_CASE("shooting profile matches the algebraic wavefunction") {
    const Channel ch = make_channel(HalfInteger{1}, Sign::minus, 0.5);
    const BoundState st = bound_energy(ch, 2);
    const ShootingConfig cfg = default_shooting_config(ch, 2);
    const auto grid = log_grid(1e-2, 20.0, 60);
    const auto numeric = shooting_profile(ch, st.energy, 1.0, cfg, grid);
    const auto exact = evaluate_on_grid(physical_normalize(build_solution(st)), grid);
    const double sign = numeric[0].F * exact[0].F > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(sign * numeric[i].F == doctest::Approx(exact[i].F).epsilon(1e-5).scale(1.0));
        CHECK(sign * numeric[i].G == doctest::Approx(exact[i].G).epsilon(1e-5).scale(1.0));
    }
}

TEST_CASE("shooting config validation") {
    ShootingConfig cfg;
    cfg.rho_match = 100.0;
    CHECK_THROWS_AS(cfg.validate(1.0), DomainError);
    ShootingConfig above;
    above.energy_bracket = {0.5, 1.2};
    CHECK_THROWS_AS(above.validate(1.0), DomainError);
}

TEST_CASE("expected node counts") {
    CHECK(expected_big_nodes(Sign::minus, 3) == 3);
    CHECK(expected_big_nodes(Sign::plus, 3) == 2);
}

TEST_CASE("negative branch norm diverges, positive branch converges") {
    const double lambda = 1.3660254037844386;
    const std::vector<double> cutoffs{1.0, 5.0, 10.0, 20.0, 30.0};
    const VerificationReport r = divergence_check(negative_branch_ground(lambda), cutoffs);
    CHECK(r.passed());
    const LadderFunction pos = ground_ladder_function(lambda);
    CHECK(truncated_norm(pos, 60.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(divergence_check(pos, cutoffs), WrongBranch);
}
