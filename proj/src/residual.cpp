#include "dirac_ladder/oracle.hpp"

#include "dirac_ladder/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace dirac_ladder {

namespace {

struct Derivatives {
    double dF, dG;
};

Derivatives central_difference(const RadialSolution& sol, double rho, double relative_step) {
    static constexpr std::array<double, 4> w{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    const double h = relative_step * rho;
    if (!(rho - 4.0 * h > 0.0)) throw DomainError("finite-difference stencil leaves rho > 0");
    Derivatives d{0.0, 0.0};
    for (int j = 1; j <= 4; ++j) {
        const auto plus = sol.evaluate(rho + j * h);
        const auto minus = sol.evaluate(rho - j * h);
        d.dF += w[static_cast<std::size_t>(j - 1)] * (plus.F - minus.F);
        d.dG += w[static_cast<std::size_t>(j - 1)] * (plus.G - minus.G);
    }
    d.dF /= h;
    d.dG /= h;
    return d;
}

}  // namespace

VerificationReport ode_residual(const RadialSolution& sol, std::span<const double> grid, double tolerance,
                                const ResidualOptions& options) {
    const BoundState& st = sol.state();
    const double tau = st.channel.tau(), zeta = st.channel.zeta(), nu = st.nu;

    std::vector<double> r_small(grid.size()), r_big(grid.size());
    std::vector<double> s_small(grid.size()), s_big(grid.size());
    double floor_small = 0.0, floor_big = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double rho = grid[i];
        auto p = sol.evaluate(rho);
        if (options.mode == DerivativeMode::finite_difference) {
            const auto d = central_difference(sol, rho, options.relative_step);
            p.dF = d.dF;
            p.dG = d.dG;
        }
        r_small[i] = -p.dG + tau * p.G / rho + nu * p.F - zeta * p.F / rho;
        s_small[i] = p.dG_scale + std::abs(tau) * p.G_scale / rho + nu * p.F_scale + zeta * p.F_scale / rho;
        r_big[i] = p.dF + tau * p.F / rho - p.G / nu - zeta * p.G / rho;
        s_big[i] = p.dF_scale + std::abs(tau) * p.F_scale / rho + p.G_scale / nu + zeta * p.G_scale / rho;
        floor_small = std::max(floor_small, s_small[i]);
        floor_big = std::max(floor_big, s_big[i]);
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    floor_small *= eps;
    floor_big *= eps;

    auto summarize = [&](const std::vector<double>& r, const std::vector<double>& s, double floor) {
        double sup = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double rel = std::abs(r[i]) / (s[i] + floor);
            sup = std::max(sup, rel);
            sq += rel * rel;
        }
        const double rms = r.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(r.size()));
        return std::pair{sup, rms};
    };
    const auto [sup_small, rms_small] = summarize(r_small, s_small, floor_small);
    const auto [sup_big, rms_big] = summarize(r_big, s_big, floor_big);

    VerificationReport report;
    report.expect_at_most("small-component equation sup", sup_small, tolerance);
    report.expect_at_most("big-component equation sup", sup_big, tolerance);
    report.expect_at_most("small-component equation rms", rms_small, tolerance);
    report.expect_at_most("big-component equation rms", rms_big, tolerance);
    return report;
}

BoundState perturb_energy(const BoundState& state, double delta) {
    BoundState out = state;
    out.energy = state.energy + delta;
    out.mu = mu_from_energy(out.energy, state.channel.zeta(), state.mass);
    out.wavenumber = std::sqrt((state.mass - out.energy) * (state.mass + out.energy));
    out.nu = out.wavenumber / (state.mass + out.energy);
    return out;
}

}  // namespace dirac_ladder
