#include "dirac_ladder/radial.hpp"

#include "dirac_ladder/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dirac_ladder {

std::string to_string(Normalization n) { return n == Normalization::physical ? "physical" : "algebraic"; }

RadialSolution::RadialSolution(BoundState state, LadderFunction plus, LadderFunction minus, double rel, double scale)
    : state_(std::move(state)),
      psi_plus_(std::move(plus)),
      psi_minus_(std::move(minus)),
      rel_coeff_(rel),
      scale_(scale) {
    assemble();
}

void RadialSolution::assemble() {
    const double m = state_.mass, e = state_.energy;
    const double big = scale_ * std::sqrt(m + e);
    // √(m−E) = κ/√(m+E) avoids cancellation when E is close to m.
    const double small = scale_ * state_.wavenumber / std::sqrt(m + e);
    const Polynomial minus = psi_minus_.q() * rel_coeff_;
    big_q_ = (minus + psi_plus_.q()) * big;
    small_q_ = (minus - psi_plus_.q()) * small;
}

RadialSolution::Sample RadialSolution::evaluate(double rho) const {
    if (!(rho > 0.0)) throw DomainError("radial functions are evaluated at rho > 0");
    const double s = state_.channel.s();
    const double env = std::exp(s * std::log(rho) - rho);
    const Polynomial dbig = big_q_.derivative();
    const Polynomial dsmall = small_q_.derivative();
    // d/dρ [ρ^s e^(−ρ) p] = ρ^s e^(−ρ) [(s/ρ − 1) p + p']
    const double shift = s / rho - 1.0;
    const double shift_abs = s / rho + 1.0;
    Sample out{};
    out.rho = rho;
    out.F = env * big_q_(rho);
    out.G = env * small_q_(rho);
    out.dF = env * (shift * big_q_(rho) + dbig(rho));
    out.dG = env * (shift * small_q_(rho) + dsmall(rho));
    out.F_scale = env * big_q_.magnitude(rho);
    out.G_scale = env * small_q_.magnitude(rho);
    out.dF_scale = env * (shift_abs * big_q_.magnitude(rho) + dbig.magnitude(rho));
    out.dG_scale = env * (shift_abs * small_q_.magnitude(rho) + dsmall.magnitude(rho));
    return out;
}

RadialSolution RadialSolution::scaled(double factor) const {
    RadialSolution out = *this;
    out.scale_ *= factor;
    out.normalization_ = Normalization::algebraic;
    out.assemble();
    return out;
}

RadialSolution RadialSolution::with_state(const BoundState& other) const {
    RadialSolution out = *this;
    out.state_ = other;  // functions untouched
    return out;
}

RadialSolution RadialSolution::with_normalization(Normalization n) const {
    RadialSolution out = *this;
    out.normalization_ = n;
    return out;
}

RadialSolution build_solution(const BoundState& state) {
    const Channel& ch = state.channel;
    if (!is_physical(ch.epsilon(), state.k))
        throw UnphysicalState("k=0 with eps=+1 is not a solution of the first-order system (" + ch.describe() + ")");

    LadderFunction plus = ladder_state(ch.lambda(), state.k);
    if (state.k == 0) {
        LadderFunction zero(ch.lambda(), -1, Branch::positive, Polynomial{});
        return RadialSolution(state, std::move(plus), std::move(zero), 0.0, 1.0);
    }
    const LadderStep down = lower(plus);
    // ζm/κ = √(ζ² + (μ − 1/2)²)
    const double coupling = std::hypot(ch.zeta(), state.mu - 0.5);
    const double rel = down.coefficient / (coupling - ch.tau());
    return RadialSolution(state, std::move(plus), down.function, rel, 1.0);
}

std::vector<GridRow> evaluate_on_grid(const RadialSolution& sol, std::span<const double> grid) {
    std::vector<GridRow> rows;
    rows.reserve(grid.size());
    for (double rho : grid) {
        const auto p = sol.evaluate(rho);
        rows.push_back({rho, p.F, p.G});
    }
    return rows;
}

double radial_norm(const RadialSolution& sol, const QuadratureSpec& spec) {
    QuadratureSpec local = spec;
    local.exponent = 2.0 * sol.state().channel.s();
    const Polynomial& big = sol.big_q();
    const Polynomial& small = sol.small_q();
    return integrate_weighted(
               [&](double rho) {
                   const double f = big(rho), g = small(rho);
                   return f * f + g * g;
               },
               local)
        .value;
}

RadialSolution physical_normalize(const RadialSolution& sol, const QuadratureSpec& spec) {
    const double norm = radial_norm(sol, spec);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw QuadratureFailure("radial norm is not positive and finite");
    return sol.scaled(1.0 / std::sqrt(norm)).with_normalization(Normalization::physical);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("log grid needs 0 < lo < hi and n >= 2");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (!(hi > lo) || n < 2) throw DomainError("linear grid needs lo < hi and n >= 2");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    g.back() = hi;
    return g;
}

std::vector<double> big_component_nodes(const RadialSolution& sol) {
    const Polynomial& p = sol.big_q();
    std::vector<double> nodes;
    if (p.degree() < 1) return nodes;
    double bound = 0.0;
    for (int i = 0; i < p.degree(); ++i) bound = std::max(bound, std::abs(p[static_cast<std::size_t>(i)] / p.leading()));
    bound += 1.0;

    const auto grid = log_grid(1e-8, bound, 20000);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double a = grid[i], b = grid[i + 1];
        double fa = p(a), fb = p(b);
        if (fa == 0.0) {
            nodes.push_back(a);
            continue;
        }
        if (std::signbit(fa) == std::signbit(fb) || fb == 0.0) continue;
        for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
            const double mid = 0.5 * (a + b);
            const double fm = p(mid);
            if (std::signbit(fm) == std::signbit(fa)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        nodes.push_back(0.5 * (a + b));
    }
    return nodes;
}

}  // namespace dirac_ladder
