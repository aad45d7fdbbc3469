#include "dirac_ladder/oracle.hpp"

#include "dirac_ladder/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

namespace dirac_ladder {

namespace odeint = boost::numeric::odeint;

namespace {

// (u, v, N) with F = √(m+E)·u, G = √(m−E)·v and N the accumulated ∫(F² + G²)dρ.
using State = std::array<double, 3>;

constexpr double kAbsTol = 1e-30;
constexpr int kSeriesTerms = 4;

struct Equations {
    double tau, zeta, nu, big2, small2;

    Equations(const Channel& ch, double energy, double mass)
        : tau(ch.tau()),
          zeta(ch.zeta()),
          nu(std::sqrt((mass - energy) / (mass + energy))),
          big2(mass + energy),
          small2(mass - energy) {}

    // d/dx with ρ = e^x:  u' = −τu + (ρ + ζν)v,  v' = τv + (ρ − ζ/ν)u
    void derivative(const State& y, State& dy, double rho, double sign) const {
        dy[0] = sign * (-tau * y[0] + (rho + zeta * nu) * y[1]);
        dy[1] = sign * (tau * y[1] + (rho - zeta / nu) * y[0]);
        dy[2] = rho * (big2 * y[0] * y[0] + small2 * y[1] * y[1]);
    }

    double F(const State& y) const { return std::sqrt(big2) * y[0]; }
    double G(const State& y) const { return std::sqrt(small2) * y[1]; }
};

void check_finite(const State& y) {
    for (double c : y)
        if (!std::isfinite(c)) throw StiffnessFailure("integration overflowed; try a smaller rho_max");
}

// Frobenius series F = Σ a_n ρ^(s+n), G = Σ b_n ρ^(s+n) from a_0 = 1.
State outward_start(const Channel& ch, const Equations& eq, double rho) {
    const double s = ch.s(), tau = ch.tau(), zeta = ch.zeta(), nu = eq.nu;
    std::array<double, kSeriesTerms> a{}, b{};
    a[0] = 1.0;
    b[0] = (s + tau) / zeta;
    for (int n = 1; n < kSeriesTerms; ++n) {
        // [s+n+τ, −ζ; −ζ, τ−s−n] (a_n, b_n) = (b_{n−1}/ν, −ν a_{n−1})
        const double m11 = s + n + tau, m12 = -zeta, m21 = -zeta, m22 = tau - s - n;
        const double r1 = b[static_cast<std::size_t>(n - 1)] / nu, r2 = -nu * a[static_cast<std::size_t>(n - 1)];
        const double det = m11 * m22 - m12 * m21;  // −n(2s + n)
        a[static_cast<std::size_t>(n)] = (r1 * m22 - m12 * r2) / det;
        b[static_cast<std::size_t>(n)] = (m11 * r2 - m21 * r1) / det;
    }
    double f = 0.0, g = 0.0;
    for (int n = kSeriesTerms - 1; n >= 0; --n) {
        f = f * rho + a[static_cast<std::size_t>(n)];
        g = g * rho + b[static_cast<std::size_t>(n)];
    }
    const double lead = std::pow(rho, s);
    f *= lead;
    g *= lead;
    // ∫₀^ρ F² ≈ ρ F(ρ)²/(2s+1) to leading order.
    const double head = rho * (f * f + g * g) / (2.0 * s + 1.0);
    return {f / std::sqrt(eq.big2), g / std::sqrt(eq.small2), head};
}

// ψ₊ ~ ρ^σ e^(−ρ) dominates at large ρ and ψ₋ ≈ (ζm/κ + τ)ψ₊/ρ; the common
// factor is dropped since the equations are linear.
State inward_start(const Equations& eq, double rho) {
    const double coupling = 0.5 * eq.zeta * (eq.nu + 1.0 / eq.nu);  // ζm/κ
    const double c = (coupling + eq.tau) / rho;
    return {1.0 + c, c - 1.0, 0.0};
}

template <class Observer>
State run_leg(const Equations& eq, State y, const std::vector<double>& times, double sign, double tol,
              Observer&& observe) {
    auto rhs = [&](const State& s, State& ds, double t) { eq.derivative(s, ds, std::exp(sign * t), sign); };
    auto stepper = odeint::make_dense_output(kAbsTol, tol, odeint::runge_kutta_dopri5<State>());
    const double dt = (times.back() - times.front()) * 1e-4;
    try {
        odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), dt, [&](const State& s, double t) {
            check_finite(s);
            observe(s, t);
        });
    } catch (const StiffnessFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw StiffnessFailure(std::string("integrator failed: ") + e.what());
    }
    check_finite(y);
    return y;
}

State run_leg(const Equations& eq, State y, double t0, double t1, double sign, double tol) {
    auto rhs = [&](const State& s, State& ds, double t) { eq.derivative(s, ds, std::exp(sign * t), sign); };
    try {
        odeint::integrate_adaptive(odeint::make_controlled(kAbsTol, tol, odeint::runge_kutta_dopri5<State>()), rhs,
                                   y, t0, t1, (t1 - t0) * 1e-4);
    } catch (const std::exception& e) {
        throw StiffnessFailure(std::string("integrator failed: ") + e.what());
    }
    check_finite(y);
    return y;
}

std::vector<double> uniform(double a, double b, int n) {
    std::vector<double> t(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) t[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
    t.back() = b;
    return t;
}

struct Legs {
    State outward, inward;
};

// Outward leg runs in x = ln ρ, inward leg in y = −x so both integrate forwards.
Legs shoot(const Channel& ch, double energy, double mass, const ShootingConfig& cfg) {
    const Equations eq(ch, energy, mass);
    const double x_min = std::log(cfg.rho_min), x_match = std::log(cfg.rho_match), x_max = std::log(cfg.rho_max);
    const State out = run_leg(eq, outward_start(ch, eq, cfg.rho_min), x_min, x_match, 1.0, cfg.integrator_tolerance);
    const State in = run_leg(eq, inward_start(eq, cfg.rho_max), -x_max, -x_match, -1.0, cfg.integrator_tolerance);
    return {out, in};
}

int sign_changes(const std::vector<double>& values) {
    int count = 0;
    double last = 0.0;
    for (double v : values) {
        if (v == 0.0) continue;
        if (last != 0.0 && std::signbit(v) != std::signbit(last)) ++count;
        last = v;
    }
    return count;
}

double refine_root(const Channel& ch, double mass, const ShootingConfig& cfg, double lo, double hi, double f_lo,
                   double f_hi, int& evaluations) {
    auto f = [&](double e) {
        ++evaluations;
        return matching_determinant(ch, e, mass, cfg);
    };
    std::uintmax_t max_iter = 200;
    const double tol = cfg.tolerance;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, f_lo, f_hi, [tol](double x, double y) { return std::abs(y - x) <= tol; }, max_iter);
    return 0.5 * (a + b);
}

}  // namespace

void ShootingConfig::validate(double mass) const {
    if (!(rho_min > 0.0 && rho_min < rho_match && rho_match < rho_max))
        throw DomainError("shooting grid needs 0 < rho_min < rho_match < rho_max");
    if (steps < 2) throw DomainError("shooting needs at least 2 samples per leg");
    if (!(energy_bracket.first > 0.0 && energy_bracket.first < energy_bracket.second && energy_bracket.second < mass))
        throw DomainError("energy bracket must satisfy 0 < E_lo < E_hi < m");
    if (!(tolerance > 0.0) || !(integrator_tolerance > 0.0)) throw DomainError("tolerances must be positive");
}

ShootingConfig default_shooting_config(const Channel& channel, int k, double mass) {
    if (k < 0) throw DomainError("radial index k must be non-negative");
    const double mu = channel.lambda() + k;
    const double zeta = channel.zeta();
    auto level = [&](double shifted) { return mass * shifted / std::hypot(shifted, zeta); };
    ShootingConfig cfg;
    // μ − 1/2 = s + k ± 1/2 separates the level from its neighbours.
    cfg.energy_bracket = {level(channel.s() + k - 0.5), level(channel.s() + k + 0.5)};
    if (!(cfg.energy_bracket.first > 0.0)) cfg.energy_bracket.first = 1e-3 * mass;
    cfg.rho_match = std::max(1.0, mu);
    cfg.rho_max = std::max(40.0, 4.0 * mu + 30.0);
    return cfg;
}

double matching_determinant(const Channel& channel, double energy, double mass, const ShootingConfig& config) {
    if (!(energy > 0.0 && energy < mass)) throw DomainError("shooting energy must lie in (0, m)");
    const Equations eq(channel, energy, mass);
    const Legs legs = shoot(channel, energy, mass, config);
    const double fo = eq.F(legs.outward), go = eq.G(legs.outward);
    const double fi = eq.F(legs.inward), gi = eq.G(legs.inward);
    return (fo * gi - go * fi) / (std::hypot(fo, go) * std::hypot(fi, gi));
}

int expected_big_nodes(Sign epsilon, int k) { return epsilon == Sign::minus ? k : k - 1; }

ShootingResult shooting_solve(const Channel& channel, int k, double mass, const ShootingConfig& config) {
    config.validate(mass);
    ShootingResult result;
    const auto [lo, hi] = config.energy_bracket;
    const double f_lo = matching_determinant(channel, lo, mass, config);
    const double f_hi = matching_determinant(channel, hi, mass, config);
    result.evaluations = 2;
    if (std::signbit(f_lo) == std::signbit(f_hi) && f_lo != 0.0 && f_hi != 0.0)
        throw NoSignChange("matching determinant keeps its sign on [" + std::to_string(lo) + ", "
                           + std::to_string(hi) + "] for " + channel.describe());
    result.energy = refine_root(channel, mass, config, lo, hi, f_lo, f_hi, result.evaluations);

    // Node count from sampled legs; the inward leg is a constant multiple of
    // the continued solution, so sign changes add up.
    const Equations eq(channel, result.energy, mass);
    const double x_min = std::log(config.rho_min), x_match = std::log(config.rho_match);
    const double x_max = std::log(config.rho_max);
    std::vector<double> out_f, in_f;
    run_leg(eq, outward_start(channel, eq, config.rho_min), uniform(x_min, x_match, config.steps), 1.0,
            config.integrator_tolerance, [&](const State& s, double) { out_f.push_back(s[0]); });
    run_leg(eq, inward_start(eq, config.rho_max), uniform(-x_max, -x_match, config.steps), -1.0,
            config.integrator_tolerance, [&](const State& s, double) { in_f.push_back(s[0]); });
    result.nodes = sign_changes(out_f) + sign_changes(in_f);
    result.nodes_match = result.nodes == expected_big_nodes(channel.epsilon(), k);
    return result;
}

std::vector<double> scan_levels(const Channel& channel, double mass, double e_lo, double e_hi, int points,
                                const ShootingConfig& config) {
    if (points < 2) throw DomainError("scan needs at least 2 points");
    ShootingConfig cfg = config;
    cfg.energy_bracket = {e_lo, e_hi};
    cfg.validate(mass);
    std::vector<double> energies = uniform(e_lo, e_hi, points - 1);
    std::vector<double> values(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) values[i] = matching_determinant(channel, energies[i], mass, cfg);

    std::vector<double> roots;
    int evaluations = 0;
    for (std::size_t i = 0; i + 1 < energies.size(); ++i) {
        if (values[i] == 0.0) {
            roots.push_back(energies[i]);
            continue;
        }
        if (std::signbit(values[i]) == std::signbit(values[i + 1]) || values[i + 1] == 0.0) continue;
        roots.push_back(refine_root(channel, mass, cfg, energies[i], energies[i + 1], values[i], values[i + 1],
                                    evaluations));
    }
    if (values.back() == 0.0) roots.push_back(energies.back());
    return roots;
}

std::vector<GridRow> shooting_profile(const Channel& channel, double energy, double mass,
                                      const ShootingConfig& config, std::span<const double> grid) {
    ShootingConfig cfg = config;
    if (!(energy > 0.0 && energy < mass)) throw DomainError("shooting energy must lie in (0, m)");
    if (!(cfg.rho_min > 0.0 && cfg.rho_min < cfg.rho_match && cfg.rho_match < cfg.rho_max))
        throw DomainError("shooting grid needs 0 < rho_min < rho_match < rho_max");
    if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("profile grid must be sorted");
    if (!grid.empty() && (grid.front() <= cfg.rho_min || grid.back() >= cfg.rho_max))
        throw DomainError("profile grid must lie inside (rho_min, rho_max)");

    const Equations eq(channel, energy, mass);
    const double x_min = std::log(cfg.rho_min), x_match = std::log(cfg.rho_match);
    const double x_max = std::log(cfg.rho_max);

    std::vector<double> out_times{x_min}, in_times{-x_max};
    std::vector<std::size_t> out_index, in_index;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = std::log(grid[i]);
        if (grid[i] <= cfg.rho_match) {
            if (x > out_times.back()) out_times.push_back(x);
            out_index.push_back(i);
        }
    }
    if (x_match > out_times.back()) out_times.push_back(x_match);
    for (std::size_t i = grid.size(); i-- > 0;) {
        if (grid[i] > cfg.rho_match) {
            const double y = -std::log(grid[i]);
            if (y > in_times.back()) in_times.push_back(y);
            in_index.push_back(i);
        }
    }
    if (-x_match > in_times.back()) in_times.push_back(-x_match);

    std::vector<GridRow> rows(grid.size());
    std::vector<State> out_states, in_states;
    std::vector<double> out_t, in_t;
    const State out_end = run_leg(eq, outward_start(channel, eq, cfg.rho_min), out_times, 1.0,
                                  cfg.integrator_tolerance, [&](const State& s, double t) {
                                      out_states.push_back(s);
                                      out_t.push_back(t);
                                  });
    const State in_end = run_leg(eq, inward_start(eq, cfg.rho_max), in_times, -1.0, cfg.integrator_tolerance,
                                 [&](const State& s, double t) {
                                     in_states.push_back(s);
                                     in_t.push_back(t);
                                 });

    // Least-squares factor joining the inward leg onto the outward one.
    const double join = (out_end[0] * in_end[0] * eq.big2 + out_end[1] * in_end[1] * eq.small2)
                      / (in_end[0] * in_end[0] * eq.big2 + in_end[1] * in_end[1] * eq.small2);
    const double norm = out_end[2] + join * join * in_end[2];
    const double unit = 1.0 / std::sqrt(norm);

    auto lookup = [](const std::vector<double>& ts, const std::vector<State>& ss, double t) {
        const auto it = std::lower_bound(ts.begin(), ts.end(), t);
        return ss[static_cast<std::size_t>(it - ts.begin())];
    };
    for (std::size_t i : out_index) {
        const State s = lookup(out_t, out_states, std::max(std::log(grid[i]), x_min));
        rows[i] = {grid[i], unit * eq.F(s), unit * eq.G(s)};
    }
    for (std::size_t i : in_index) {
        const State s = lookup(in_t, in_states, -std::log(grid[i]));
        rows[i] = {grid[i], unit * join * eq.F(s), unit * join * eq.G(s)};
    }
    return rows;
}

}  // namespace dirac_ladder
