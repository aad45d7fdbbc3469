#pragma once

#include "dirac_ladder/channels.hpp"
#include "dirac_ladder/ladder.hpp"
#include "dirac_ladder/radial.hpp"
#include "dirac_ladder/report.hpp"

#include <span>
#include <utility>
#include <vector>

namespace dirac_ladder {

// ---------------------------------------------------------------------------
// First-order residuals
//
//   (−d/dρ + τ/ρ) G = (−ν + ζ/ρ) F
//   (+d/dρ + τ/ρ) F = (1/ν + ζ/ρ) G
// ---------------------------------------------------------------------------

enum class DerivativeMode {
    exact,             ///< derivatives of the stored polynomials
    finite_difference  ///< 8th-order central differences of F and G
};

struct ResidualOptions {
    DerivativeMode mode = DerivativeMode::exact;
    /// Step of the difference stencil relative to ρ.
    double relative_step = 2e-3;
};

/// Pointwise residual divided by the sum of the magnitudes of the terms in
/// each equation, plus a floor of machine epsilon times the largest such sum
/// on the grid. Entries: sup and RMS for each equation; the sup entries are
/// judged against `tolerance`.
VerificationReport ode_residual(const RadialSolution& sol, std::span<const double> grid, double tolerance = 1e-8,
                                const ResidualOptions& options = {});

/// Energy shifted by `delta`, with κ, ν and μ recomputed; channel and k kept.
BoundState perturb_energy(const BoundState& state, double delta);

// ---------------------------------------------------------------------------
// Shooting eigensolver
// ---------------------------------------------------------------------------

struct ShootingConfig {
    double rho_min = 1e-4;
    double rho_match = 2.0;
    double rho_max = 60.0;
    /// Samples per integration leg used for node counting and profiles.
    int steps = 4000;
    std::pair<double, double> energy_bracket{0.5, 0.999};
    /// Absolute tolerance on E.
    double tolerance = 1e-13;
    /// Relative tolerance of the adaptive integrator.
    double integrator_tolerance = 1e-12;

    /// Throws DomainError unless 0 < ρ_min < ρ_match < ρ_max and the bracket
    /// lies inside (0, m).
    void validate(double mass) const;
};

/// Bracket E(μ = λ+k ∓ 1/2) around the closed-form level, matching point near
/// the classical region and a tail long enough for the decaying solution.
ShootingConfig default_shooting_config(const Channel& channel, int k, double mass = 1.0);

/// sin of the angle between the outward and inward (F, G) vectors at ρ_match.
/// Zero exactly at eigenvalues. Throws StiffnessFailure on overflow.
double matching_determinant(const Channel& channel, double energy, double mass, const ShootingConfig& config);

struct ShootingResult {
    double energy = 0.0;
    int nodes = 0;  ///< interior zeros of F
    bool nodes_match = false;  ///< nodes == expected_big_nodes(ε, k)
    int evaluations = 0;
};

/// Root of the matching determinant inside config.energy_bracket.
/// Throws NoSignChange if the determinant has the same sign at both ends.
ShootingResult shooting_solve(const Channel& channel, int k, double mass, const ShootingConfig& config);

/// Every sign change of the matching determinant on `points` equally spaced
/// energies in [e_lo, e_hi], each refined to config.tolerance.
std::vector<double> scan_levels(const Channel& channel, double mass, double e_lo, double e_hi, int points,
                                const ShootingConfig& config);

/// Interior zeros of F expected for radial index k: k for ε = −1, k − 1 for ε = +1.
int expected_big_nodes(Sign epsilon, int k);

/// Numerically integrated (F, G) at `energy`, joined at ρ_match and scaled to
/// ∫(F² + G²) dρ = 1. `grid` must be sorted and inside (ρ_min, ρ_max).
std::vector<GridRow> shooting_profile(const Channel& channel, double energy, double mass,
                                      const ShootingConfig& config, std::span<const double> grid);

// ---------------------------------------------------------------------------
// Negative-branch divergence
// ---------------------------------------------------------------------------

/// N(R) = ∫₀^R P(ρ)² dρ/ρ by tanh-sinh quadrature.
double truncated_norm(const LadderFunction& f, double cutoff);

/// Cutoffs at or beyond this value are "large" for the exponential-growth test.
inline constexpr double kDivergenceAsymptoticCutoff = 5.0;

/// Strict growth of N over sorted cutoffs, and N(R₂)/N(R₁) > e^(R₂−R₁) for
/// consecutive large cutoffs. Throws WrongBranch for positive-branch input.
VerificationReport divergence_check(const LadderFunction& f, std::span<const double> cutoffs);

}  // namespace dirac_ladder
