#pragma once

#include "dirac_ladder/channels.hpp"
#include "dirac_ladder/ladder.hpp"
#include "dirac_ladder/quadrature.hpp"

#include <span>
#include <vector>

namespace dirac_ladder {

enum class Normalization { algebraic, physical };

std::string to_string(Normalization n);

/// Big and small radial components of a bound state,
///
///   F(ρ) = √(m+E) [ψ₋ + ψ₊],   G(ρ) = √(m−E) [ψ₋ − ψ₊],
///
/// with ψ₊ = V^μ and ψ₋ = c·V^(μ−1). Both share the envelope ρ^s e^(−ρ), so
/// F and G are stored as that envelope times the polynomials `big_q`, `small_q`.
class RadialSolution {
public:
    struct Sample {
        double rho, F, G, dF, dG;
        /// Evaluation scales: envelope × Σ|terms| for each of the four values.
        double F_scale, G_scale, dF_scale, dG_scale;
    };

    const BoundState& state() const noexcept { return state_; }
    Normalization normalization() const noexcept { return normalization_; }
    const LadderFunction& psi_plus() const noexcept { return psi_plus_; }
    /// Zero function when k = 0.
    const LadderFunction& psi_minus() const noexcept { return psi_minus_; }
    double rel_coeff() const noexcept { return rel_coeff_; }
    /// Overall factor applied on top of the algebraic normalization.
    double scale() const noexcept { return scale_; }

    const Polynomial& big_q() const noexcept { return big_q_; }
    const Polynomial& small_q() const noexcept { return small_q_; }

    /// Throws DomainError for ρ ≤ 0.
    Sample evaluate(double rho) const;
    double F(double rho) const { return evaluate(rho).F; }
    double G(double rho) const { return evaluate(rho).G; }

    RadialSolution scaled(double factor) const;
    /// Same functions attached to a different state record (for residual
    /// discrimination: the functions no longer solve the new state's equations).
    RadialSolution with_state(const BoundState& other) const;
    RadialSolution with_normalization(Normalization n) const;

private:
    friend RadialSolution build_solution(const BoundState&);
    RadialSolution(BoundState state, LadderFunction plus, LadderFunction minus, double rel, double scale);
    void assemble();

    BoundState state_;
    Normalization normalization_ = Normalization::algebraic;
    LadderFunction psi_plus_;
    LadderFunction psi_minus_;
    double rel_coeff_ = 0.0;
    double scale_ = 1.0;
    Polynomial big_q_;
    Polynomial small_q_;
};

/// ψ₋ coefficient C⁻_μ/(ζm/κ − τ), fixed by the first-order relation
/// (∂ₓ + ρ − μ + 1/2)ψ₊ = (ζm/κ − τ)ψ₋. Throws UnphysicalState for k=0, ε=+1.
RadialSolution build_solution(const BoundState& state);

struct GridRow {
    double rho, F, G;
};

/// Throws DomainError if any ρ ≤ 0. Output order follows the input.
std::vector<GridRow> evaluate_on_grid(const RadialSolution& sol, std::span<const double> grid);

/// ∫₀^∞ (F² + G²) dρ by generalized Gauss–Laguerre with exponent 2s.
double radial_norm(const RadialSolution& sol, const QuadratureSpec& spec = {});

/// Rescales so that ∫₀^∞ (F² + G²) dρ = 1.
RadialSolution physical_normalize(const RadialSolution& sol, const QuadratureSpec& spec = {});

/// Zeros of F on (0, ∞): sign changes of its polynomial on a dense log grid
/// up to the Cauchy root bound, refined by bisection.
std::vector<double> big_component_nodes(const RadialSolution& sol);

/// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace dirac_ladder
