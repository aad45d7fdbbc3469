#pragma once

#include "dirac_ladder/polynomial.hpp"
#include "dirac_ladder/report.hpp"

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dirac_ladder {

/// Positive branch decays as e^(−ρ); the negative branch grows as e^(+ρ) and
/// exists only to exhibit its non-normalizability.
enum class Branch { positive, negative };

/// Simultaneous eigenfunction of Ω₃ and Ω² in the ρ = e^x picture:
///
///   P(ρ) = ρ^(λ−1/2) · e^(∓ρ) · q(ρ),    V(x, ξ) = e^(iμξ) P(e^x).
///
/// The phase e^(iμξ) is never sampled; it is carried by the label μ, which is
/// λ + k on the positive branch and −λ − k on the negative one. An empty q is
/// the zero function (result of lowering the lowest state).
class LadderFunction {
public:
    LadderFunction(double lambda, int k, Branch branch, Polynomial q)
        : lambda_(lambda), k_(k), branch_(branch), q_(std::move(q)) {}

    double lambda() const noexcept { return lambda_; }
    int k() const noexcept { return k_; }
    double mu() const noexcept { return branch_ == Branch::positive ? lambda_ + k_ : -lambda_ - k_; }
    Branch branch() const noexcept { return branch_; }
    const Polynomial& q() const noexcept { return q_; }
    bool is_zero() const noexcept { return q_.is_zero(); }

    /// −1 on the positive branch, +1 on the negative branch.
    double growth() const noexcept { return branch_ == Branch::positive ? -1.0 : 1.0; }

    /// ρ^(λ−1/2) e^(∓ρ), computed in log space.
    double envelope(double rho) const;
    double operator()(double rho) const { return envelope(rho) * q_(rho); }
    /// dP/dx = ρ dP/dρ.
    double dx(double rho) const;

private:
    double lambda_;
    int k_;
    Branch branch_;
    Polynomial q_;
};

struct LadderStep {
    LadderFunction function;
    double coefficient;
};

struct LadderLimits {
    /// Raising beyond this degree throws CoefficientGrowth.
    int max_degree = 60;
};

/// C⁺_μ = +√(μ(μ+1) − λ(λ−1)).
double raising_coefficient(double mu, double lambda);
/// C⁻_μ = −√(μ(μ−1) − λ(λ−1)).
double lowering_coefficient(double mu, double lambda);

/// Raw operator actions on q for a function with labels (λ, μ) and envelope
/// sign `growth`. Passing `magnitude = true` applies |·| to every term, which
/// yields the scale against which cancellation in the result is judged.
namespace maps {
Polynomial raising(const Polynomial& q, double lambda, double mu, double growth, bool magnitude = false);
Polynomial lowering(const Polynomial& q, double lambda, double mu, double growth, bool magnitude = false);
Polynomial casimir(const Polynomial& q, double lambda, double mu, double growth, bool magnitude = false);
}  // namespace maps

/// Lowest state of the positive series, q = 2^(λ−1/2)/√Γ(2λ−1), unit norm
/// under ∫ dx. Throws DomainError for λ ≤ 1/2.
LadderFunction ground_ladder_function(double lambda);

/// Ω₊ followed by division by C⁺_μ, so the result is the unit-norm V^(μ+1).
LadderStep raise(const LadderFunction& f, const LadderLimits& limits = {});
/// Ω₋ divided by C⁻_μ. On the lowest state returns the zero function and 0.
LadderStep lower(const LadderFunction& f);
/// k successive normalized raisings of the ground state.
LadderFunction ladder_state(double lambda, int k, const LadderLimits& limits = {});

struct Eigenpair {
    LadderFunction function;
    double eigenvalue;
};

/// Ω₃ is diagonal: returns (f, μ).
Eigenpair apply_omega3(const LadderFunction& f);

/// Applies (ρ d/dρ)² + 2μρ − ρ² − 1/4 to P and returns the eigenvalue.
/// Throws NotAnEigenfunction if any coefficient of Ω²q − ω q exceeds
/// `rel_tol` times its magnitude scale.
Eigenpair apply_casimir(const LadderFunction& f, double rel_tol = 1e-10);

/// [Ω₊, Ω₋] = 2Ω₃ and [Ω₃, Ω±] = ±Ω± checked coefficient by coefficient on q.
VerificationReport commutator_check(const LadderFunction& f, double rel_tol = 1e-10);

/// 2μ² − ω, the expectation of the positive operator Ω†·Ω.
double positive_operator_check(const LadderFunction& f);

/// μ = −λ solution ρ^(λ−1/2) e^(+ρ), annihilated by Ω₊.
LadderFunction negative_branch_ground(double lambda);

enum class Generator { omega1, omega2, omega3 };

struct OperatorMatrix {
    Generator which;
    /// (−λ−K, …, −λ, λ, …, λ+K)
    std::vector<double> basis_mus;
    Eigen::MatrixXcd entries;
};

/// Truncated matrix of a generator over both branches with k ≤ K.
OperatorMatrix matrix_representation(Generator which, double lambda, int K);

/// Max |([M₁, M₂] − iM₃)_{row, ·}| over rows with |μ| < λ + K.
double interior_commutator_defect(const OperatorMatrix& m1, const OperatorMatrix& m2, const OperatorMatrix& m3);

}  // namespace dirac_ladder
