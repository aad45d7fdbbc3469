#pragma once

#include "dirac_ladder/ladder.hpp"

#include <functional>
#include <vector>

namespace dirac_ladder {

enum class QuadratureScheme { gauss_laguerre, trapezoid_x };

/// Rule for ∫₀^∞ ρ^exponent e^(−2ρ) h(ρ) dρ. Nodes are doubled from `nodes`
/// until successive estimates agree to `tolerance` (relative, floored at 1).
struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::gauss_laguerre;
    int nodes = 32;
    double exponent = 0.0;
    double tolerance = 1e-12;
    int max_nodes = 512;

    /// Throws DomainError when nodes < 8, tolerance ≤ 0 or exponent ≤ −1.
    void validate() const;
};

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point rule for ∫₀^∞ t^α e^(−t) g(t) dt from the eigen-decomposition of
/// the Laguerre Jacobi matrix (diagonal 2i+α+1, off-diagonal √(i(i+α))).
GaussRule generalized_gauss_laguerre(int n, double alpha);

struct QuadratureResult {
    double value = 0.0;
    int nodes = 0;           ///< node count of the accepted estimate
    double last_change = 0.0;  ///< |I(n) − I(n/2)|
};

QuadratureResult integrate_weighted(const std::function<double(double)>& h, const QuadratureSpec& spec);

/// ⟨f, g⟩ = ∫ dξ/2π ∫ dx V_f* V_g. The ξ-integral is δ_{μ_f μ_g}; the x-integral
/// runs in ρ with measure dρ/ρ, i.e. weight ρ^(2λ−2) e^(−2ρ) on q_f q_g. The
/// exponent field of `spec` is ignored and set to 2λ − 2.
double inner_product(const LadderFunction& f, const LadderFunction& g, const QuadratureSpec& spec = {});

}  // namespace dirac_ladder
