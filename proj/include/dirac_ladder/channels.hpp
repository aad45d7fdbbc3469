#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace dirac_ladder {

/// CODATA 2018 fine-structure constant.
inline constexpr double kFineStructure = 0.0072973525693;

/// Coupling ζ = Z·α for a point nucleus of charge Z.
double zeta_from_charge(int Z, double alpha = kFineStructure);

/// A half-odd-integer stored as twice its value, so j = 1/2 is `{1}`.
struct HalfInteger {
    int twice = 1;

    constexpr double value() const noexcept { return 0.5 * twice; }

    /// Throws InvalidQuantumNumber unless 2x is a positive odd integer.
    static HalfInteger from_double(double x);

    friend constexpr auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};

enum class Sign : int { minus = -1, plus = +1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
Sign sign_from_int(int e);
std::string to_string(Sign s);

/// Fixed quantum numbers (j, ε, ζ) of a radial Dirac–Coulomb channel and the
/// representation labels derived from them.
///
///   τ = ε(j + 1/2),  s = √(τ² − ζ²),  λ = s + 1/2,  ω = j(j+1) − ζ² = λ(λ−1).
class Channel {
public:
    HalfInteger j() const noexcept { return j_; }
    Sign epsilon() const noexcept { return epsilon_; }
    double zeta() const noexcept { return zeta_; }
    double tau() const noexcept { return tau_; }
    double s() const noexcept { return s_; }
    double lambda() const noexcept { return lambda_; }
    double omega() const noexcept { return omega_; }

    std::string describe() const;

private:
    friend Channel make_channel(HalfInteger, Sign, double);
    Channel() = default;

    HalfInteger j_{};
    Sign epsilon_ = Sign::minus;
    double zeta_ = 0.0;
    double tau_ = 0.0;
    double s_ = 0.0;
    double lambda_ = 0.0;
    double omega_ = 0.0;
};

/// Throws InvalidQuantumNumber for ζ ≤ 0 and Supercritical for ζ ≥ j + 1/2.
Channel make_channel(HalfInteger j, Sign epsilon, double zeta);

struct BoundState {
    Channel channel;
    int k = 0;
    double mu = 0.0;
    double energy = 0.0;
    double wavenumber = 0.0;  ///< κ = √(m² − E²)
    double nu = 0.0;          ///< √((m − E)/(m + E))
    double mass = 1.0;
};

/// E = m [1 + ζ²/(μ − 1/2)²]^(−1/2) with μ = λ + k.
/// Throws UnphysicalState for k = 0, ε = +1 and DomainError for k < 0 or m ≤ 0.
BoundState bound_energy(const Channel& channel, int k, double mass = 1.0);

/// μ = ζE/√(m² − E²) + 1/2. Throws DomainError unless 0 < E < m.
double mu_from_energy(double energy, double zeta, double mass = 1.0);

/// Whether the first-order radial system admits (ε, k).
constexpr bool is_physical(Sign epsilon, int k) noexcept {
    return k > 0 || (k == 0 && epsilon == Sign::minus);
}

/// Closed-form ladder energy in an arbitrary floating type, for evaluation at
/// higher precision. `twice_j` is 2j; the result is E/m times `mass`.
template <class Real>
Real closed_form_energy(int twice_j, const Real& zeta, int k, const Real& mass) {
    using std::sqrt;
    const Real half_tau = Real(twice_j + 1) / 2;
    const Real s = sqrt(half_tau * half_tau - zeta * zeta);
    const Real shifted = s + Real(k);  // μ − 1/2
    return mass / sqrt(Real(1) + zeta * zeta / (shifted * shifted));
}

struct SpectrumTable {
    std::vector<BoundState> states;
    std::vector<std::string> warnings;  ///< one entry per skipped supercritical channel
};

/// All physical states with j ≤ j_max and k ≤ k_max, sorted by energy.
/// Degenerate levels keep the order (j, k, ε).
SpectrumTable spectrum_table(double zeta, HalfInteger j_max, int k_max, double mass = 1.0);

}  // namespace dirac_ladder
