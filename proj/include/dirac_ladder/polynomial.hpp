#pragma once

#include <span>
#include <vector>

namespace dirac_ladder {

/// Dense real polynomial in ρ, coefficients in ascending order.
/// An empty coefficient list is the zero polynomial.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    static Polynomial constant(double v) { return Polynomial({v}); }

    std::span<const double> coeffs() const noexcept { return c_; }
    std::size_t size() const noexcept { return c_.size(); }
    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree of the stored representation; -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    double operator[](std::size_t n) const noexcept { return n < c_.size() ? c_[n] : 0.0; }
    double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }
    double max_abs() const noexcept;

    double operator()(double rho) const noexcept;
    /// Σ |a_n| ρ^n, the conditioning scale of evaluation at ρ ≥ 0.
    double magnitude(double rho) const noexcept;

    Polynomial derivative() const;
    /// ρ·p(ρ)
    Polynomial times_rho() const;
    /// Coefficient-wise absolute value.
    Polynomial abs() const;

    /// Drop trailing coefficients with |a_n| ≤ rel·max|a|.
    Polynomial& trim(double rel = 1e-14);
    /// Keep only the first `n` coefficients.
    Polynomial& truncate(std::size_t n);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(double s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

private:
    std::vector<double> c_;
};

}  // namespace dirac_ladder
