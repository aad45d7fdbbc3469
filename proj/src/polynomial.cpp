#include "dirac_ladder/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace dirac_ladder {

double Polynomial::max_abs() const noexcept {
    double m = 0.0;
    for (double a : c_) m = std::max(m, std::abs(a));
    return m;
}

double Polynomial::operator()(double rho) const noexcept {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * rho + *it;
    return acc;
}

double Polynomial::magnitude(double rho) const noexcept {
    const double r = std::abs(rho);
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t n = 1; n < c_.size(); ++n) d[n - 1] = static_cast<double>(n) * c_[n];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::times_rho() const {
    if (c_.empty()) return {};
    std::vector<double> r(c_.size() + 1, 0.0);
    std::copy(c_.begin(), c_.end(), r.begin() + 1);
    return Polynomial(std::move(r));
}

Polynomial Polynomial::abs() const {
    std::vector<double> r(c_.size());
    std::transform(c_.begin(), c_.end(), r.begin(), [](double a) { return std::abs(a); });
    return Polynomial(std::move(r));
}

Polynomial& Polynomial::trim(double rel) {
    const double cutoff = rel * max_abs();
    while (!c_.empty() && std::abs(c_.back()) <= cutoff) c_.pop_back();
    return *this;
}

Polynomial& Polynomial::truncate(std::size_t n) {
    if (c_.size() > n) c_.resize(n);
    return *this;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
    for (std::size_t n = 0; n < other.c_.size(); ++n) c_[n] += other.c_[n];
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
    for (std::size_t n = 0; n < other.c_.size(); ++n) c_[n] -= other.c_[n];
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& a : c_) a *= s;
    return *this;
}

}  // namespace dirac_ladder
