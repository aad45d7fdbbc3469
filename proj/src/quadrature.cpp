#include "dirac_ladder/quadrature.hpp"

#include "dirac_ladder/errors.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace dirac_ladder {

void QuadratureSpec::validate() const {
    if (nodes < 8) throw DomainError("quadrature needs at least 8 nodes");
    if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
    if (!(exponent > -1.0)) throw DomainError("weight exponent must exceed -1");
    if (max_nodes < nodes) throw DomainError("max_nodes below the starting node count");
}

namespace {

struct OrthonormalValues {
    double p_n;        ///< p_n(x), scaled by e^(−log_scale)
    double dp_n;       ///< p_n'(x), same scaling
    double sum_sq;     ///< Σ_{k<n} p_k(x)², scaled by e^(−2 log_scale)
    double log_scale;
};

// Three-term recurrence of the orthonormal Laguerre polynomials for weight
// t^α e^(−t), rescaled as it goes so that large nodes neither overflow nor
// lose their tiny Christoffel weights.
OrthonormalValues orthonormal_laguerre(int n, double alpha, double x) {
    auto a = [alpha](int k) { return 2.0 * k + alpha + 1.0; };
    auto b = [alpha](int k) { return std::sqrt(k * (k + alpha)); };
    double prev = 0.0, cur = std::exp(-0.5 * std::lgamma(alpha + 1.0));
    double dprev = 0.0, dcur = 0.0;
    double sum = 0.0, log_scale = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += cur * cur;
        const double next = ((x - a(k)) * cur - (k > 0 ? b(k) * prev : 0.0)) / b(k + 1);
        const double dnext = (cur + (x - a(k)) * dcur - (k > 0 ? b(k) * dprev : 0.0)) / b(k + 1);
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
        const double big = std::max(std::abs(cur), std::abs(dcur));
        if (big > 1e100) {
            prev *= 1e-100;
            cur *= 1e-100;
            dprev *= 1e-100;
            dcur *= 1e-100;
            sum *= 1e-200;
            log_scale += 100.0 * std::log(10.0);
        }
    }
    return {cur, dcur, sum, log_scale};
}

}  // namespace

GaussRule generalized_gauss_laguerre(int n, double alpha) {
    if (n < 1) throw DomainError("Gauss-Laguerre rule needs n >= 1");
    if (!(alpha > -1.0)) throw DomainError("Gauss-Laguerre exponent must exceed -1");
    Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + alpha + 1.0;
    for (int i = 1; i < n; ++i) off(i - 1) = std::sqrt(i * (i + alpha));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw QuadratureFailure("Jacobi matrix eigen-decomposition failed");

    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = solver.eigenvalues()(i);
        // Newton polish on p_n; eigenvalues are only accurate to ε‖J‖ absolutely.
        for (int it = 0; it < 3; ++it) {
            const auto v = orthonormal_laguerre(n, alpha, x);
            if (v.dp_n == 0.0) break;
            const double step = v.p_n / v.dp_n;
            if (!std::isfinite(step) || std::abs(step) > 1e-6 * std::max(1.0, x)) break;
            x -= step;
        }
        const auto v = orthonormal_laguerre(n, alpha, x);
        // Christoffel number 1/Σ p_k(x)².
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = std::exp(-std::log(v.sum_sq) - 2.0 * v.log_scale);
    }
    return rule;
}

namespace {

double laguerre_estimate(const std::function<double(double)>& h, double alpha, int n) {
    const GaussRule rule = generalized_gauss_laguerre(n, alpha);
    // t = 2ρ
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        if (rule.weights[i] == 0.0) continue;
        acc += rule.weights[i] * h(0.5 * rule.nodes[i]);
    }
    return std::exp(-(alpha + 1.0) * std::log(2.0)) * acc;
}

// ρ = e^x: ∫ e^((α+1)x − 2e^x) h(e^x) dx on a window where the integrand is
// below 1e-17 of its bulk.
double trapezoid_estimate(const std::function<double(double)>& h, double alpha, int n) {
    const double x_lo = -40.0 / (alpha + 1.0);
    const double x_hi = std::log(60.0 + 4.0 * std::abs(alpha));
    const double step = (x_hi - x_lo) / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = x_lo + i * step;
        const double rho = std::exp(x);
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * std::exp((alpha + 1.0) * x - 2.0 * rho) * h(rho);
    }
    return acc * step;
}

}  // namespace

QuadratureResult integrate_weighted(const std::function<double(double)>& h, const QuadratureSpec& spec) {
    spec.validate();
    auto estimate = [&](int n) {
        return spec.scheme == QuadratureScheme::gauss_laguerre ? laguerre_estimate(h, spec.exponent, n)
                                                               : trapezoid_estimate(h, spec.exponent, n);
    };
    int n = spec.nodes;
    double previous = estimate(n);
    while (2 * n <= spec.max_nodes) {
        n *= 2;
        const double current = estimate(n);
        const double change = std::abs(current - previous);
        if (change <= spec.tolerance * std::max(1.0, std::abs(current))) return {current, n, change};
        previous = current;
    }
    throw QuadratureFailure("quadrature did not converge within " + std::to_string(spec.max_nodes) + " nodes");
}

double inner_product(const LadderFunction& f, const LadderFunction& g, const QuadratureSpec& spec) {
    if (f.branch() != Branch::positive || g.branch() != Branch::positive)
        throw WrongBranch("inner product is defined on normalizable (positive-branch) functions");
    if (f.lambda() != g.lambda()) throw DomainError("inner product requires a common lambda");
    if (f.k() != g.k() || f.is_zero() || g.is_zero()) return 0.0;

    QuadratureSpec local = spec;
    local.exponent = 2.0 * f.lambda() - 2.0;
    const Polynomial& qf = f.q();
    const Polynomial& qg = g.q();
    return integrate_weighted([&](double rho) { return qf(rho) * qg(rho); }, local).value;
}

}  // namespace dirac_ladder
