#include "dirac_ladder/ladder.hpp"

#include "dirac_ladder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dirac_ladder {

double LadderFunction::envelope(double rho) const {
    if (!(rho > 0.0)) throw DomainError("ladder functions are defined for rho > 0");
    return std::exp((lambda_ - 0.5) * std::log(rho) + growth() * rho);
}

double LadderFunction::dx(double rho) const {
    const double a = lambda_ - 0.5;
    return envelope(rho) * (rho * q_.derivative()(rho) + (a + growth() * rho) * q_(rho));
}

// μ(μ+1) − λ(λ−1) = (μ−λ+1)(μ+λ) and μ(μ−1) − λ(λ−1) = (μ−λ)(μ+λ−1); the
// factored forms vanish exactly at the ends of each series.
double raising_coefficient(double mu, double lambda) {
    return std::sqrt(std::max(0.0, (mu - lambda + 1.0) * (mu + lambda)));
}

double lowering_coefficient(double mu, double lambda) {
    return -std::sqrt(std::max(0.0, (mu - lambda) * (mu + lambda - 1.0)));
}

namespace maps {
namespace {

double pick(double v, bool magnitude) { return magnitude ? std::abs(v) : v; }

// T q = ρq' + (λ − 1/2 + gρ) q, the x-derivative of P refactored onto q.
Polynomial theta(const Polynomial& q, double lambda, double growth, bool magnitude) {
    Polynomial out = q.derivative().times_rho();
    out += q * pick(lambda - 0.5, magnitude);
    out += q.times_rho() * pick(growth, magnitude);
    return out;
}

}  // namespace

// Ω₊ = ∂ₓ − e^x + μ + 1/2 on the μ-component.
Polynomial raising(const Polynomial& q, double lambda, double mu, double growth, bool magnitude) {
    const Polynomial in = magnitude ? q.abs() : q;
    Polynomial out = in.derivative().times_rho();
    out += in * pick(lambda + mu, magnitude);
    if (growth != 1.0) out += in.times_rho() * pick(growth - 1.0, magnitude);
    return out;
}

// Ω₋ = ∂ₓ + e^x − μ + 1/2 on the μ-component.
Polynomial lowering(const Polynomial& q, double lambda, double mu, double growth, bool magnitude) {
    const Polynomial in = magnitude ? q.abs() : q;
    Polynomial out = in.derivative().times_rho();
    out += in * pick(lambda - mu, magnitude);
    if (growth != -1.0) out += in.times_rho() * pick(growth + 1.0, magnitude);
    return out;
}

// Ω² = ∂ₓ² + 2μe^x − e^(2x) − 1/4 on the μ-component.
Polynomial casimir(const Polynomial& q, double lambda, double mu, double growth, bool magnitude) {
    const Polynomial in = magnitude ? q.abs() : q;
    Polynomial out = theta(theta(in, lambda, growth, magnitude), lambda, growth, magnitude);
    out += in.times_rho() * pick(2.0 * mu, magnitude);
    out += in.times_rho().times_rho() * pick(-1.0, magnitude);
    out += in * pick(-0.25, magnitude);
    return out;
}

}  // namespace maps

LadderFunction ground_ladder_function(double lambda) {
    if (!(lambda > 0.5) || !std::isfinite(lambda))
        throw DomainError("ground state requires lambda > 1/2, got " + std::to_string(lambda));
    const double q0 = std::exp((lambda - 0.5) * std::log(2.0) - 0.5 * std::lgamma(2.0 * lambda - 1.0));
    return LadderFunction(lambda, 0, Branch::positive, Polynomial::constant(q0));
}

LadderFunction negative_branch_ground(double lambda) {
    LadderFunction g = ground_ladder_function(lambda);
    return LadderFunction(lambda, 0, Branch::negative, g.q());
}

LadderStep raise(const LadderFunction& f, const LadderLimits& limits) {
    if (f.branch() != Branch::positive) throw WrongBranch("raise is defined on the positive branch only");
    if (f.is_zero()) throw DomainError("cannot raise the zero function");
    if (f.k() + 1 > limits.max_degree)
        throw CoefficientGrowth("raising to degree " + std::to_string(f.k() + 1) + " exceeds the limit "
                                + std::to_string(limits.max_degree));
    const double c = raising_coefficient(f.mu(), f.lambda());
    Polynomial q = maps::raising(f.q(), f.lambda(), f.mu(), f.growth());
    q.truncate(static_cast<std::size_t>(f.k()) + 2);
    q *= 1.0 / c;
    return {LadderFunction(f.lambda(), f.k() + 1, Branch::positive, std::move(q)), c};
}

LadderStep lower(const LadderFunction& f) {
    if (f.branch() != Branch::positive) throw WrongBranch("lower is defined on the positive branch only");
    if (f.is_zero()) throw DomainError("cannot lower the zero function");
    if (f.k() == 0) return {LadderFunction(f.lambda(), -1, Branch::positive, Polynomial{}), 0.0};
    const double c = lowering_coefficient(f.mu(), f.lambda());
    Polynomial q = maps::lowering(f.q(), f.lambda(), f.mu(), f.growth());
    // The degree-k coefficient is (k + λ − μ)a_k, zero up to rounding in μ.
    q.truncate(static_cast<std::size_t>(f.k()));
    q *= 1.0 / c;
    return {LadderFunction(f.lambda(), f.k() - 1, Branch::positive, std::move(q)), c};
}

LadderFunction ladder_state(double lambda, int k, const LadderLimits& limits) {
    if (k < 0) throw DomainError("radial index k must be non-negative");
    LadderFunction f = ground_ladder_function(lambda);
    for (int i = 0; i < k; ++i) f = raise(f, limits).function;
    return f;
}

Eigenpair apply_omega3(const LadderFunction& f) { return {f, f.mu()}; }

namespace {

// max_n |a_n − b_n| / scale_n, ignoring coefficients with zero scale.
double relative_defect(const Polynomial& a, const Polynomial& b, const Polynomial& scale) {
    const std::size_t n = std::max({a.size(), b.size(), scale.size()});
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = scale[i];
        const double d = std::abs(a[i] - b[i]);
        if (s > 0.0) worst = std::max(worst, d / s);
        else if (d > 0.0) worst = std::max(worst, 1.0);
    }
    return worst;
}

}  // namespace

Eigenpair apply_casimir(const LadderFunction& f, double rel_tol) {
    if (f.is_zero()) throw DomainError("the zero function has no Casimir eigenvalue");
    const double lambda = f.lambda(), mu = f.mu(), g = f.growth();
    const Polynomial image = maps::casimir(f.q(), lambda, mu, g);
    const Polynomial scale = maps::casimir(f.q(), lambda, mu, g, true);

    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < f.q().size(); ++n) {
        const double s = scale[n] > 0.0 ? scale[n] : 1.0;
        num += image[n] * f.q()[n] / (s * s);
        den += f.q()[n] * f.q()[n] / (s * s);
    }
    const double ratio = num / den;

    const Polynomial expected = f.q() * ratio;
    const Polynomial bound = scale + expected.abs();
    const double defect = relative_defect(image, expected, bound);
    if (!(defect <= rel_tol))
        throw NotAnEigenfunction("Casimir image deviates from a multiple of the input by " + std::to_string(defect));
    return {f, ratio};
}

VerificationReport commutator_check(const LadderFunction& f, double rel_tol) {
    if (f.branch() != Branch::positive) throw WrongBranch("commutator_check expects a positive-branch function");
    const double lam = f.lambda(), mu = f.mu(), g = f.growth();
    const Polynomial& q = f.q();
    const std::string tag = "k=" + std::to_string(f.k());
    VerificationReport report;

    // [Ω₊, Ω₋] = 2Ω₃
    {
        const Polynomial up_down = maps::raising(maps::lowering(q, lam, mu, g), lam, mu - 1.0, g);
        const Polynomial down_up = maps::lowering(maps::raising(q, lam, mu, g), lam, mu + 1.0, g);
        const Polynomial scale = maps::raising(maps::lowering(q, lam, mu, g, true), lam, mu - 1.0, g, true)
                               + maps::lowering(maps::raising(q, lam, mu, g, true), lam, mu + 1.0, g, true)
                               + q.abs() * std::abs(2.0 * mu);
        report.expect_at_most("[O+,O-]=2O3 " + tag, relative_defect(up_down - down_up, q * (2.0 * mu), scale),
                              rel_tol);
    }
    // [Ω₃, Ω₊] = +Ω₊
    {
        const Polynomial r = maps::raising(q, lam, mu, g);
        const Polynomial lhs = r * (mu + 1.0) - maps::raising(q * mu, lam, mu, g);
        const Polynomial scale = maps::raising(q, lam, mu, g, true) * (std::abs(mu + 1.0) + std::abs(mu) + 1.0);
        report.expect_at_most("[O3,O+]=+O+ " + tag, relative_defect(lhs, r, scale), rel_tol);
    }
    // [Ω₃, Ω₋] = −Ω₋
    {
        const Polynomial l = maps::lowering(q, lam, mu, g);
        const Polynomial lhs = l * (mu - 1.0) - maps::lowering(q * mu, lam, mu, g);
        const Polynomial scale = maps::lowering(q, lam, mu, g, true) * (std::abs(mu - 1.0) + std::abs(mu) + 1.0);
        report.expect_at_most("[O3,O-]=-O- " + tag, relative_defect(lhs, l * -1.0, scale), rel_tol);
    }
    return report;
}

double positive_operator_check(const LadderFunction& f) {
    const double mu = f.mu(), lam = f.lambda();
    return 2.0 * mu * mu - lam * (lam - 1.0);
}

OperatorMatrix matrix_representation(Generator which, double lambda, int K) {
    if (K < 1) throw DomainError("matrix truncation K must be at least 1");
    if (!(lambda > 0.5)) throw DomainError("matrix representation requires lambda > 1/2");
    const int block = K + 1;
    const int n = 2 * block;

    OperatorMatrix m{which, std::vector<double>(static_cast<std::size_t>(n)), Eigen::MatrixXcd::Zero(n, n)};
    for (int i = 0; i < block; ++i) {
        m.basis_mus[static_cast<std::size_t>(i)] = -lambda - (K - i);
        m.basis_mus[static_cast<std::size_t>(block + i)] = lambda + i;
    }

    using namespace std::complex_literals;
    if (which == Generator::omega3) {
        for (int i = 0; i < n; ++i) m.entries(i, i) = m.basis_mus[static_cast<std::size_t>(i)];
        return m;
    }
    // Neighbours (i, i+1) inside a block carry μ and μ + 1.
    for (int start : {0, block}) {
        for (int i = start; i + 1 < start + block; ++i) {
            const double c = raising_coefficient(m.basis_mus[static_cast<std::size_t>(i)], lambda);
            if (which == Generator::omega1) {
                m.entries(i, i + 1) = -0.5 * c;
                m.entries(i + 1, i) = 0.5 * c;
            } else {
                m.entries(i, i + 1) = -0.5i * c;
                m.entries(i + 1, i) = -0.5i * c;
            }
        }
    }
    return m;
}

double interior_commutator_defect(const OperatorMatrix& m1, const OperatorMatrix& m2, const OperatorMatrix& m3) {
    using namespace std::complex_literals;
    const Eigen::MatrixXcd defect = m1.entries * m2.entries - m2.entries * m1.entries - 1.0i * m3.entries;
    double worst = 0.0;
    for (Eigen::Index r = 1; r + 1 < defect.rows(); ++r) worst = std::max(worst, defect.row(r).cwiseAbs().maxCoeff());
    return worst;
}

}  // namespace dirac_ladder
