#include "dirac_ladder/oracle.hpp"

#include "dirac_ladder/errors.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

namespace dirac_ladder {

double truncated_norm(const LadderFunction& f, double cutoff) {
    if (!(cutoff > 0.0)) throw DomainError("norm cutoff must be positive");
    const double a = 2.0 * f.lambda() - 2.0;
    const double g = 2.0 * f.growth();
    const Polynomial& q = f.q();
    // P²/ρ = ρ^(2λ−2) e^(±2ρ) q²
    auto integrand = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        const double v = q(rho);
        return std::exp(a * std::log(rho) + g * rho) * v * v;
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(integrand, 0.0, cutoff);
}

VerificationReport divergence_check(const LadderFunction& f, std::span<const double> cutoffs) {
    if (f.branch() != Branch::negative) throw WrongBranch("divergence_check expects a negative-branch function");
    if (!std::is_sorted(cutoffs.begin(), cutoffs.end())) throw DomainError("cutoffs must be sorted");

    std::vector<double> norms;
    norms.reserve(cutoffs.size());
    for (double r : cutoffs) norms.push_back(truncated_norm(f, r));

    VerificationReport report;
    for (std::size_t i = 0; i + 1 < cutoffs.size(); ++i) {
        const double r1 = cutoffs[i], r2 = cutoffs[i + 1];
        report.expect_above(fmt::format("N({:g}) > N({:g})", r2, r1), norms[i + 1] - norms[i], 0.0);
        if (r1 >= kDivergenceAsymptoticCutoff) {
            report.expect_above(fmt::format("log N({:g})/N({:g}) > {:g}", r2, r1, r2 - r1),
                                std::log(norms[i + 1] / norms[i]), r2 - r1);
        }
    }
    return report;
}

}  // namespace dirac_ladder
