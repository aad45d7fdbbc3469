#pragma once

#include "dirac_ladder/report.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dirac_ladder {

/// Channel grid shared by the self-checks: ζ ∈ {0.1, 0.5, 0.9}, j ∈ {1/2, 3/2}.
struct SuiteGrid {
    std::vector<double> zetas{0.1, 0.5, 0.9};
    std::vector<int> twice_js{1, 3};
    int algebra_k_max = 20;
    int function_k_max = 10;
    int matrix_K = 5;
};

/// Names accepted by run_suite, in their default order.
const std::vector<std::string>& suite_names();

/// Runs one of: algebra, casimir, quadrature, ode, matrices.
/// Throws DomainError for an unknown name.
VerificationReport run_suite(std::string_view name, const SuiteGrid& grid = {});

}  // namespace dirac_ladder
