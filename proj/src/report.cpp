#include "dirac_ladder/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace dirac_ladder {

void VerificationReport::expect_at_most(std::string name, double measured, double tolerance) {
    // NaN fails.
    entries_.push_back({std::move(name), measured, tolerance, measured <= tolerance});
}

void VerificationReport::expect_above(std::string name, double measured, double threshold) {
    entries_.push_back({std::move(name), measured, threshold, measured > threshold});
}

void VerificationReport::merge(const VerificationReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool VerificationReport::passed() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return e.passed; });
}

double VerificationReport::max_measured() const noexcept {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.measured);
    return m;
}

std::size_t VerificationReport::failures() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return !e.passed; }));
}

void VerificationReport::print(std::ostream& os) const {
    for (const auto& e : entries_)
        os << fmt::format("[{}] {}: measured={:.3e} tolerance={:.3e}\n", e.passed ? "PASS" : "FAIL", e.name,
                          e.measured, e.tolerance);
}

}  // namespace dirac_ladder
