#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirac_ladder {

struct ReportEntry {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Ordered pass/fail results with measured values and thresholds.
class VerificationReport {
public:
    /// Records `measured <= tolerance` under `name`.
    void expect_at_most(std::string name, double measured, double tolerance);
    /// Records `measured > threshold` under `name`; the threshold is stored as tolerance.
    void expect_above(std::string name, double measured, double threshold);
    void record(ReportEntry entry) { entries_.push_back(std::move(entry)); }
    void merge(const VerificationReport& other);

    const std::vector<ReportEntry>& entries() const noexcept { return entries_; }
    bool passed() const noexcept;
    /// Largest measured value over all entries.
    double max_measured() const noexcept;
    std::size_t failures() const noexcept;

    void print(std::ostream& os) const;

private:
    std::vector<ReportEntry> entries_;
};

}  // namespace dirac_ladder
