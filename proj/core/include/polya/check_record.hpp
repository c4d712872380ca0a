#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace polya {

/// One verified inequality: left (<|<=) right, with the provenance of each side.
///
/// `strict` means the underlying statement asserts strict inequality; a strict
/// check passes only with left < right. Non-strict checks tolerate 1e-12
/// relative slack so that exact equality cases (e.g. balls in the volume/
/// perimeter bound) are not failed by the last floating-point ulp.
struct CheckRecord {
    std::string name;
    double left = 0.0;
    double right = 0.0;
    bool strict = false;
    std::string polygon_id;
    double p = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    double h = std::numeric_limits<double>::quiet_NaN();
    std::string left_provenance;
    std::string right_provenance;

    double ratio() const { return left / right; }

    bool passed() const {
        if (strict) return left < right;
        return left <= right + 1e-12 * std::fabs(right);
    }
};

/// CSV table of records (header + one row each); doubles at full precision.
std::string to_csv(std::span<const CheckRecord> records);

/// Multi-line "key: value" report for a single record.
std::string to_report(const CheckRecord& record);

} // namespace polya
