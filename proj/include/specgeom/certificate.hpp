#pragma once

#include <string>

#include "specgeom/common.hpp"

namespace specgeom {

// Machine-checkable witness for one inequality instance. Inequalities are
// normalized to "lhs <= rhs", so nonnegative slack means the inequality
// holds as stated; tolerance_used absorbs declared numerical error (zero for
// exact geometric quantities).
struct InequalityCertificate {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    std::string inputs_digest;
    double tolerance_used = 0.0;

    bool pass() const { return slack >= -tolerance_used; }
};

inline InequalityCertificate make_certificate(std::string id, double lhs, double rhs,
                                              std::string digest, double tolerance = 1e-9) {
    InequalityCertificate c;
    c.id = std::move(id);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.inputs_digest = std::move(digest);
    c.tolerance_used = tolerance;
    return c;
}

}  // namespace specgeom
