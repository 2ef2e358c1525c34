#pragma once

#include <string>
#include <vector>

namespace slicereg {

// One verified identity instance: which check ran, on what operands, the
// measured residual against its tolerance, and the wall time spent.
struct CheckRecord {
    std::string check_id;   // instance id, unique within a report
    std::string anchor;     // catalog family the check belongs to
    std::string operands;   // short human-readable operand summary
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
};

struct SemigroupReport {
    std::vector<CheckRecord> checks;

    bool all_pass() const {
        for (const CheckRecord& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }

    double worst_residual() const {
        double worst = 0.0;
        for (const CheckRecord& c : checks) {
            if (c.residual > worst) worst = c.residual;
        }
        return worst;
    }

    const CheckRecord* find(const std::string& check_id) const {
        for (const CheckRecord& c : checks) {
            if (c.check_id == check_id) return &c;
        }
        return nullptr;
    }
};

}  // namespace slicereg
