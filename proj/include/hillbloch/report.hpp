#pragma once

// Uniform result record for every numerical cross-check in the library:
// one scalar residual against one tolerance, plus free-form metrics and
// sampled traces for diagnostics.  passed is always residual <= tolerance;
// nothing else may set it.

#include <map>
#include <string>
#include <vector>

namespace hillbloch {

struct VerificationReport {
    std::string name;    // stable check identifier, e.g. "bloch-eigenfunction"
    std::string detail;  // human-readable parameter summary
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::map<std::string, double> metrics;
    std::map<std::string, std::vector<double>> traces;

    static VerificationReport make(std::string name, std::string detail, double residual,
                                   double tolerance) {
        VerificationReport r;
        r.name = std::move(name);
        r.detail = std::move(detail);
        r.residual = residual;
        r.tolerance = tolerance;
        r.passed = residual <= tolerance;
        return r;
    }
};

}  // namespace hillbloch
