#pragma once

#include "tvhp/hermite_core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tvhp {

/// Result of one identity verification over its parameter grid.
struct VerificationReport {
    std::string id;
    std::map<std::string, std::string> params;
    bool exact = false;      // symbolic check; residual is reported as "exact"
    double residual = 0.0;   // max residual over the grid when not exact
    double tolerance = 0.0;  // 0 for exact checks
    bool pass = false;
    std::string notes;
    double wall_time_s = 0.0;
};

/// Knobs shared by `verify` and `verify-all`. Named scalars override the
/// identity's default grid point-by-point.
struct VerifyOptions {
    std::optional<double> tol;
    long max_degree = 6;
    long cutoff = 40;
    int quad_order = 24;
    std::map<std::string, double> scalars;

    std::optional<double> get(const std::string& name) const {
        auto it = scalars.find(name);
        return it == scalars.end() ? std::nullopt : std::optional<double>{it->second};
    }
};

/// Registry keys in report order.
const std::vector<std::string>& identity_registry();

bool is_registered_identity(const std::string& id);

/// Runs one identity. Throws std::domain_error for out-of-domain parameters
/// and std::invalid_argument for unknown ids.
VerificationReport run_identity(const std::string& id, const VerifyOptions& opt);

/// Runs the whole registry in order; per-identity failures are captured in
/// the reports, never thrown.
std::vector<VerificationReport> run_all(const VerifyOptions& opt);

std::string report_to_json_string(const VerificationReport& r);
std::string reports_to_json_string(const std::vector<VerificationReport>& rs);

}  // namespace tvhp
