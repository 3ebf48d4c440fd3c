#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace crlab {

// One verification outcome. `anchor` states the mathematical claim being
// checked, or "plumbing" for pure infrastructure checks. `margin` is the
// slack of the check in its own units (distance from the tolerance, a
// minimum over samples, and so on).
struct CheckRecord {
    std::string id;
    std::string anchor;
    bool pass = false;
    bool skipped = false;
    double margin = 0;
    nlohmann::json witness;  // optional payload: points, values, residuals
};

struct VerificationReport {
    std::string suite;
    nlohmann::json config;  // seed, tolerances, grid sizes; echoed verbatim
    std::vector<CheckRecord> checks;
    double wall_time_ms = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass && !c.skipped) return false;
        return true;
    }

    void add(CheckRecord c) { checks.push_back(std::move(c)); }

    // Identical config and seed give byte-identical JSON except for the
    // wall-time field.
    nlohmann::json to_json(bool include_wall_time = true) const {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json row = {{"id", c.id},
                                  {"anchor", c.anchor.empty() ? "plumbing" : c.anchor},
                                  {"status", c.skipped ? "skip" : (c.pass ? "pass" : "fail")},
                                  {"margin", c.margin}};
            if (!c.witness.is_null()) row["witness"] = c.witness;
            rows.push_back(std::move(row));
        }
        nlohmann::json out = {{"schema", "crlab/1"},
                              {"suite", suite},
                              {"config", config},
                              {"checks", std::move(rows)},
                              {"all_pass", all_pass()}};
        if (include_wall_time) out["wall_time_ms"] = wall_time_ms;
        return out;
    }
};

inline VerificationReport merge_reports(const std::string& suite,
                                        const std::vector<VerificationReport>& parts) {
    VerificationReport out;
    out.suite = suite;
    for (const auto& part : parts) {
        if (out.config.is_null()) out.config = part.config;
        for (const auto& c : part.checks) out.checks.push_back(c);
        out.wall_time_ms += part.wall_time_ms;
    }
    return out;
}

}  // namespace crlab
