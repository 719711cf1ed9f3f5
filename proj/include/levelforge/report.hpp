/**
 * @file report.hpp
 * @brief Structured verification reports with deterministic JSON and text
 *        rendering, one record per check, provenance-tagged expectations.
 */
#ifndef LEVELFORGE_REPORT_HPP
#define LEVELFORGE_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace levelforge::report {

enum class Provenance { paper, trivial, derived };

std::string provenance_name(Provenance p);

struct CheckRecord {
    std::string name;
    std::string computed;
    std::string expected;
    Provenance provenance = Provenance::derived;
    bool pass = false;
};

struct VerificationReport {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> config;  // echoed inputs
    std::vector<CheckRecord> checks;
    double runtime_ms = 0;
    std::string engine_version = "levelforge 0.1.0";

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add(const std::string& name, const std::string& computed, const std::string& expected,
             Provenance prov) {
        checks.push_back({name, computed, expected, prov, computed == expected});
    }
    void add_bool(const std::string& name, bool value, Provenance prov,
                  bool expected_value = true) {
        checks.push_back({name, value ? "true" : "false", expected_value ? "true" : "false", prov,
                          value == expected_value});
    }
    void add_count(const std::string& name, int64_t computed, int64_t expected, Provenance prov) {
        add(name, std::to_string(computed), std::to_string(expected), prov);
    }

    /// Canonical JSON (sorted keys); runtime_ms is the only field that can
    /// differ between identical runs.
    std::string to_json() const;
    std::string to_text() const;
};

}  // namespace levelforge::report

#endif
