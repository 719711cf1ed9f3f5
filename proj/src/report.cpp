#include "levelforge/report.hpp"

#include <json.hpp>

#include <sstream>

namespace levelforge::report {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::paper: return "PAPER";
        case Provenance::trivial: return "TRIVIAL";
        case Provenance::derived: return "DERIVED";
    }
    return "?";
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;  // plain json objects keep keys sorted
    j["subcommand"] = subcommand;
    nlohmann::json cfg;
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json rec;
        rec["name"] = c.name;
        rec["computed"] = c.computed;
        rec["expected"] = c.expected;
        rec["provenance"] = provenance_name(c.provenance);
        rec["pass"] = c.pass;
        arr.push_back(rec);
    }
    j["checks"] = arr;
    j["runtime_ms"] = runtime_ms;
    j["engine_version"] = engine_version;
    j["pass"] = pass();
    return j.dump(2);
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "== " << subcommand;
    if (!config.empty()) {
        os << " (";
        for (size_t i = 0; i < config.size(); ++i)
            os << (i ? ", " : "") << config[i].first << "=" << config[i].second;
        os << ")";
    }
    os << "\n";
    for (const auto& c : checks) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": computed " << c.computed
           << ", expected " << c.expected << " [" << provenance_name(c.provenance) << "]\n";
    }
    os << (pass() ? "PASS" : "FAIL") << " (" << checks.size() << " checks, " << runtime_ms
       << " ms)\n";
    return os.str();
}

}  // namespace levelforge::report
