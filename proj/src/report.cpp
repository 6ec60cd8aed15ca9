#include "cuspfrob/report.hpp"

namespace cuspfrob {

namespace {
const char* status_str(Check::Status s) {
    switch (s) {
        case Check::Status::Pass: return "pass";
        case Check::Status::Fail: return "fail";
        case Check::Status::Skip: return "skipped";
    }
    return "?";
}
}  // namespace

void VerifyReport::pass(const std::string& name, const std::string& detail) {
    checks.push_back({name, Check::Status::Pass, detail});
}

void VerifyReport::fail(const std::string& name, const std::string& detail) {
    checks.push_back({name, Check::Status::Fail, detail});
}

void VerifyReport::check(const std::string& name, bool ok, const std::string& detail) {
    checks.push_back({name, ok ? Check::Status::Pass : Check::Status::Fail, detail});
}

void VerifyReport::skip(const std::string& name, const std::string& reason) {
    checks.push_back({name, Check::Status::Skip, reason});
}

bool VerifyReport::ok() const {
    for (const auto& c : checks)
        if (c.status == Check::Status::Fail) return false;
    return true;
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json item{{"name", c.name}, {"status", status_str(c.status)}};
        if (!c.detail.empty()) item["detail"] = c.detail;
        arr.push_back(std::move(item));
    }
    return nlohmann::json{{"suite", suite},
                          {"config", config},
                          {"checks", arr},
                          {"seconds", seconds},
                          {"ok", ok()}};
}

void VerifyReport::print(std::ostream& out) const {
    out << "suite " << suite;
    if (!config.empty()) out << "  " << config.dump();
    out << "\n";
    for (const auto& c : checks) {
        out << "  [" << status_str(c.status) << "] " << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
    }
    out << (ok() ? "OK" : "FAILED") << "  (" << seconds << " s)\n";
}

}  // namespace cuspfrob
