#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace cuspfrob {

// Per-check outcome of a verification suite; the CLI exit status is 0 iff no
// check failed.
struct Check {
    enum class Status { Pass, Fail, Skip };
    std::string name;
    Status status = Status::Pass;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    nlohmann::json config = nlohmann::json::object();
    std::vector<Check> checks;
    double seconds = 0.0;

    void pass(const std::string& name, const std::string& detail = "");
    void fail(const std::string& name, const std::string& detail = "");
    void check(const std::string& name, bool ok, const std::string& detail = "");
    void skip(const std::string& name, const std::string& reason);

    bool ok() const;
    nlohmann::json to_json() const;
    void print(std::ostream& out) const;
};

}  // namespace cuspfrob
