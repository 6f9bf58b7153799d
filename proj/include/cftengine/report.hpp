#pragma once

#include <string>
#include <vector>

namespace cfe {

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
};

// Ordered list of named verdicts; failures carry the first witness found.
struct Report {
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string witness = "") {
        checks.push_back({std::move(name), pass, std::move(witness)});
    }
    void merge(const Report& other, const std::string& prefix = "") {
        for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.pass, c.witness});
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Accumulates a single verdict, keeping only the first witness.
class Verdict {
public:
    void fail(const std::string& witness) {
        if (pass_) { pass_ = false; witness_ = witness; }
    }
    bool pass() const { return pass_; }
    const std::string& witness() const { return witness_; }
    void into(Report& r, std::string name) const { r.add(std::move(name), pass_, witness_); }

private:
    bool pass_ = true;
    std::string witness_;
};

}  // namespace cfe
