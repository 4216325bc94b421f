#pragma once

#include <string>
#include <vector>

namespace kappa {

struct Residual {
    std::string name;
    bool ok = true;
    size_t terms = 0;
    std::string detail;
};

struct Report {
    std::string title;
    std::vector<Residual> checks;
    std::vector<std::string> notes;

    bool ok() const {
        for (auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    size_t failures() const {
        size_t n = 0;
        for (auto& c : checks) n += !c.ok;
        return n;
    }
    void add(std::string name, bool ok, size_t terms = 0, std::string detail = {}) {
        checks.push_back({std::move(name), ok, terms, std::move(detail)});
    }
    void note(std::string s) { notes.push_back(std::move(s)); }
    void merge(const Report& o, const std::string& prefix = {}) {
        for (auto c : o.checks) {
            if (!prefix.empty()) c.name = prefix + ": " + c.name;
            checks.push_back(std::move(c));
        }
        notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    }
    // First failing check, or nullptr.
    const Residual* first_failure() const {
        for (auto& c : checks)
            if (!c.ok) return &c;
        return nullptr;
    }
};

}  // namespace kappa
