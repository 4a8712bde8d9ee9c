#pragma once

#include "projalg/varmap.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace projalg {

constexpr uint64_t kDefaultPrime = 10000019;

struct Scenario {
    std::string name = "all"; // code1 | code2 | lemma | chain | all
    uint64_t prime = kDefaultPrime;
    uint64_t seed = 0;
    ImageStrategy strategy = ImageStrategy::Interpolation;
    std::string out;             // empty: stdout
    std::string format = "json"; // json | text
    int jobs = 1;
    bool timings = false; // real timings_ms values (breaks byte-determinism)
    std::string fixtures_dir;    // empty: compiled-in default
};

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass;
};

struct Report {
    std::string scenario;
    uint64_t prime = 0;
    uint64_t seed = 0;
    std::string strategy;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> timings_ms;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

Report run_scenario(const Scenario& s);

std::string emit_report_json(const Report& r);
std::string emit_report_text(const Report& r);
// Serializes per Scenario::format, writes to Scenario::out or stdout, and
// returns the process exit status (0 iff every check passed).
int emit_report(const Report& r, const Scenario& s);

std::string default_fixtures_dir();

} // namespace projalg
