#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace potcap::verify {

struct Row {
    std::string example;
    std::string label;
    std::string expected;
    std::string observed;
    bool pass = false;
};

struct SuiteReport {
    std::vector<Row> rows;
    bool all_pass() const;
};

// Regression tables over the built-in models. Known ids: newtonian, ex-power,
// ex-log, ex-log-2, parabolicity-grid; an empty filter runs all of them, an unknown
// id throws std::invalid_argument. The seed only feeds the random annuli of the
// newtonian table, so a fixed seed gives byte-identical reports.
//
// inject_beta swaps the log exponent of the ex-log table's beta=1 model while
// keeping the expected column; it exists so the harness can prove it actually fails
// on wrong data.
SuiteReport run_examples(const std::string& only, std::uint64_t seed,
                         double inject_beta = 0.0);

}  // namespace potcap::verify
