#pragma once

#include <string>
#include <vector>

#include "vorcal/expr.hpp"

namespace vorcal {

struct CheckEntry {
    enum class Outcome { Pass, Fail, Inconclusive };

    std::string name;    // human-readable check description
    std::string anchor;  // stable machine identifier (e.g. "integrability.cond3")
    Outcome outcome = Outcome::Pass;
    Regime regime = Regime::Exact;
    std::vector<std::string> witnesses;
    double millis = 0.0;

    bool passed() const { return outcome == Outcome::Pass; }
};

struct Report {
    std::vector<CheckEntry> entries;

    void add(CheckEntry e) { entries.push_back(std::move(e)); }
    bool all_passed() const;
    bool any_inconclusive() const;
    // 0 all pass, 1 some check failed, 3 inconclusive (failures dominate)
    int exit_code() const;

    std::string text() const;
    std::string json() const;
};

const char* outcome_name(CheckEntry::Outcome o);
const char* regime_name(Regime r);

// Small timing helper for building entries.
class Stopwatch {
  public:
    Stopwatch();
    double millis() const;

  private:
    long long start_ns_;
};

}  // namespace vorcal
