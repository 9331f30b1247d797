#include "vorcal/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace vorcal {

bool Report::all_passed() const {
    for (auto& e : entries)
        if (e.outcome != CheckEntry::Outcome::Pass) return false;
    return true;
}

bool Report::any_inconclusive() const {
    for (auto& e : entries)
        if (e.outcome == CheckEntry::Outcome::Inconclusive) return true;
    return false;
}

int Report::exit_code() const {
    bool failed = false, inconclusive = false;
    for (auto& e : entries) {
        if (e.outcome == CheckEntry::Outcome::Fail) failed = true;
        if (e.outcome == CheckEntry::Outcome::Inconclusive) inconclusive = true;
    }
    if (failed) return 1;
    if (inconclusive) return 3;
    return 0;
}

const char* outcome_name(CheckEntry::Outcome o) {
    switch (o) {
        case CheckEntry::Outcome::Pass: return "pass";
        case CheckEntry::Outcome::Fail: return "FAIL";
        case CheckEntry::Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* regime_name(Regime r) { return r == Regime::Exact ? "exact" : "numeric"; }

std::string Report::text() const {
    size_t wname = 5, wanchor = 6;
    for (auto& e : entries) {
        wname = std::max(wname, e.name.size());
        wanchor = std::max(wanchor, e.anchor.size());
    }
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(wname) + 2) << "check"
       << std::setw(static_cast<int>(wanchor) + 2) << "anchor" << std::setw(14) << "verdict"
       << std::setw(9) << "regime" << "time\n";
    for (auto& e : entries) {
        os << std::left << std::setw(static_cast<int>(wname) + 2) << e.name
           << std::setw(static_cast<int>(wanchor) + 2) << e.anchor << std::setw(14)
           << outcome_name(e.outcome) << std::setw(9) << regime_name(e.regime) << std::fixed
           << std::setprecision(1) << e.millis << "ms\n";
        for (auto& w : e.witnesses) os << "    witness: " << w << "\n";
    }
    return os.str();
}

std::string Report::json() const {
    nlohmann::json out = nlohmann::json::array();
    for (auto& e : entries) {
        nlohmann::json j{{"check", e.name},
                         {"anchor", e.anchor},
                         {"verdict", outcome_name(e.outcome)},
                         {"regime", regime_name(e.regime)},
                         {"millis", e.millis}};
        j["witnesses"] = e.witnesses;
        out.push_back(std::move(j));
    }
    return out.dump(2);
}

Stopwatch::Stopwatch()
    : start_ns_(std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now().time_since_epoch())
                    .count()) {}

double Stopwatch::millis() const {
    long long now = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now().time_since_epoch())
                        .count();
    return static_cast<double>(now - start_ns_) / 1e6;
}

}  // namespace vorcal
