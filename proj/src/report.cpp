#include "cartdiff/report.hpp"

#include <cstdio>
#include <sstream>

namespace cartdiff {

std::string EqContract::str() const {
    if (exact) return "exact";
    char buf[64];
    std::snprintf(buf, sizeof buf, "sampled:%g,%d", tolerance, points);
    return buf;
}

static const char* status_word(LawStatus s) {
    switch (s) {
        case LawStatus::Pass: return "pass";
        case LawStatus::Fail: return "fail";
        case LawStatus::Skip: return "skip";
    }
    return "?";
}

std::string LawReport::line() const {
    std::ostringstream os;
    os << "law=" << law << " model=" << model << " seed=" << seed << " cases=" << cases
       << " status=" << status_word(status) << " eq=" << eq.str();
    if (status == LawStatus::Fail) os << " counterexample=" << counterexample;
    return os.str();
}

bool all_passed(const std::vector<LawReport>& reports) {
    for (const auto& r : reports)
        if (r.status == LawStatus::Fail) return false;
    return true;
}

std::string format_table(const std::vector<LawReport>& reports) {
    std::ostringstream os;
    std::size_t w = 4;
    for (const auto& r : reports) w = std::max(w, r.law.size());
    for (const auto& r : reports) {
        os << r.law << std::string(w - r.law.size() + 2, ' ') << status_word(r.status)
           << "  cases=" << r.cases << "  eq=" << r.eq.str();
        if (r.status == LawStatus::Fail) os << "\n    counterexample: " << r.counterexample;
        os << "\n";
    }
    return os.str();
}

} // namespace cartdiff
