#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cartdiff {

/// Which notion of morphism equality backed a law check: a total decision
/// procedure, or seeded random-point sampling with a tolerance.
struct EqContract {
    bool exact = true;
    double tolerance = 0.0;
    int points = 0;

    static EqContract make_exact() { return {true, 0.0, 0}; }
    static EqContract sampled(double tol, int pts) { return {false, tol, pts}; }

    std::string str() const;
};

enum class LawStatus { Pass, Fail, Skip };

/// Outcome record of one axiom check over a batch of generated cases.
struct LawReport {
    std::string law;
    std::string model;
    std::uint64_t seed = 0;
    int cases = 0;
    LawStatus status = LawStatus::Pass;
    EqContract eq;
    /// Present iff status == Fail; compact (whitespace-free) rendering of
    /// the failing instance, re-checkable by re-running with `seed`.
    std::string counterexample;

    /// `law=<id> model=<id> seed=<u64> cases=<n> status=<s> eq=<c> [counterexample=<t>]`
    std::string line() const;
};

bool all_passed(const std::vector<LawReport>& reports);

/// Human-readable table with one row per report.
std::string format_table(const std::vector<LawReport>& reports);

} // namespace cartdiff
