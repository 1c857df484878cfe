#pragma once

#include "stv/bounds.hpp"
#include "stv/contest.hpp"
#include "stv/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace stv {

// Exhaustive ground truth for tiny contests. Each nonempty first-preference
// pile is assumed to hold a single ranking class; a completion assigns every
// pile one continuation (ATL piles continue over the remaining groups, BTL
// piles over the remaining candidates, truncation anywhere included). The
// enumeration runs every completion through the count and checks claims
// against what actually happens.

struct CompletionLimits {
    int maxCandidates = 6;
    long long maxCompletions = 100000;
};

struct CompletionSpace {
    Contest contest;
    FirstPrefSummary summary;
    CompletionLimits limits;
};

// Number of completions, computed without enumerating.
BigInt countCompletions(const CompletionSpace& space);

// Calls fn with each completion's ballot multiset in a fixed deterministic
// order; fn returning false stops early. Returns the number of completions
// visited. Throws RefusalError when the space exceeds its limits.
long long enumerateCompletions(const CompletionSpace& space,
                               const std::function<bool(const std::vector<Ballot>&)>& fn);

struct Verdict {
    bool confirmed = false;
    long long completions = 0; // enumerated (confirmed) or 1-based index of the witness
    // Counterexample fields, set when !confirmed:
    std::string violatedCandidate;
    std::vector<Ballot> counterexample;
    std::vector<std::string> seatedOrder;
};

// Checks that every claimed candidate wins a seat in every completion.
// An empty claim set is confirmed without enumerating.
Verdict verifyGuarantees(const CompletionSpace& space,
                         const std::vector<std::string>& guaranteed);
Verdict verifyGuarantees(const CompletionSpace& space, const GuaranteeReport& report);

std::string writeVerdict(const Verdict& verdict);

} // namespace stv
