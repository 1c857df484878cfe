#pragma once

#include "stv/contest.hpp"
#include "stv/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stv {

// Interval propagation over a reported event sequence, starting from exact
// first-preference ATL/BTL counts. Per remaining candidate we carry lower and
// upper bounds on the value and the paper count of their ATL pile (papers
// still moving inside a known group column) and their BTL pile (everything
// whose next destination is unknowable without seeing later preferences).
//
// ATL pile movements inside a group are predictable, so they can raise lower
// bounds. BTL lower bounds are never raised: such papers may always exhaust.
// Once a group column is used up, its ATL papers are accounted under the BTL
// bounds of every candidate that might receive them.

struct ValueInterval {
    Rational lo;
    Rational hi;

    bool operator==(const ValueInterval&) const = default;
};

struct CountInterval {
    long long lo = 0;
    long long hi = 0;

    bool operator==(const CountInterval&) const = default;
};

struct CandidateBounds {
    ValueInterval atlValue;
    ValueInterval btlValue;
    CountInterval atlPapers;
    CountInterval btlPapers;

    Rational tallyLower() const { return atlValue.lo + btlValue.lo; }
    Rational tallyUpper() const { return atlValue.hi + btlValue.hi; }
    long long papersLower() const { return atlPapers.lo + btlPapers.lo; }
    long long papersUpper() const { return atlPapers.hi + btlPapers.hi; }

    bool operator==(const CandidateBounds&) const = default;
};

struct FirstPrefEntry {
    std::string candidate;
    long long atlPapers = 0;
    long long btlPapers = 0;

    bool operator==(const FirstPrefEntry&) const = default;
};

// Hand-countable inputs: how many ATL and BTL papers sit in each candidate's
// first-preference pile.
struct FirstPrefSummary {
    std::vector<FirstPrefEntry> entries; // contest candidate order

    long long totalAtl() const;
    long long totalBtl() const;
    long long totalBallots() const { return totalAtl() + totalBtl(); }

    bool operator==(const FirstPrefSummary&) const = default;
};

enum class StepKind { Elect, Eliminate };

struct EventStep {
    StepKind kind = StepKind::Elect;
    std::string candidate;

    bool operator==(const EventStep&) const = default;
};

using EventSequence = std::vector<EventStep>;

struct BoundsOptions {
    // Alternative accounting in the elimination update: BTL paper uppers grow
    // by the eliminated candidate's ATL paper upper instead of their BTL one.
    bool literalEliminationPapers = false;
};

struct BoundsState {
    long long quota = 0;
    long long totalBallots = 0;
    long long totalAtlPapers = 0;
    std::map<int, CandidateBounds> remaining; // by contest candidate index
};

struct BoundsRound {
    int round = 0;
    EventStep event;
    std::map<std::string, CandidateBounds> candidates; // bounds at round start
    std::optional<ValueInterval> surplus;              // elections only
    std::optional<ValueInterval> transferValue;        // elections only
    bool guaranteed = false;       // election whose tally lower bound met the quota
    Rational tallyLowerBound;      // of the event's candidate, at round start
};

struct GuaranteeReport {
    long long quota = 0;
    long long totalBallots = 0;
    long long seats = 0;
    BoundsOptions options;
    std::vector<BoundsRound> trace; // one entry per event
    int guaranteedPrefixLength = 0; // leading guaranteed elections

    // Every candidate whose election round was guaranteed, prefix or not.
    std::vector<std::string> guaranteedCandidates() const;
};

// Round-1 state: every interval degenerate at the hand-counted value.
BoundsState initBounds(const FirstPrefSummary& summary, const Contest& contest);

// Applies one election/elimination to the state. `record`, when supplied, is
// filled with the start-of-round snapshot plus the derived surplus/transfer
// intervals. Throws SemanticError for candidates not in the state.
BoundsState electUpdate(const BoundsState& state, const std::string& elected,
                        const Contest& contest, BoundsRound* record = nullptr);
BoundsState eliminateUpdate(const BoundsState& state, const std::string& eliminated,
                            const Contest& contest, const BoundsOptions& options = {},
                            BoundsRound* record = nullptr);

// Replays the whole event sequence and flags guaranteed seatings: an election
// is guaranteed when the candidate's tally lower bound has reached the quota.
// The guaranteed prefix stops at the first elimination or unguaranteed
// election; later flags are still reported.
GuaranteeReport analyze(const FirstPrefSummary& summary, const EventSequence& events,
                        const Contest& contest, const BoundsOptions& options = {});

} // namespace stv
