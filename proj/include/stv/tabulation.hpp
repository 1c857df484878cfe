#pragma once

#include "stv/contest.hpp"
#include "stv/rational.hpp"

#include <vector>

namespace stv {

// Senate-rules STV count. One event per round: an election, an elimination, or
// a last-standing seating. Ballot values are exact rationals; a candidate's
// reported tally is the floor of the exact sum of their pile. When a surplus is
// distributed, every departing paper is re-valued to exactly that round's
// transfer value, whatever it carried before -- which is why paper values can
// rise over time.

enum class EventKind { Elect, Eliminate, SeatLastStanding };

struct TallyEntry {
    std::string candidate;
    long long tally = 0;

    bool operator==(const TallyEntry&) const = default;
};

// A ballot class whose papers left a surplus distribution worth more than
// they arrived with.
struct ValueIncrease {
    int round = 0;
    Ballot ballot;
    long long papers = 0;
    Rational oldValue;
    Rational newValue;

    bool operator==(const ValueIncrease&) const = default;
};

struct RoundEvent {
    int round = 0;
    EventKind kind = EventKind::Elect;
    std::string candidate;
    Rational transferValue;                // Elect only
    bool hasQuota = false;                 // SeatLastStanding only
    std::vector<TallyEntry> tallies;       // standing candidates at round start
    Rational exhausted;                    // value leaving the count this round
    Rational roundingLoss;                 // value dropped by tally flooring this round

    bool operator==(const RoundEvent&) const = default;
};

struct CountLog {
    std::string contest;
    long long seats = 0;
    long long totalBallots = 0;
    Quota quota;
    std::vector<RoundEvent> events;
    std::vector<std::string> seatedOrder;
    std::vector<std::string> finalStanding; // still standing when the count ended
    std::vector<ValueIncrease> anomalies;

    bool operator==(const CountLog&) const = default;
};

// Per-round pile snapshots for the verification suites. ATL value/papers cover
// papers still travelling inside the group their ATL ranking is currently in;
// once a paper crosses to another group it counts as BTL, matching the
// accounting the bounds analyzer uses. Not serialized.
struct CandidateRoundState {
    bool standing = false;
    Rational atlValue;
    Rational btlValue;
    long long atlPapers = 0;
    long long btlPapers = 0;
    Rational exactTally;
    long long reportedTally = 0;
};

struct EngineRound {
    std::vector<CandidateRoundState> candidates; // by contest candidate index
    Rational exhaustedTotal;                     // accumulated before this round
    Rational roundingLossTotal;
    Rational seatedRetainedTotal;
};

struct EngineTrace {
    std::vector<EngineRound> rounds; // rounds 1..N+1; the last has no event
};

CountLog tabulate(const Contest& contest, const std::vector<Ballot>& ballots,
                  EngineTrace* trace = nullptr);

// (tally - quota) / papers as an exact rational. Requires tally >= quota and
// papers >= 1.
Rational computeTransferValue(long long tally, Quota quota, long long papers);

// Every surplus distribution in which a ballot class left worth more than it
// arrived. The engine records these as it counts.
const std::vector<ValueIncrease>& detectValueIncreases(const CountLog& log);

// Decision rules tabulate applies, exposed for direct testing.

// Standing candidate with the smallest current tally; ties look back through
// earlier rounds' tallies (most recent difference decides), then fall to the
// lowest candidate index. tallyHistory[c] holds rounds 1..now for standing c.
int pickElimination(const std::vector<int>& standing,
                    const std::vector<std::vector<long long>>& tallyHistory);

struct PendingEntry {
    int candidate = 0;
    int attainedRound = 0;
    long long tally = 0;
};

// Earliest quota attainment first, then the larger surplus, then the lower
// candidate index.
int pickElection(const std::vector<PendingEntry>& pending);

} // namespace stv
