#pragma once

// Deterministic random contests and the cross-checks the property suites
// share: engine bookkeeping invariants and bound containment.

#include "stv/bounds.hpp"
#include "stv/contest.hpp"
#include "stv/tabulation.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

class Rng {
public:
    explicit Rng(unsigned long long seed) : gen_(seed) {}

    long long below(long long n) {
        return n <= 1 ? 0 : static_cast<long long>(gen_() % static_cast<unsigned long long>(n));
    }
    long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }
    bool chance(int percent) { return range(1, 100) <= percent; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<size_t>(below(static_cast<long long>(i)))]);
        }
    }

private:
    std::mt19937_64 gen_;
};

stv::Contest randomContest(Rng& rng, int minCandidates = 3, int maxCandidates = 8,
                           int maxGroups = 3, int maxSeats = 3);

std::vector<stv::Ballot> randomBallots(Rng& rng, const stv::Contest& contest,
                                       long long maxPapers = 200);

// Ballots whose first preferences hit at most maxPiles (candidate, kind)
// piles, keeping oracle enumeration spaces small.
std::vector<stv::Ballot> randomConcentratedBallots(Rng& rng, const stv::Contest& contest,
                                                   int maxPiles, long long maxPapers);

// Conservation, transfer-value range, tally flooring, and seat-count checks
// over a traced count. Returns a description of the first breach.
std::optional<std::string> checkEngineInvariants(const stv::Contest& contest,
                                                 const stv::CountLog& log,
                                                 const stv::EngineTrace& trace);

// Replays the count's elections/eliminations through the bounds analyzer and
// checks that every engine quantity sits inside its interval.
std::optional<std::string> checkContainment(const stv::Contest& contest,
                                            const stv::CountLog& log,
                                            const stv::EngineTrace& trace,
                                            const stv::FirstPrefSummary& summary,
                                            const stv::GuaranteeReport& report);

} // namespace testsupport
