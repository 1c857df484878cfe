#include "stv/tabulation.hpp"

#include "stv/errors.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace stv {

namespace {

enum class Status { Standing, Elected, Eliminated, Seated };

struct BallotClass {
    Ballot ballot;              // as supplied, for anomaly reports
    std::vector<int> expansion; // candidate indices
};

struct PaperStack {
    int classIdx = 0;
    int pos = 0;          // index into the class expansion: the holder
    long long papers = 0;
    Rational value;
    bool atlTracked = false; // still inside the group it is currently crossing
};

struct CountState {
    const Contest& contest;
    long long quota = 0;
    long long totalPapers = 0;

    std::vector<BallotClass> classes;
    std::vector<Status> status;
    std::vector<std::vector<PaperStack>> piles;
    std::vector<Rational> exact;
    std::vector<long long> reported;
    std::vector<std::vector<long long>> history; // standing rounds only
    std::vector<PendingEntry> pending;

    Rational exhaustedTotal;
    Rational roundingLossTotal;
    Rational seatedRetainedTotal;

    explicit CountState(const Contest& c) : contest(c) {}

    bool standing(int c) const { return status[static_cast<size_t>(c)] == Status::Standing; }
};

long long pilePapers(const std::vector<PaperStack>& pile) {
    long long n = 0;
    for (const PaperStack& s : pile) n += s.papers;
    return n;
}

// Moves every stack in `source`'s pile to its next eligible preference.
// Eligibility is frozen at the start of the distribution: standing and below
// quota. `revalueTo` non-null means a surplus distribution (Senate rule: each
// departing paper takes exactly that value).
void distributePile(CountState& st, int source, const Rational* revalueTo, int round,
                    Rational& exhaustedThisRound, std::vector<ValueIncrease>& anomalies) {
    std::vector<bool> eligible(st.status.size(), false);
    for (size_t c = 0; c < st.status.size(); ++c) {
        eligible[c] = st.status[c] == Status::Standing && st.reported[c] < st.quota;
    }

    std::set<int> touched;
    int sourceGroup = st.contest.groupOf(source);
    for (PaperStack& stack : st.piles[static_cast<size_t>(source)]) {
        Rational value = revalueTo ? *revalueTo : stack.value;
        if (revalueTo && *revalueTo > stack.value) {
            anomalies.push_back({round, st.classes[static_cast<size_t>(stack.classIdx)].ballot,
                                 stack.papers, stack.value, *revalueTo});
        }
        const std::vector<int>& expansion =
            st.classes[static_cast<size_t>(stack.classIdx)].expansion;
        int next = -1;
        int nextPos = -1;
        for (size_t p = static_cast<size_t>(stack.pos) + 1; p < expansion.size(); ++p) {
            if (eligible[static_cast<size_t>(expansion[p])]) {
                next = expansion[p];
                nextPos = static_cast<int>(p);
                break;
            }
        }
        if (next < 0) {
            exhaustedThisRound += value * toRational(stack.papers);
            continue;
        }
        PaperStack moved = stack;
        moved.pos = nextPos;
        moved.value = value;
        moved.atlTracked = stack.atlTracked && st.contest.groupOf(next) == sourceGroup;
        st.exact[static_cast<size_t>(next)] += value * toRational(moved.papers);
        st.piles[static_cast<size_t>(next)].push_back(std::move(moved));
        touched.insert(next);
    }
    st.piles[static_cast<size_t>(source)].clear();
    for (int c : touched) {
        st.reported[static_cast<size_t>(c)] = floorToLongLong(st.exact[static_cast<size_t>(c)]);
    }
}

void captureRound(const CountState& st, EngineTrace* trace) {
    if (!trace) return;
    EngineRound round;
    round.exhaustedTotal = st.exhaustedTotal;
    round.roundingLossTotal = st.roundingLossTotal;
    round.seatedRetainedTotal = st.seatedRetainedTotal;
    round.candidates.resize(st.status.size());
    for (size_t c = 0; c < st.status.size(); ++c) {
        CandidateRoundState& s = round.candidates[c];
        s.standing = st.status[c] == Status::Standing;
        s.exactTally = st.exact[c];
        s.reportedTally = st.reported[c];
        for (const PaperStack& stack : st.piles[c]) {
            if (stack.atlTracked) {
                s.atlValue += stack.value * toRational(stack.papers);
                s.atlPapers += stack.papers;
            } else {
                s.btlValue += stack.value * toRational(stack.papers);
                s.btlPapers += stack.papers;
            }
        }
    }
    trace->rounds.push_back(std::move(round));
}

} // namespace

Rational computeTransferValue(long long tally, Quota quota, long long papers) {
    if (papers < 1) {
        throw SemanticError("no_papers: transfer value needs a nonempty pile");
    }
    if (tally < quota.votes) {
        throw SemanticError("below_quota: tally " + std::to_string(tally) + " < quota " +
                            std::to_string(quota.votes));
    }
    return makeRational(tally - quota.votes, papers);
}

int pickElimination(const std::vector<int>& standing,
                    const std::vector<std::vector<long long>>& tallyHistory) {
    assert(!standing.empty());
    int best = standing.front();
    for (size_t i = 1; i < standing.size(); ++i) {
        int c = standing[i];
        const auto& hc = tallyHistory[static_cast<size_t>(c)];
        const auto& hb = tallyHistory[static_cast<size_t>(best)];
        assert(hc.size() == hb.size());
        int cmp = 0;
        for (size_t r = hc.size(); r-- > 0;) {
            if (hc[r] != hb[r]) {
                cmp = hc[r] < hb[r] ? -1 : 1;
                break;
            }
        }
        if (cmp < 0 || (cmp == 0 && c < best)) best = c;
    }
    return best;
}

int pickElection(const std::vector<PendingEntry>& pending) {
    assert(!pending.empty());
    const PendingEntry* best = &pending.front();
    for (const PendingEntry& e : pending) {
        if (e.attainedRound != best->attainedRound) {
            if (e.attainedRound < best->attainedRound) best = &e;
        } else if (e.tally != best->tally) {
            if (e.tally > best->tally) best = &e;
        } else if (e.candidate < best->candidate) {
            best = &e;
        }
    }
    return best->candidate;
}

CountLog tabulate(const Contest& contest, const std::vector<Ballot>& ballots,
                  EngineTrace* trace) {
    const int ncand = contest.candidateCount();
    if (contest.seats < 1 || contest.seats >= ncand) {
        throw SemanticError("seats_out_of_range: " + std::to_string(contest.seats) +
                            " seats for " + std::to_string(ncand) + " candidates");
    }

    CountState st(contest);
    st.status.assign(static_cast<size_t>(ncand), Status::Standing);
    st.piles.resize(static_cast<size_t>(ncand));
    st.exact.assign(static_cast<size_t>(ncand), Rational(0));
    st.reported.assign(static_cast<size_t>(ncand), 0);
    st.history.resize(static_cast<size_t>(ncand));

    for (const Ballot& b : ballots) {
        auto violations = validateBallot(b, contest);
        if (!violations.empty()) {
            throw SemanticError("invalid_ballot: " + violations.front().code +
                                (violations.front().detail.empty() ? "" : " " + violations.front().detail));
        }
        BallotClass cls;
        cls.ballot = b;
        std::vector<std::string> ids =
            b.kind == BallotKind::Atl ? expandAtl(b, contest) : b.prefs;
        cls.expansion.reserve(ids.size());
        for (const std::string& id : ids) cls.expansion.push_back(contest.candidateIndex(id));
        st.classes.push_back(std::move(cls));
        st.totalPapers += b.multiplicity;
    }

    st.quota = droopQuota(st.totalPapers, contest.seats).votes;

    // First preferences: every paper starts with its top candidate at value 1.
    for (size_t i = 0; i < st.classes.size(); ++i) {
        const BallotClass& cls = st.classes[i];
        PaperStack stack;
        stack.classIdx = static_cast<int>(i);
        stack.pos = 0;
        stack.papers = cls.ballot.multiplicity;
        stack.value = Rational(1);
        stack.atlTracked = cls.ballot.kind == BallotKind::Atl;
        int first = cls.expansion.front();
        st.exact[static_cast<size_t>(first)] += toRational(stack.papers);
        st.piles[static_cast<size_t>(first)].push_back(std::move(stack));
    }
    for (int c = 0; c < ncand; ++c) {
        st.reported[static_cast<size_t>(c)] = floorToLongLong(st.exact[static_cast<size_t>(c)]);
    }

    CountLog log;
    log.contest = contest.name;
    log.seats = contest.seats;
    log.totalBallots = st.totalPapers;
    log.quota = Quota{st.quota};

    long long seatsRemaining = contest.seats;
    int standingCount = ncand;
    int round = 0;

    while (true) {
        ++round;
        std::vector<TallyEntry> tallies;
        for (int c = 0; c < ncand; ++c) {
            if (!st.standing(c)) continue;
            st.history[static_cast<size_t>(c)].push_back(st.reported[static_cast<size_t>(c)]);
            tallies.push_back({contest.candidates[static_cast<size_t>(c)],
                               st.reported[static_cast<size_t>(c)]});
        }
        captureRound(st, trace);
        if (seatsRemaining == 0) break;

        for (int c = 0; c < ncand; ++c) {
            if (!st.standing(c) || st.reported[static_cast<size_t>(c)] < st.quota) continue;
            bool queued = std::any_of(st.pending.begin(), st.pending.end(),
                                      [c](const PendingEntry& e) { return e.candidate == c; });
            if (!queued) {
                st.pending.push_back({c, round, st.reported[static_cast<size_t>(c)]});
            }
        }

        RoundEvent event;
        event.round = round;
        event.tallies = std::move(tallies);

        if (standingCount == seatsRemaining) {
            // Everyone left gets a seat; no quota needed and no distribution.
            int seat;
            if (!st.pending.empty()) {
                seat = pickElection(st.pending);
            } else {
                seat = -1;
                for (int c = 0; c < ncand; ++c) {
                    if (!st.standing(c)) continue;
                    if (seat < 0 || st.reported[static_cast<size_t>(c)] > st.reported[static_cast<size_t>(seat)]) {
                        seat = c;
                    }
                }
            }
            event.kind = EventKind::SeatLastStanding;
            event.candidate = contest.candidates[static_cast<size_t>(seat)];
            event.hasQuota = st.reported[static_cast<size_t>(seat)] >= st.quota;
            st.status[static_cast<size_t>(seat)] = Status::Seated;
            st.seatedRetainedTotal += st.exact[static_cast<size_t>(seat)];
            st.exact[static_cast<size_t>(seat)] = 0;
            std::erase_if(st.pending, [seat](const PendingEntry& e) { return e.candidate == seat; });
            log.seatedOrder.push_back(event.candidate);
            --seatsRemaining;
            --standingCount;
        } else if (!st.pending.empty()) {
            int e = pickElection(st.pending);
            std::erase_if(st.pending, [e](const PendingEntry& p) { return p.candidate == e; });
            long long papers = pilePapers(st.piles[static_cast<size_t>(e)]);
            Rational tau = computeTransferValue(st.reported[static_cast<size_t>(e)],
                                                Quota{st.quota}, papers);
            event.kind = EventKind::Elect;
            event.candidate = contest.candidates[static_cast<size_t>(e)];
            event.transferValue = tau;
            st.status[static_cast<size_t>(e)] = Status::Elected;
            // The quota's worth stays with the seat; the fractional part the
            // floored tally dropped is lost to rounding.
            event.roundingLoss = st.exact[static_cast<size_t>(e)] -
                                 toRational(st.reported[static_cast<size_t>(e)]);
            st.roundingLossTotal += event.roundingLoss;
            st.seatedRetainedTotal += toRational(st.quota);
            st.exact[static_cast<size_t>(e)] = 0;
            distributePile(st, e, &tau, round, event.exhausted, log.anomalies);
            st.exhaustedTotal += event.exhausted;
            log.seatedOrder.push_back(event.candidate);
            --seatsRemaining;
            --standingCount;
        } else {
            std::vector<int> standing;
            for (int c = 0; c < ncand; ++c) {
                if (st.standing(c)) standing.push_back(c);
            }
            int e = pickElimination(standing, st.history);
            event.kind = EventKind::Eliminate;
            event.candidate = contest.candidates[static_cast<size_t>(e)];
            st.status[static_cast<size_t>(e)] = Status::Eliminated;
            st.exact[static_cast<size_t>(e)] = 0;
            distributePile(st, e, nullptr, round, event.exhausted, log.anomalies);
            st.exhaustedTotal += event.exhausted;
            --standingCount;
        }

        log.events.push_back(std::move(event));
    }

    for (int c = 0; c < ncand; ++c) {
        if (st.standing(c)) log.finalStanding.push_back(contest.candidates[static_cast<size_t>(c)]);
    }
    return log;
}

const std::vector<ValueIncrease>& detectValueIncreases(const CountLog& log) {
    return log.anomalies;
}

} // namespace stv
