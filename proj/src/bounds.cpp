#include "stv/bounds.hpp"

#include "stv/errors.hpp"

#include <algorithm>
#include <set>

namespace stv {

long long FirstPrefSummary::totalAtl() const {
    long long n = 0;
    for (const FirstPrefEntry& e : entries) n += e.atlPapers;
    return n;
}

long long FirstPrefSummary::totalBtl() const {
    long long n = 0;
    for (const FirstPrefEntry& e : entries) n += e.btlPapers;
    return n;
}

std::vector<std::string> GuaranteeReport::guaranteedCandidates() const {
    std::vector<std::string> out;
    for (const BoundsRound& r : trace) {
        if (r.event.kind == StepKind::Elect && r.guaranteed) out.push_back(r.event.candidate);
    }
    return out;
}

namespace {

void clampState(BoundsState& st) {
    const Rational atlCap = toRational(st.totalAtlPapers);
    const Rational allCap = toRational(st.totalBallots);
    for (auto& [c, b] : st.remaining) {
        b.atlValue.hi = std::min(b.atlValue.hi, atlCap);
        b.btlValue.hi = std::min(b.btlValue.hi, allCap);
        b.atlPapers.hi = std::min(b.atlPapers.hi, st.totalAtlPapers);
        b.btlPapers.hi = std::min(b.btlPapers.hi, st.totalBallots);
        if (b.atlValue.lo > b.atlValue.hi || b.btlValue.lo > b.btlValue.hi ||
            b.atlPapers.lo > b.atlPapers.hi || b.btlPapers.lo > b.btlPapers.hi) {
            throw SemanticError("inverted_interval: candidate index " + std::to_string(c));
        }
    }
}

int requireRemaining(const BoundsState& state, const std::string& id, const Contest& contest) {
    int c = contest.candidateIndex(id);
    if (c < 0) {
        throw SemanticError("unknown_candidate: " + id);
    }
    if (state.remaining.find(c) == state.remaining.end()) {
        throw SemanticError("candidate_already_removed: " + id);
    }
    return c;
}

void snapshot(const BoundsState& state, const Contest& contest, BoundsRound* record) {
    if (!record) return;
    record->candidates.clear();
    for (const auto& [c, b] : state.remaining) {
        record->candidates.emplace(contest.candidates[static_cast<size_t>(c)], b);
    }
}

// Remaining members of `elected`'s group after them, in column order.
std::vector<int> membersAfter(const BoundsState& state, const Contest& contest, int candidate) {
    std::vector<int> out;
    const Group& grp = contest.group(contest.groupOf(candidate));
    for (size_t p = static_cast<size_t>(contest.positionInGroup(candidate)) + 1;
         p < grp.members.size(); ++p) {
        int m = contest.candidateIndex(grp.members[p]);
        if (state.remaining.find(m) != state.remaining.end()) out.push_back(m);
    }
    return out;
}

} // namespace

BoundsState initBounds(const FirstPrefSummary& summary, const Contest& contest) {
    if (summary.entries.size() != static_cast<size_t>(contest.candidateCount())) {
        throw SemanticError("summary_mismatch: expected " +
                            std::to_string(contest.candidateCount()) + " candidates, got " +
                            std::to_string(summary.entries.size()));
    }
    BoundsState st;
    st.totalAtlPapers = 0;
    st.totalBallots = 0;
    for (const FirstPrefEntry& e : summary.entries) {
        int c = contest.candidateIndex(e.candidate);
        if (c < 0) {
            throw SemanticError("unknown_candidate: " + e.candidate);
        }
        if (e.atlPapers < 0 || e.btlPapers < 0) {
            throw SemanticError("negative_paper_count: " + e.candidate);
        }
        if (st.remaining.count(c) != 0) {
            throw SemanticError("duplicate_summary_entry: " + e.candidate);
        }
        CandidateBounds b;
        b.atlValue = {toRational(e.atlPapers), toRational(e.atlPapers)};
        b.btlValue = {toRational(e.btlPapers), toRational(e.btlPapers)};
        b.atlPapers = {e.atlPapers, e.atlPapers};
        b.btlPapers = {e.btlPapers, e.btlPapers};
        st.remaining.emplace(c, b);
        st.totalAtlPapers += e.atlPapers;
        st.totalBallots += e.atlPapers + e.btlPapers;
    }
    st.quota = droopQuota(st.totalBallots, contest.seats).votes;
    return st;
}

BoundsState electUpdate(const BoundsState& state, const std::string& elected,
                        const Contest& contest, BoundsRound* record) {
    int e = requireRemaining(state, elected, contest);
    const CandidateBounds eb = state.remaining.at(e);
    const Rational quota = toRational(state.quota);

    Rational tallyLo = eb.tallyLower();
    Rational tallyHi = eb.tallyUpper();
    long long papersLo = eb.papersLower();
    long long papersHi = eb.papersUpper();

    Rational surplusLo = std::max(Rational(0), Rational(tallyLo - quota));
    Rational surplusHi = std::max(Rational(0), Rational(tallyHi - quota));
    Rational tauLo = papersHi == 0 ? Rational(0)
                                   : std::min(Rational(1), Rational(surplusLo / toRational(papersHi)));
    Rational tauHi;
    if (surplusHi == 0) {
        tauHi = 0;
    } else if (papersLo == 0) {
        tauHi = 1;
    } else {
        tauHi = std::min(Rational(1), Rational(surplusHi / toRational(papersLo)));
    }

    if (record) {
        snapshot(state, contest, record);
        record->event = {StepKind::Elect, elected};
        record->surplus = ValueInterval{surplusLo, surplusHi};
        record->transferValue = ValueInterval{tauLo, tauHi};
        record->tallyLowerBound = tallyLo;
        record->guaranteed = tallyLo >= quota;
    }

    // Candidates whose tally might still be short of a quota at the start of
    // this round; only they can be handed papers.
    std::set<int> eligible;
    for (const auto& [c, b] : state.remaining) {
        if (c != e && b.tallyLower() < quota) eligible.insert(c);
    }

    BoundsState next = state;
    next.remaining.erase(e);

    // The BTL papers could land on any candidate still short of a quota.
    if (eb.btlPapers.hi > 0) {
        for (int c : eligible) {
            CandidateBounds& b = next.remaining.at(c);
            b.btlValue.hi += tauHi * toRational(eb.btlPapers.hi);
            b.btlPapers.hi += eb.btlPapers.hi;
        }
    }

    // The ATL papers walk down the group column. A member certainly at quota
    // is certainly skipped; one certainly below quota certainly receives the
    // papers and stops the walk; in between, the papers may or may not stop.
    if (eb.atlPapers.hi > 0) {
        bool mayPassGroup = true;  // papers may continue beyond the column
        bool certainPath = true;   // all earlier members were certainly skipped
        for (int m : membersAfter(state, contest, e)) {
            const CandidateBounds& startBounds = state.remaining.at(m);
            if (startBounds.tallyLower() >= quota) continue; // certainly skipped
            bool certainlyBelow = startBounds.tallyUpper() < quota;
            CandidateBounds& b = next.remaining.at(m);
            b.atlValue.hi += tauHi * toRational(eb.atlPapers.hi);
            b.atlPapers.hi += eb.atlPapers.hi;
            if (certainPath && certainlyBelow) {
                b.atlValue.lo += floorRational(tauLo * toRational(eb.atlPapers.lo));
                b.atlPapers.lo += eb.atlPapers.lo;
            }
            if (certainlyBelow) {
                mayPassGroup = false;
                break;
            }
            certainPath = false;
        }
        if (mayPassGroup) {
            // Later preferences are unknown: treat the papers as BTL for every
            // candidate still short of a quota.
            for (int c : eligible) {
                CandidateBounds& b = next.remaining.at(c);
                b.btlValue.hi += tauHi * toRational(eb.atlPapers.hi);
                b.btlPapers.hi += eb.atlPapers.hi;
            }
        }
    }

    clampState(next);
    return next;
}

BoundsState eliminateUpdate(const BoundsState& state, const std::string& eliminated,
                            const Contest& contest, const BoundsOptions& options,
                            BoundsRound* record) {
    int e = requireRemaining(state, eliminated, contest);
    const CandidateBounds eb = state.remaining.at(e);

    if (record) {
        snapshot(state, contest, record);
        record->event = {StepKind::Eliminate, eliminated};
        record->surplus.reset();
        record->transferValue.reset();
        record->tallyLowerBound = eb.tallyLower();
        record->guaranteed = false;
    }

    BoundsState next = state;
    next.remaining.erase(e);

    // Papers leave at their current value, so the whole BTL value bound is in
    // play for every remaining candidate.
    long long btlPaperGain =
        options.literalEliminationPapers ? eb.atlPapers.hi : eb.btlPapers.hi;
    for (auto& [c, b] : next.remaining) {
        b.btlValue.hi += eb.btlValue.hi;
        b.btlPapers.hi += btlPaperGain;
    }

    // ATL papers go to the next member still in the count, or leave the
    // column with unknown later preferences.
    std::vector<int> after = membersAfter(state, contest, e);
    if (!after.empty()) {
        CandidateBounds& b = next.remaining.at(after.front());
        b.atlValue.hi += eb.atlValue.hi;
        b.atlPapers.hi += eb.atlPapers.hi;
        b.atlValue.lo += eb.atlValue.lo;
        b.atlPapers.lo += eb.atlPapers.lo;
    } else {
        for (auto& [c, b] : next.remaining) {
            b.btlValue.hi += eb.atlValue.hi;
            b.btlPapers.hi += eb.atlPapers.hi;
        }
    }

    clampState(next);
    return next;
}

GuaranteeReport analyze(const FirstPrefSummary& summary, const EventSequence& events,
                        const Contest& contest, const BoundsOptions& options) {
    std::set<std::string> seen;
    for (const EventStep& step : events) {
        if (!seen.insert(step.candidate).second) {
            throw SemanticError("candidate_repeated_in_events: " + step.candidate);
        }
    }

    BoundsState state = initBounds(summary, contest);

    GuaranteeReport report;
    report.quota = state.quota;
    report.totalBallots = state.totalBallots;
    report.seats = contest.seats;
    report.options = options;

    bool prefixOpen = true;
    int round = 0;
    for (const EventStep& step : events) {
        ++round;
        BoundsRound record;
        record.round = round;
        if (step.kind == StepKind::Elect) {
            state = electUpdate(state, step.candidate, contest, &record);
            if (prefixOpen && record.guaranteed) {
                ++report.guaranteedPrefixLength;
            } else {
                prefixOpen = false;
            }
        } else {
            state = eliminateUpdate(state, step.candidate, contest, options, &record);
            prefixOpen = false;
        }
        report.trace.push_back(std::move(record));
    }
    return report;
}

} // namespace stv
