// Acceptance suite: the contract this project must meet, one line per
// criterion. Each check pins its tolerances in code; runtime budgets are
// enforced where the contract states one.

#include "stv/bounds.hpp"
#include "stv/contest.hpp"
#include "stv/data_io.hpp"
#include "stv/oracle.hpp"
#include "stv/pattern.hpp"
#include "stv/tabulation.hpp"
#include "support/generators.hpp"
#include "support/samples.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

using namespace stv;
using namespace testsupport;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
public:
    Check() = default;

    void require(bool cond, const std::string& what) {
        if (!cond && outcome_.pass) {
            outcome_.pass = false;
            outcome_.detail = what;
        }
    }

    void note(const std::string& detail) {
        if (outcome_.pass && outcome_.detail.empty()) outcome_.detail = detail;
    }

    Outcome result() const { return outcome_; }

private:
    Outcome outcome_;
};

long long tallyOf(const RoundEvent& ev, const std::string& id) {
    for (const TallyEntry& t : ev.tallies) {
        if (t.candidate == id) return t.tally;
    }
    return -1;
}

double seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Fixed two-seat profile replays with exact tallies and transfer value.
Outcome twoSeatReplay() {
    Check check;
    auto start = std::chrono::steady_clock::now();
    CountLog log = tabulate(twoSeatContest(), twoSeatBallots());
    check.require(log.quota.votes == 19, "quota must be 19");
    check.require(log.events.size() == 4, "count must take four rounds");
    if (log.events.size() == 4) {
        check.require(log.events[0].kind == EventKind::Eliminate &&
                          log.events[0].candidate == "c1" && tallyOf(log.events[0], "c1") == 10 &&
                          tallyOf(log.events[0], "c2") == 15 && tallyOf(log.events[0], "c3") == 15 &&
                          tallyOf(log.events[0], "c4") == 15,
                      "round 1 must eliminate c1 on tallies 10/15/15/15");
        check.require(log.events[1].kind == EventKind::Elect && log.events[1].candidate == "c3" &&
                          tallyOf(log.events[1], "c3") == 25 &&
                          log.events[1].transferValue == makeRational(6, 25),
                      "round 2 must elect c3 at 25 with transfer value 6/25");
        check.require(log.events[2].kind == EventKind::Eliminate &&
                          log.events[2].candidate == "c4" && tallyOf(log.events[2], "c2") == 17 &&
                          tallyOf(log.events[2], "c4") == 15,
                      "round 3 must eliminate c4 on 17 vs 15");
        check.require(log.events[3].candidate == "c2" && tallyOf(log.events[3], "c2") == 32,
                      "round 4 must seat c2 with 32");
    }
    check.require(log.seatedOrder == std::vector<std::string>{"c3", "c2"},
                  "seating order must be c3, c2");
    double t = seconds(start);
    check.require(t < 1.0, "replay must finish within 1 s");
    check.note("exact tallies, quota 19");
    return check.result();
}

// 2. Fixed five-seat group-ticket profile replays with exact transfer values.
Outcome fiveSeatReplay() {
    Check check;
    auto start = std::chrono::steady_clock::now();
    CountLog log = tabulate(fiveSeatContest(), fiveSeatBallots());
    check.require(log.quota.votes == 100, "quota must be 100");
    check.require(log.seatedOrder == std::vector<std::string>{"a1", "b", "a2", "a3", "c"},
                  "seating order must be a1, b, a2, a3, c");
    if (log.events.size() == 5) {
        const Rational taus[4] = {makeRational(310, 410), makeRational(1, 101),
                                  makeRational(210, 410), makeRational(111, 511)};
        const char* shown[4] = {"0.756", "0.0099", "0.512", "0.217"};
        for (int i = 0; i < 4; ++i) {
            check.require(log.events[static_cast<size_t>(i)].transferValue == taus[i],
                          "transfer value " + std::to_string(i + 1) + " must be exact");
            check.require(
                formatSignificant(log.events[static_cast<size_t>(i)].transferValue) == shown[i],
                std::string("transfer value must display as ") + shown[i]);
        }
        check.require(tallyOf(log.events[4], "a4") == 89, "a4 must end at 89");
        check.require(tallyOf(log.events[4], "c") == 108, "c must reach a quota at 108");
    } else {
        check.require(false, "count must take five rounds");
    }
    double t = seconds(start);
    check.require(t < 1.0, "replay must finish within 1 s");
    check.note("exact transfer values and final tallies");
    return check.result();
}

// 3. The surplus re-valuation anomaly is detected, and only it.
Outcome anomalyDetection() {
    Check check;
    CountLog log = tabulate(fiveSeatContest(), fiveSeatBallots());
    const auto& found = detectValueIncreases(log);
    check.require(found.size() == 1, "exactly one ballot class must be flagged");
    if (found.size() == 1) {
        check.require(found[0].ballot.prefs == std::vector<std::string>{"b", "a3", "c"} &&
                          found[0].papers == 101,
                      "the 101 [b a3 c] papers must be the flagged class");
        check.require(found[0].round == 4, "the increase happens at round 4");
        check.require(found[0].oldValue == makeRational(1, 101) &&
                          found[0].newValue == makeRational(111, 511),
                      "the class must rise from 1/101 to 111/511");
    }
    check.note("one class, 1/101 -> 111/511 at round 4");
    return check.result();
}

// 4. Bound propagation certifies the four-seat prefix and the oracle confirms
//    it over the whole completion space.
Outcome guaranteePrefix() {
    Check check;
    Contest contest = fiveSeatContest();
    FirstPrefSummary summary = summarize(fiveSeatBallots(), contest);
    EventSequence events = {{StepKind::Elect, "a1"},
                            {StepKind::Elect, "b"},
                            {StepKind::Elect, "a2"},
                            {StepKind::Elect, "a3"},
                            {StepKind::Elect, "c"}};
    GuaranteeReport report = analyze(summary, events, contest);
    check.require(report.guaranteedPrefixLength == 4, "guaranteed prefix must be 4");
    check.require(report.trace.size() == 5 && !report.trace[4].guaranteed,
                  "c must not be guaranteed");
    check.require(report.guaranteedCandidates() ==
                      std::vector<std::string>{"a1", "b", "a2", "a3"},
                  "guaranteed set must be a1, b, a2, a3");

    CompletionSpace space;
    space.contest = contest;
    space.summary = summary;
    space.limits.maxCompletions = 600000; // the default budget refuses this space
    Verdict verdict = verifyGuarantees(space, report);
    check.require(verdict.confirmed, "exhaustive enumeration must confirm the guarantees");
    check.require(verdict.completions == 531380,
                  "the space holds 5 * 326 * 326 = 531380 completions");
    check.note("prefix 4 confirmed over 531380 completions");
    return check.result();
}

struct SuiteStats {
    long long contests = 0;
    long long rounds = 0;
    long long conservationChecks = 0;
    long long transferChecks = 0;
    bool conservationOk = true;
    std::string conservationIssue;
};

SuiteStats g_stats;

// 5. Containment: engine quantities sit inside analyzer intervals on 1000
//    random contests.
Outcome containmentSuite() {
    Check check;
    auto start = std::chrono::steady_clock::now();
    Rng rng(987654321);
    int done = 0;
    long long attempts = 0;
    while (done < 1000 && attempts < 5000) {
        ++attempts;
        Contest contest = randomContest(rng, 3, 8, 3, 3);
        std::vector<Ballot> ballots = randomBallots(rng, contest, 200);
        if (ballots.empty()) continue;
        ++done;

        EngineTrace trace;
        CountLog log = tabulate(contest, ballots, &trace);
        auto engineIssue = checkEngineInvariants(contest, log, trace);
        if (engineIssue) {
            g_stats.conservationOk = false;
            g_stats.conservationIssue = *engineIssue;
            check.require(false, *engineIssue);
            break;
        }
        g_stats.contests += 1;
        g_stats.rounds += static_cast<long long>(trace.rounds.size());
        g_stats.conservationChecks += static_cast<long long>(trace.rounds.size());
        for (const RoundEvent& ev : log.events) {
            if (ev.kind == EventKind::Elect) ++g_stats.transferChecks;
        }

        FirstPrefSummary summary = summarize(ballots, contest);
        GuaranteeReport report = analyze(summary, eventsFromLog(log), contest);
        auto issue = checkContainment(contest, log, trace, summary, report);
        if (issue) {
            check.require(false, *issue);
            break;
        }
    }
    check.require(done == 1000, "suite must reach 1000 contests");
    double t = seconds(start);
    check.require(t < 60.0, "containment suite must finish within 60 s");
    std::ostringstream os;
    os << done << " contests, " << g_stats.rounds << " rounds, " << t << " s";
    check.note(os.str());
    return check.result();
}

// 6. Guarantee soundness: flagged candidates win in every enumerated
//    completion on 100 tiny contests.
Outcome guaranteeSoundnessSuite() {
    Check check;
    auto start = std::chrono::steady_clock::now();
    Rng rng(1357924680);
    int done = 0;
    long long attempts = 0;
    long long completions = 0;
    long long flagged = 0;
    while (done < 100 && attempts < 3000) {
        ++attempts;
        Contest contest = randomContest(rng, 3, 5, 2, 3);
        std::vector<Ballot> ballots = randomConcentratedBallots(rng, contest, 3, 60);
        if (ballots.empty()) continue;

        CompletionSpace space;
        space.contest = contest;
        space.summary = summarize(ballots, contest);
        if (countCompletions(space) > toBigInt(space.limits.maxCompletions)) continue;

        EngineTrace trace;
        CountLog log = tabulate(contest, ballots, &trace);
        auto engineIssue = checkEngineInvariants(contest, log, trace);
        if (engineIssue) {
            g_stats.conservationOk = false;
            g_stats.conservationIssue = *engineIssue;
            check.require(false, *engineIssue);
            break;
        }
        g_stats.conservationChecks += static_cast<long long>(trace.rounds.size());

        GuaranteeReport report = analyze(space.summary, eventsFromLog(log), contest);
        flagged += static_cast<long long>(report.guaranteedCandidates().size());
        Verdict verdict = verifyGuarantees(space, report);
        if (!verdict.confirmed) {
            check.require(false, contest.name + ": " + verdict.violatedCandidate +
                                     " misses a seat in completion " +
                                     std::to_string(verdict.completions));
            break;
        }
        completions += verdict.completions;
        ++done;
    }
    check.require(done == 100, "suite must reach 100 contests");
    check.require(flagged > 0, "the generated contests must produce some guarantees");
    double t = seconds(start);
    check.require(t < 300.0, "soundness suite must finish within 5 min");
    std::ostringstream os;
    os << done << " contests, " << completions << " completions, " << flagged
       << " guarantees, " << t << " s";
    check.note(os.str());
    return check.result();
}

// 7. Conservation and transfer-value range held on every traced run above.
Outcome conservationSuite() {
    Check check;
    check.require(g_stats.conservationOk, g_stats.conservationIssue);
    check.require(g_stats.conservationChecks > 0, "no conservation checks ran");
    check.require(g_stats.transferChecks > 0, "no transfer values were checked");
    std::ostringstream os;
    os << g_stats.conservationChecks << " round balances, " << g_stats.transferChecks
       << " transfer values in [0,1)";
    check.note(os.str());
    return check.result();
}

// 8. Write/parse identity for every document type over random instances.
Outcome roundTripSuite() {
    Check check;
    Rng rng(24680);
    int instances = 0;
    for (int i = 0; i < 400 && instances < 200; ++i) {
        Contest contest = randomContest(rng);
        if (parseContest(writeContest(contest)) != contest) {
            check.require(false, "contest document diverged: " + contest.name);
            break;
        }
        std::vector<Ballot> ballots = randomBallots(rng, contest);
        if (parseBallots(writeBallots(ballots), contest).ballots != ballots) {
            check.require(false, "ballot document diverged: " + contest.name);
            break;
        }
        FirstPrefSummary summary = summarize(ballots, contest);
        if (parseSummary(writeSummary(summary), contest) != summary) {
            check.require(false, "summary document diverged: " + contest.name);
            break;
        }
        if (ballots.empty()) continue;
        CountLog log = tabulate(contest, ballots);
        if (readRoundLog(writeRoundLog(log)) != log) {
            check.require(false, "round log diverged: " + contest.name);
            break;
        }
        EventSequence events = eventsFromLog(log);
        if (parseEvents(writeEvents(events), contest) != events) {
            check.require(false, "event document diverged: " + contest.name);
            break;
        }
        ++instances;
    }
    check.require(instances == 200, "suite must reach 200 instances");
    check.note("200 instances, all five document types identical");
    return check.result();
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1. two-seat replay (exact tallies, quota 19, tau 6/25)", twoSeatReplay},
        {"2. five-seat replay (order a1 b a2 a3 c, exact transfer values)", fiveSeatReplay},
        {"3. value-increase detection (one class, 1/101 -> 111/511)", anomalyDetection},
        {"4. guarantee prefix 4 + exhaustive confirmation", guaranteePrefix},
        {"5. containment over 1000 random contests", containmentSuite},
        {"6. guarantee soundness over 100 tiny contests", guaranteeSoundnessSuite},
        {"7. conservation and transfer range on every traced run", conservationSuite},
        {"8. document round-trips over generated instances", roundTripSuite},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        if (!outcome.pass) ++failures;
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!outcome.detail.empty()) std::cout << " -- " << outcome.detail;
        std::cout << "\n";
    }
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
