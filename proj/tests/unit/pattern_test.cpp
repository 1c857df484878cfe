#include "stv/pattern.hpp"

#include "stv/data_io.hpp"
#include "stv/errors.hpp"
#include "support/generators.hpp"
#include "support/samples.hpp"

#include <doctest.h>

using namespace stv;
using namespace testsupport;

namespace {

// A log shaped purely by its event kinds; tallies do not matter here.
CountLog logFromKinds(const std::string& kinds, bool trailing, long long seats) {
    CountLog log;
    log.contest = "synthetic";
    log.seats = seats;
    int round = 0;
    for (char k : kinds) {
        RoundEvent ev;
        ev.round = ++round;
        ev.candidate = "c" + std::to_string(round);
        switch (k) {
            case 'q': ev.kind = EventKind::Elect; break;
            case 's': ev.kind = EventKind::SeatLastStanding; break;
            case 'Q': // seated last standing while holding a quota
                ev.kind = EventKind::SeatLastStanding;
                ev.hasQuota = true;
                break;
            case 'e': ev.kind = EventKind::Eliminate; break;
        }
        log.events.push_back(std::move(ev));
    }
    if (trailing) log.finalStanding.push_back("left");
    return log;
}

} // namespace

TEST_CASE("fixed counts render to the expected patterns") {
    CountLog twoSeat = tabulate(twoSeatContest(), twoSeatBallots());
    CHECK(formatPattern(renderPattern(twoSeat)) == "e q e q");

    CountLog fiveSeat = tabulate(fiveSeatContest(), fiveSeatBallots());
    PatternString p = renderPattern(fiveSeat);
    CHECK(p.trailingStanding); // a4 is still standing at the end
    CHECK(formatPattern(p) == "q q q q q ...");
}

TEST_CASE("elimination runs compress, single eliminations do not") {
    // Six seats: four openers, a long run, a seat, a short run, a final seat.
    CountLog log = logFromKinds("qqqqeeeqeeqqs", false, 6);
    PatternString p = renderPattern(log);
    CHECK(formatPattern(p) == "q q q q e ... q e ... q q s");

    GuaranteeReport report;
    report.guaranteedPrefixLength = 4;
    p = renderPattern(log, &report);
    CHECK(p.boldPrefix == 4);
    CHECK(formatPattern(p, true) == "[q q q q] e ... q e ... q q s");

    CHECK(formatPattern(renderPattern(logFromKinds("eqeq", false, 2))) == "e q e q");
    CHECK(formatPattern(renderPattern(logFromKinds("eeqeq", true, 2))) == "e ... q e q ...");

    // A last-standing seat with a quota renders q, without renders s.
    CHECK(formatPattern(renderPattern(logFromKinds("eQ", false, 1))) == "e q");
    CHECK(formatPattern(renderPattern(logFromKinds("es", false, 1))) == "e s");

    // A prefix claim that overruns the leading quota run is rejected.
    GuaranteeReport tooLong;
    tooLong.guaranteedPrefixLength = 5;
    CHECK_THROWS_AS(renderPattern(logFromKinds("qqeq", false, 3), &tooLong), SemanticError);
}

TEST_CASE("real-outcome pattern shapes render and annotate") {
    // Four openers, a long elimination run, a fifth seat, another run, and a
    // final seating without a quota -- with the opening four certified.
    CountLog log = logFromKinds("qqqqeeeeeqeees", false, 6);
    GuaranteeReport report;
    report.guaranteedPrefixLength = 4;
    PatternString p = renderPattern(log, &report);
    CHECK(formatPattern(p) == "q q q q e ... q e ... s");
    CHECK(formatPattern(p, true) == "[q q q q] e ... q e ... s");
    CHECK(comparePattern(p, "q q q q e \xE2\x80\xA6 q e \xE2\x80\xA6 s").match);

    // Six seats with the last two falling in consecutive rounds.
    CountLog nsw = logFromKinds("qqqqeeeeqq", false, 6);
    CHECK(comparePattern(renderPattern(nsw), "q q q q e ... q q").match);
}

TEST_CASE("compression is lossless modulo run lengths") {
    Rng rng(99);
    for (int i = 0; i < 60; ++i) {
        Contest contest = randomContest(rng);
        std::vector<Ballot> ballots = randomBallots(rng, contest);
        if (ballots.empty()) continue;
        CountLog log = tabulate(contest, ballots);
        PatternString p = renderPattern(log);
        CHECK(expandTokens(p) == rawEventTokens(log));

        // Seats awarded equals the q and s tokens.
        long long seats = 0;
        for (const PatternToken& t : expandTokens(p)) {
            if (t.kind == TokenKind::Quota || t.kind == TokenKind::NoQuota) ++seats;
        }
        CHECK(seats == contest.seats);
    }
}

TEST_CASE("pattern comparison") {
    PatternString qq = parsePattern("q q");
    CHECK(comparePattern(qq, "q q").match);
    CHECK(comparePattern(qq, "[q] q").match);

    PatternDiff diff = comparePattern(parsePattern("q e"), "q q");
    CHECK(!diff.match);
    CHECK(diff.tokenIndex == 1);

    // Typographic ellipses parse like the ASCII form.
    PatternString fancy = parsePattern("q q q q e \xE2\x80\xA6 q q");
    CHECK(comparePattern(fancy, "q q q q e ... q q").match);

    CountLog log = logFromKinds("qqqqeeeeqq", false, 6);
    CHECK(comparePattern(renderPattern(log), "q q q q e ... q q").match);
    CHECK(!comparePattern(renderPattern(log), "q q q q e ... q").match);
    CHECK(!comparePattern(renderPattern(log), "q q q q e ... q q ...").match);

    CHECK_THROWS_AS(parsePattern("q x"), ParseError);
    CHECK_THROWS_AS(parsePattern("q ... q"), ParseError); // '...' needs an 'e' before it
    CHECK(parsePattern("q q ...").trailingStanding);
}
