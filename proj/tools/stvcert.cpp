// stvcert: tabulate Senate-rules STV contests, propagate first-preference
// tally bounds over a reported outcome, and brute-check seating guarantees.

#include "stv/bounds.hpp"
#include "stv/contest.hpp"
#include "stv/data_io.hpp"
#include "stv/errors.hpp"
#include "stv/oracle.hpp"
#include "stv/pattern.hpp"
#include "stv/tabulation.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace stv;

struct Options {
    std::string contestPath;
    std::string ballotsPath;
    std::string preferencesPath;
    std::string summaryPath;
    std::string eventsPath;
    std::string logPath;
    std::string reportPath;
    std::string outPath;
    std::string expect;
    std::string layout = "aec2016";
    long long maxCompletions = 100000;
    int precision = 3;
    bool literalEliminationPapers = false;
    bool annotated = false;
};

Contest loadContest(const Options& opt) {
    return parseContest(readFileMaybeGzip(opt.contestPath));
}

std::vector<Ballot> loadBallots(const Options& opt, const Contest& contest) {
    if (!opt.preferencesPath.empty()) {
        IngestResult r =
            ingestExternalPreferences(readFileMaybeGzip(opt.preferencesPath), contest, opt.layout);
        std::cerr << "ingested " << r.totalPapers << " formal papers from " << r.rows
                  << " rows (informal: " << r.informal
                  << ", mixed treated as BTL: " << r.mixedTreatedAsBtl << ")\n";
        return r.ballots;
    }
    return parseBallots(readFileMaybeGzip(opt.ballotsPath), contest).ballots;
}

EventSequence loadEvents(const Options& opt, const Contest& contest) {
    if (!opt.eventsPath.empty()) {
        return parseEvents(readFileMaybeGzip(opt.eventsPath), contest);
    }
    return eventsFromLog(readRoundLog(readFileMaybeGzip(opt.logPath)));
}

std::string describeTransfer(const Rational& tau, int precision) {
    return rationalString(tau) + " = " + formatSignificant(tau, precision);
}

int runTabulate(const Options& opt) {
    Contest contest = loadContest(opt);
    std::vector<Ballot> ballots = loadBallots(opt, contest);
    CountLog log = tabulate(contest, ballots);
    std::string doc = writeRoundLog(log);
    if (opt.outPath.empty()) {
        std::cout << doc;
        return 0;
    }
    writeFile(opt.outPath, doc);

    std::cout << "contest: " << log.contest << "  seats: " << log.seats
              << "  ballots: " << log.totalBallots << "  quota: " << log.quota.votes << "\n";
    for (const RoundEvent& ev : log.events) {
        std::cout << "round " << ev.round << ": ";
        switch (ev.kind) {
            case EventKind::Elect:
                std::cout << "elect " << ev.candidate << "  (transfer value "
                          << describeTransfer(ev.transferValue, opt.precision) << ")";
                break;
            case EventKind::Eliminate:
                std::cout << "eliminate " << ev.candidate;
                break;
            case EventKind::SeatLastStanding:
                std::cout << "seat " << ev.candidate << " (last standing"
                          << (ev.hasQuota ? ", holds a quota" : "") << ")";
                break;
        }
        std::cout << "\n";
    }
    std::cout << "seated:";
    for (const std::string& id : log.seatedOrder) std::cout << ' ' << id;
    std::cout << "\npattern: " << formatPattern(renderPattern(log)) << "\n";
    std::cout << "value increases: " << log.anomalies.size() << "\n";
    for (const ValueIncrease& a : log.anomalies) {
        std::cout << "  round " << a.round << ": " << a.papers << " papers [";
        for (size_t i = 0; i < a.ballot.prefs.size(); ++i) {
            if (i) std::cout << ' ';
            std::cout << a.ballot.prefs[i];
        }
        std::cout << "] from " << describeTransfer(a.oldValue, opt.precision) << " to "
                  << describeTransfer(a.newValue, opt.precision) << "\n";
    }
    return 0;
}

int runSummarize(const Options& opt) {
    Contest contest = loadContest(opt);
    std::vector<Ballot> ballots = loadBallots(opt, contest);
    FirstPrefSummary summary = summarize(ballots, contest);
    std::string doc = writeSummary(summary);
    if (opt.outPath.empty()) {
        std::cout << doc;
        return 0;
    }
    writeFile(opt.outPath, doc);
    std::cout << "papers: " << summary.totalBallots() << " (ATL " << summary.totalAtl()
              << ", BTL " << summary.totalBtl() << ") across " << summary.entries.size()
              << " candidates\n";
    return 0;
}

int runAnalyze(const Options& opt) {
    Contest contest = loadContest(opt);
    FirstPrefSummary summary = parseSummary(readFileMaybeGzip(opt.summaryPath), contest);
    EventSequence events = loadEvents(opt, contest);
    BoundsOptions bopts;
    bopts.literalEliminationPapers = opt.literalEliminationPapers;
    GuaranteeReport report = analyze(summary, events, contest, bopts);

    std::cout << "quota: " << report.quota << "  ballots: " << report.totalBallots << "\n";
    for (const BoundsRound& r : report.trace) {
        std::cout << "round " << r.round << ": "
                  << (r.event.kind == StepKind::Elect ? "elect " : "eliminate ")
                  << r.event.candidate;
        if (r.event.kind == StepKind::Elect) {
            std::cout << (r.guaranteed ? "  guaranteed" : "  not guaranteed")
                      << " (lower bound " << rationalString(r.tallyLowerBound) << ")";
        }
        std::cout << "\n";
    }
    std::cout << "guaranteed prefix: " << report.guaranteedPrefixLength << "\n";
    if (!opt.outPath.empty()) {
        writeFile(opt.outPath, writeGuaranteeReport(report));
    }
    return 0;
}

int runPattern(const Options& opt) {
    CountLog log = readRoundLog(readFileMaybeGzip(opt.logPath));
    PatternString pattern;
    if (!opt.reportPath.empty()) {
        ReportDigest digest = readReportDigest(readFileMaybeGzip(opt.reportPath));
        GuaranteeReport stub;
        stub.guaranteedPrefixLength = digest.guaranteedPrefixLength;
        pattern = renderPattern(log, &stub);
    } else {
        pattern = renderPattern(log);
    }
    std::string text = formatPattern(pattern, opt.annotated);
    std::cout << text << "\n";
    if (!opt.outPath.empty()) {
        writeFile(opt.outPath, text + "\n");
    }
    if (!opt.expect.empty()) {
        PatternDiff diff = comparePattern(pattern, opt.expect);
        if (!diff.match) {
            std::cout << "diff: " << diff.description << "\n";
            return 3;
        }
        std::cout << "match\n";
    }
    return 0;
}

int runVerify(const Options& opt) {
    Contest contest = loadContest(opt);
    FirstPrefSummary summary = parseSummary(readFileMaybeGzip(opt.summaryPath), contest);
    EventSequence events = loadEvents(opt, contest);
    BoundsOptions bopts;
    bopts.literalEliminationPapers = opt.literalEliminationPapers;
    GuaranteeReport report = analyze(summary, events, contest, bopts);

    CompletionSpace space;
    space.contest = contest;
    space.summary = summary;
    space.limits.maxCompletions = opt.maxCompletions;
    Verdict verdict = verifyGuarantees(space, report);

    if (verdict.confirmed) {
        std::cout << "confirmed (" << verdict.completions << " completions)\n";
    } else {
        std::cout << "counterexample at completion " << verdict.completions << ": "
                  << verdict.violatedCandidate << " not seated (seated:";
        for (const std::string& id : verdict.seatedOrder) std::cout << ' ' << id;
        std::cout << ")\n";
    }
    if (!opt.outPath.empty()) {
        writeFile(opt.outPath, writeVerdict(verdict));
    }
    return verdict.confirmed ? 0 : 3;
}

int runIngest(const Options& opt) {
    Contest contest = loadContest(opt);
    IngestResult r =
        ingestExternalPreferences(readFileMaybeGzip(opt.preferencesPath), contest, opt.layout);
    std::string doc = writeBallots(r.ballots);
    if (opt.outPath.empty()) {
        std::cout << doc;
    } else {
        writeFile(opt.outPath, doc);
    }
    std::cerr << "rows: " << r.rows << ", formal papers: " << r.totalPapers
              << ", informal skipped: " << r.informal
              << ", mixed treated as BTL: " << r.mixedTreatedAsBtl << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Senate-rules STV tabulation and seating-guarantee analysis"};
    app.require_subcommand(1);

    Options opt;

    auto addContest = [&](CLI::App* cmd) {
        cmd->add_option("--contest", opt.contestPath, "contest document (JSON)")->required();
    };
    auto addBallotSource = [&](CLI::App* cmd) {
        auto* b = cmd->add_option("--ballots", opt.ballotsPath, "ballot file (CSV, .gz ok)");
        auto* p = cmd->add_option("--preferences", opt.preferencesPath,
                                  "published preference rows (CSV, .gz ok)");
        b->excludes(p);
    };
    auto addEventSource = [&](CLI::App* cmd) {
        auto* e = cmd->add_option("--events", opt.eventsPath, "event sequence (JSON)");
        auto* l = cmd->add_option("--log", opt.logPath, "round log to take events from");
        e->excludes(l);
    };

    CLI::App* tab = app.add_subcommand("tabulate", "run a full count");
    addContest(tab);
    addBallotSource(tab);
    tab->add_option("--out", opt.outPath, "write the round log here");
    tab->add_option("--precision", opt.precision, "significant digits for displayed values");

    CLI::App* sum = app.add_subcommand("summarize", "first-preference ATL/BTL paper counts");
    addContest(sum);
    addBallotSource(sum);
    sum->add_option("--out", opt.outPath, "write the summary CSV here");

    CLI::App* ana = app.add_subcommand("analyze", "propagate tally bounds over an outcome");
    addContest(ana);
    ana->add_option("--summary", opt.summaryPath, "first-preference summary (CSV)")->required();
    addEventSource(ana);
    ana->add_flag("--literal-elimination-papers", opt.literalEliminationPapers,
                  "grow BTL paper uppers by the eliminated candidate's ATL paper upper");
    ana->add_option("--out", opt.outPath, "write the guarantee report here");

    CLI::App* pat = app.add_subcommand("pattern", "render a count log as a pattern string");
    pat->add_option("--log", opt.logPath, "round log (JSON)")->required();
    pat->add_option("--report", opt.reportPath, "guarantee report for prefix markup");
    pat->add_flag("--annotated", opt.annotated, "bracket the guaranteed prefix");
    pat->add_option("--expect", opt.expect, "compare against this pattern");
    pat->add_option("--out", opt.outPath, "write the pattern here");

    CLI::App* ver = app.add_subcommand("verify", "brute-check guarantees by enumeration");
    addContest(ver);
    ver->add_option("--summary", opt.summaryPath, "first-preference summary (CSV)")->required();
    addEventSource(ver);
    ver->add_option("--max-completions", opt.maxCompletions, "enumeration budget");
    ver->add_flag("--literal-elimination-papers", opt.literalEliminationPapers,
                  "grow BTL paper uppers by the eliminated candidate's ATL paper upper");
    ver->add_option("--out", opt.outPath, "write the verdict here");

    CLI::App* ing = app.add_subcommand("ingest", "convert published preference rows to ballots");
    addContest(ing);
    ing->add_option("--preferences", opt.preferencesPath, "published preference rows (CSV, .gz ok)")
        ->required();
    ing->add_option("--layout", opt.layout, "preference file layout (aec2016)");
    ing->add_option("--out", opt.outPath, "write the ballot CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tab->parsed()) {
            if (opt.ballotsPath.empty() && opt.preferencesPath.empty()) {
                throw SemanticError("missing_input: tabulate needs --ballots or --preferences");
            }
            return runTabulate(opt);
        }
        if (sum->parsed()) {
            if (opt.ballotsPath.empty() && opt.preferencesPath.empty()) {
                throw SemanticError("missing_input: summarize needs --ballots or --preferences");
            }
            return runSummarize(opt);
        }
        if (ana->parsed() || ver->parsed()) {
            if (opt.eventsPath.empty() && opt.logPath.empty()) {
                throw SemanticError("missing_input: needs --events or --log");
            }
            return ana->parsed() ? runAnalyze(opt) : runVerify(opt);
        }
        if (pat->parsed()) return runPattern(opt);
        if (ing->parsed()) return runIngest(opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const RefusalError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
