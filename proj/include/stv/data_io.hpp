#pragma once

#include "stv/bounds.hpp"
#include "stv/contest.hpp"
#include "stv/tabulation.hpp"

#include <string>
#include <vector>

namespace stv {

// Canonical document formats. JSON documents are versioned and rationals are
// carried as decimal num/den string pairs, never as floats, so round-trips are
// bit-exact. CSV files use a comma delimiter, a required header row, and ids
// drawn from [A-Za-z0-9_.-]; preference lists are space-separated ids.

// ---- files ----

// Reads a whole file; gzip-compressed content (by magic bytes) is inflated
// transparently.
std::string readFileMaybeGzip(const std::string& path);
std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& content);

// ---- contest documents (JSON, schema stv-contest/1) ----

Contest parseContest(const std::string& jsonText);
std::string writeContest(const Contest& contest);

// ---- ballot files (CSV: kind,prefs,multiplicity) ----

struct BallotFile {
    std::vector<Ballot> ballots; // identical records aggregated, input order
    long long totalPapers = 0;
};

BallotFile parseBallots(const std::string& csvText, const Contest& contest);
std::string writeBallots(const std::vector<Ballot>& ballots);

// ---- first-preference summaries (CSV: candidate,atl_papers,btl_papers) ----

// ATL first preferences credit the top member of the first-ranked group.
FirstPrefSummary summarize(const std::vector<Ballot>& ballots, const Contest& contest);

FirstPrefSummary parseSummary(const std::string& csvText, const Contest& contest);
std::string writeSummary(const FirstPrefSummary& summary);

// ---- event sequences (JSON, schema stv-events/1) ----

EventSequence parseEvents(const std::string& jsonText, const Contest& contest);
std::string writeEvents(const EventSequence& events);

// Elections and eliminations of a count, in order; last-standing seatings are
// not replayable events and are dropped.
EventSequence eventsFromLog(const CountLog& log);

// ---- round logs (JSON, schema stv-roundlog/1) ----

std::string writeRoundLog(const CountLog& log);
CountLog readRoundLog(const std::string& jsonText);

// ---- guarantee reports (JSON, schema stv-guarantees/1) ----

std::string writeGuaranteeReport(const GuaranteeReport& report);

// Enough of a report to drive pattern markup.
struct ReportDigest {
    int guaranteedPrefixLength = 0;
    std::vector<std::string> guaranteedCandidates;
};
ReportDigest readReportDigest(const std::string& jsonText);

// ---- published commission preference rows ----

// Layout "aec2016": a CSV whose "Preferences" column holds comma-separated
// marks for every ATL box (contest group order) followed by every BTL box
// (contest candidate order). Numeric marks are ranks; '/' and '*' count as a
// first preference; blanks are unranked. A row with a formal BTL ranking
// (ranks 1..k, no gaps or repeats) is a BTL ballot even when ATL boxes are
// also marked; otherwise a formal ATL ranking makes it an ATL ballot; rows
// with neither are skipped as informal.
struct IngestResult {
    std::vector<Ballot> ballots; // aggregated
    long long rows = 0;
    long long informal = 0;
    long long mixedTreatedAsBtl = 0;
    long long totalPapers = 0;
};

IngestResult ingestExternalPreferences(const std::string& csvText, const Contest& contest,
                                       const std::string& layout = "aec2016");

} // namespace stv
