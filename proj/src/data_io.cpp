#include "stv/data_io.hpp"

#include "stv/errors.hpp"

#include <json.hpp>
#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace stv {

namespace {

using Json = nlohmann::ordered_json;

Json rationalJson(const Rational& q) {
    return Json{{"num", numeratorString(q)}, {"den", denominatorString(q)}};
}

Rational rationalFromJson(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
        throw ParseError("expected a num/den rational object");
    }
    try {
        return rationalFromStrings(j.at("num").get<std::string>(),
                                   j.at("den").get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Json parseJsonText(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

void requireSchema(const Json& j, const std::string& expected) {
    if (!j.is_object() || !j.contains("schema") || !j.at("schema").is_string() ||
        j.at("schema").get<std::string>() != expected) {
        throw ParseError("schema mismatch: expected " + expected);
    }
}

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (ch == '"') {
            if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else {
                quoted = !quoted;
            }
        } else if (ch == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> splitWhitespace(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

// CSV text split into non-empty lines with CR stripped; line numbers kept.
std::vector<std::pair<int, std::string>> csvLines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream is(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        out.emplace_back(lineNo, line);
    }
    return out;
}

long long parseLong(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer for " + what + ": '" + s + "'");
    }
}

} // namespace

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string readFileMaybeGzip(const std::string& path) {
    std::string raw = readFile(path);
    if (raw.size() < 2 || static_cast<unsigned char>(raw[0]) != 0x1f ||
        static_cast<unsigned char>(raw[1]) != 0x8b) {
        return raw;
    }
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz) {
        throw ParseError("cannot open gzip file: " + path);
    }
    std::string out;
    char buf[1 << 16];
    int n;
    while ((n = gzread(gz, buf, sizeof buf)) > 0) {
        out.append(buf, static_cast<size_t>(n));
    }
    bool ok = n == 0;
    gzclose(gz);
    if (!ok) {
        throw ParseError("corrupt gzip stream: " + path);
    }
    return out;
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ParseError("cannot write file: " + path);
    }
    out << content;
}

// ---- contest ----

Contest parseContest(const std::string& jsonText) {
    Json j = parseJsonText(jsonText);
    requireSchema(j, "stv-contest/1");
    Contest c;
    try {
        c.name = j.value("name", std::string{});
        if (!j.contains("seats") || !j.at("seats").is_number_integer()) {
            throw ParseError("contest needs an integer 'seats' field");
        }
        c.seats = j.at("seats").get<long long>();
        if (!j.contains("candidates") || !j.at("candidates").is_array()) {
            throw ParseError("contest needs a 'candidates' array");
        }
        c.candidates = j.at("candidates").get<std::vector<std::string>>();
        if (j.contains("groups")) {
            for (const Json& gj : j.at("groups")) {
                Group g;
                g.id = gj.at("id").get<std::string>();
                g.members = gj.at("members").get<std::vector<std::string>>();
                c.groups.push_back(std::move(g));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed contest document: ") + e.what());
    }
    c.finalize();
    return c;
}

std::string writeContest(const Contest& contest) {
    Json j;
    j["schema"] = "stv-contest/1";
    j["name"] = contest.name;
    j["seats"] = contest.seats;
    j["candidates"] = contest.candidates;
    Json groups = Json::array();
    for (const Group& g : contest.groups) {
        if (g.synthetic) continue;
        groups.push_back(Json{{"id", g.id}, {"members", g.members}});
    }
    j["groups"] = std::move(groups);
    return j.dump(2) + "\n";
}

// ---- ballots ----

BallotFile parseBallots(const std::string& csvText, const Contest& contest) {
    auto lines = csvLines(csvText);
    if (lines.empty() || lines.front().second != "kind,prefs,multiplicity") {
        throw ParseError("ballot file needs header 'kind,prefs,multiplicity'");
    }

    BallotFile out;
    std::map<std::pair<int, std::vector<std::string>>, size_t> classIndex;
    std::vector<std::string> problems;

    for (size_t i = 1; i < lines.size(); ++i) {
        const auto& [lineNo, line] = lines[i];
        auto addProblem = [&](const std::string& msg) {
            problems.push_back("line " + std::to_string(lineNo) + ": " + msg);
        };
        std::vector<std::string> cols = splitCsvLine(line);
        if (cols.size() != 3) {
            addProblem("expected 3 columns, got " + std::to_string(cols.size()));
            continue;
        }
        Ballot b;
        if (cols[0] == "ATL") {
            b.kind = BallotKind::Atl;
        } else if (cols[0] == "BTL") {
            b.kind = BallotKind::Btl;
        } else {
            addProblem("kind must be ATL or BTL, got '" + cols[0] + "'");
            continue;
        }
        b.prefs = splitWhitespace(cols[1]);
        try {
            b.multiplicity = parseLong(cols[2], "multiplicity");
        } catch (const ParseError& e) {
            addProblem(e.what());
            continue;
        }
        auto violations = validateBallot(b, contest);
        if (!violations.empty()) {
            for (const Violation& v : violations) {
                addProblem(v.code + (v.detail.empty() ? "" : " '" + v.detail + "'"));
            }
            continue;
        }
        auto key = std::make_pair(static_cast<int>(b.kind), b.prefs);
        auto it = classIndex.find(key);
        if (it == classIndex.end()) {
            classIndex.emplace(std::move(key), out.ballots.size());
            out.ballots.push_back(b);
        } else {
            out.ballots[it->second].multiplicity += b.multiplicity;
        }
        out.totalPapers += b.multiplicity;
    }

    if (!problems.empty()) {
        std::string msg = "invalid ballot records:";
        for (const std::string& p : problems) msg += "\n  " + p;
        throw ParseError(msg);
    }
    return out;
}

std::string writeBallots(const std::vector<Ballot>& ballots) {
    std::ostringstream os;
    os << "kind,prefs,multiplicity\n";
    for (const Ballot& b : ballots) {
        os << (b.kind == BallotKind::Atl ? "ATL" : "BTL") << ',';
        for (size_t i = 0; i < b.prefs.size(); ++i) {
            if (i) os << ' ';
            os << b.prefs[i];
        }
        os << ',' << b.multiplicity << '\n';
    }
    return os.str();
}

// ---- summaries ----

FirstPrefSummary summarize(const std::vector<Ballot>& ballots, const Contest& contest) {
    std::vector<long long> atl(static_cast<size_t>(contest.candidateCount()), 0);
    std::vector<long long> btl(static_cast<size_t>(contest.candidateCount()), 0);
    for (const Ballot& b : ballots) {
        auto violations = validateBallot(b, contest);
        if (!violations.empty()) {
            throw SemanticError("invalid_ballot: " + violations.front().code);
        }
        int first;
        if (b.kind == BallotKind::Atl) {
            const Group& g = contest.group(contest.declaredGroupIndex(b.prefs.front()));
            first = contest.candidateIndex(g.members.front());
            atl[static_cast<size_t>(first)] += b.multiplicity;
        } else {
            first = contest.candidateIndex(b.prefs.front());
            btl[static_cast<size_t>(first)] += b.multiplicity;
        }
    }
    FirstPrefSummary out;
    for (int c = 0; c < contest.candidateCount(); ++c) {
        out.entries.push_back({contest.candidates[static_cast<size_t>(c)],
                               atl[static_cast<size_t>(c)], btl[static_cast<size_t>(c)]});
    }
    return out;
}

FirstPrefSummary parseSummary(const std::string& csvText, const Contest& contest) {
    auto lines = csvLines(csvText);
    if (lines.empty() || lines.front().second != "candidate,atl_papers,btl_papers") {
        throw ParseError("summary file needs header 'candidate,atl_papers,btl_papers'");
    }
    std::map<std::string, std::pair<long long, long long>> byId;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto& [lineNo, line] = lines[i];
        std::vector<std::string> cols = splitCsvLine(line);
        if (cols.size() != 3) {
            throw ParseError("line " + std::to_string(lineNo) + ": expected 3 columns");
        }
        if (contest.candidateIndex(cols[0]) < 0) {
            throw SemanticError("unknown_candidate: " + cols[0] + " (line " +
                                std::to_string(lineNo) + ")");
        }
        if (!byId.emplace(cols[0], std::make_pair(parseLong(cols[1], "atl_papers"),
                                                  parseLong(cols[2], "btl_papers")))
                 .second) {
            throw SemanticError("duplicate_summary_entry: " + cols[0]);
        }
    }
    FirstPrefSummary out;
    for (const std::string& id : contest.candidates) {
        auto it = byId.find(id);
        if (it == byId.end()) {
            throw SemanticError("missing_summary_entry: " + id);
        }
        out.entries.push_back({id, it->second.first, it->second.second});
    }
    return out;
}

std::string writeSummary(const FirstPrefSummary& summary) {
    std::ostringstream os;
    os << "candidate,atl_papers,btl_papers\n";
    for (const FirstPrefEntry& e : summary.entries) {
        os << e.candidate << ',' << e.atlPapers << ',' << e.btlPapers << '\n';
    }
    return os.str();
}

// ---- events ----

EventSequence parseEvents(const std::string& jsonText, const Contest& contest) {
    Json j = parseJsonText(jsonText);
    requireSchema(j, "stv-events/1");
    EventSequence out;
    try {
        for (const Json& ej : j.at("events")) {
            EventStep step;
            std::string kind = ej.at("kind").get<std::string>();
            if (kind == "elect") {
                step.kind = StepKind::Elect;
            } else if (kind == "eliminate") {
                step.kind = StepKind::Eliminate;
            } else {
                throw ParseError("event kind must be elect or eliminate, got '" + kind + "'");
            }
            step.candidate = ej.at("candidate").get<std::string>();
            if (contest.candidateIndex(step.candidate) < 0) {
                throw SemanticError("unknown_candidate: " + step.candidate);
            }
            out.push_back(std::move(step));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed event document: ") + e.what());
    }
    return out;
}

std::string writeEvents(const EventSequence& events) {
    Json j;
    j["schema"] = "stv-events/1";
    Json arr = Json::array();
    for (const EventStep& step : events) {
        arr.push_back(Json{{"kind", step.kind == StepKind::Elect ? "elect" : "eliminate"},
                           {"candidate", step.candidate}});
    }
    j["events"] = std::move(arr);
    return j.dump(2) + "\n";
}

EventSequence eventsFromLog(const CountLog& log) {
    EventSequence out;
    for (const RoundEvent& ev : log.events) {
        if (ev.kind == EventKind::Elect) {
            out.push_back({StepKind::Elect, ev.candidate});
        } else if (ev.kind == EventKind::Eliminate) {
            out.push_back({StepKind::Eliminate, ev.candidate});
        }
    }
    return out;
}

// ---- round logs ----

std::string writeRoundLog(const CountLog& log) {
    Json j;
    j["schema"] = "stv-roundlog/1";
    j["contest"] = log.contest;
    j["seats"] = log.seats;
    j["totalBallots"] = log.totalBallots;
    j["quota"] = log.quota.votes;

    Json events = Json::array();
    for (const RoundEvent& ev : log.events) {
        Json e;
        e["round"] = ev.round;
        switch (ev.kind) {
            case EventKind::Elect:
                e["kind"] = "elect";
                break;
            case EventKind::Eliminate:
                e["kind"] = "eliminate";
                break;
            case EventKind::SeatLastStanding:
                e["kind"] = "seat_last_standing";
                break;
        }
        e["candidate"] = ev.candidate;
        if (ev.kind == EventKind::Elect) {
            e["transferValue"] = rationalJson(ev.transferValue);
        }
        if (ev.kind == EventKind::SeatLastStanding) {
            e["hasQuota"] = ev.hasQuota;
        }
        Json tallies = Json::array();
        for (const TallyEntry& t : ev.tallies) {
            tallies.push_back(Json{{"candidate", t.candidate}, {"tally", t.tally}});
        }
        e["tallies"] = std::move(tallies);
        e["exhausted"] = rationalJson(ev.exhausted);
        e["roundingLoss"] = rationalJson(ev.roundingLoss);
        events.push_back(std::move(e));
    }
    j["events"] = std::move(events);
    j["seated"] = log.seatedOrder;
    j["finalStanding"] = log.finalStanding;

    Json anomalies = Json::array();
    for (const ValueIncrease& a : log.anomalies) {
        anomalies.push_back(Json{
            {"round", a.round},
            {"kind", a.ballot.kind == BallotKind::Atl ? "ATL" : "BTL"},
            {"prefs", a.ballot.prefs},
            {"papers", a.papers},
            {"oldValue", rationalJson(a.oldValue)},
            {"newValue", rationalJson(a.newValue)},
        });
    }
    j["anomalies"] = std::move(anomalies);
    return j.dump(2) + "\n";
}

CountLog readRoundLog(const std::string& jsonText) {
    Json j = parseJsonText(jsonText);
    requireSchema(j, "stv-roundlog/1");
    CountLog log;
    try {
        log.contest = j.at("contest").get<std::string>();
        log.seats = j.at("seats").get<long long>();
        log.totalBallots = j.at("totalBallots").get<long long>();
        log.quota.votes = j.at("quota").get<long long>();
        for (const Json& e : j.at("events")) {
            RoundEvent ev;
            ev.round = e.at("round").get<int>();
            std::string kind = e.at("kind").get<std::string>();
            if (kind == "elect") {
                ev.kind = EventKind::Elect;
                ev.transferValue = rationalFromJson(e.at("transferValue"));
            } else if (kind == "eliminate") {
                ev.kind = EventKind::Eliminate;
            } else if (kind == "seat_last_standing") {
                ev.kind = EventKind::SeatLastStanding;
                ev.hasQuota = e.at("hasQuota").get<bool>();
            } else {
                throw ParseError("unknown event kind: " + kind);
            }
            ev.candidate = e.at("candidate").get<std::string>();
            for (const Json& t : e.at("tallies")) {
                ev.tallies.push_back({t.at("candidate").get<std::string>(),
                                      t.at("tally").get<long long>()});
            }
            ev.exhausted = rationalFromJson(e.at("exhausted"));
            ev.roundingLoss = rationalFromJson(e.at("roundingLoss"));
            log.events.push_back(std::move(ev));
        }
        log.seatedOrder = j.at("seated").get<std::vector<std::string>>();
        log.finalStanding = j.at("finalStanding").get<std::vector<std::string>>();
        for (const Json& a : j.at("anomalies")) {
            ValueIncrease inc;
            inc.round = a.at("round").get<int>();
            inc.ballot.kind =
                a.at("kind").get<std::string>() == "ATL" ? BallotKind::Atl : BallotKind::Btl;
            inc.ballot.prefs = a.at("prefs").get<std::vector<std::string>>();
            inc.ballot.multiplicity = a.at("papers").get<long long>();
            inc.papers = a.at("papers").get<long long>();
            inc.oldValue = rationalFromJson(a.at("oldValue"));
            inc.newValue = rationalFromJson(a.at("newValue"));
            log.anomalies.push_back(std::move(inc));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed round log: ") + e.what());
    }
    return log;
}

// ---- guarantee reports ----

namespace {

Json intervalJson(const ValueInterval& v) {
    return Json{{"lo", rationalJson(v.lo)}, {"hi", rationalJson(v.hi)}};
}

Json boundsJson(const CandidateBounds& b) {
    Json j;
    j["atlValue"] = intervalJson(b.atlValue);
    j["btlValue"] = intervalJson(b.btlValue);
    j["atlPapers"] = Json{{"lo", b.atlPapers.lo}, {"hi", b.atlPapers.hi}};
    j["btlPapers"] = Json{{"lo", b.btlPapers.lo}, {"hi", b.btlPapers.hi}};
    return j;
}

} // namespace

std::string writeGuaranteeReport(const GuaranteeReport& report) {
    Json j;
    j["schema"] = "stv-guarantees/1";
    j["quota"] = report.quota;
    j["totalBallots"] = report.totalBallots;
    j["seats"] = report.seats;
    j["options"] = Json{{"literalEliminationPapers", report.options.literalEliminationPapers}};
    j["guaranteedPrefixLength"] = report.guaranteedPrefixLength;

    Json events = Json::array();
    for (const BoundsRound& r : report.trace) {
        Json e;
        e["round"] = r.round;
        e["kind"] = r.event.kind == StepKind::Elect ? "elect" : "eliminate";
        e["candidate"] = r.event.candidate;
        e["guaranteed"] = r.guaranteed;
        e["tallyLowerBound"] = rationalJson(r.tallyLowerBound);
        events.push_back(std::move(e));
    }
    j["events"] = std::move(events);

    Json trace = Json::array();
    for (const BoundsRound& r : report.trace) {
        Json t;
        t["round"] = r.round;
        t["event"] = Json{{"kind", r.event.kind == StepKind::Elect ? "elect" : "eliminate"},
                          {"candidate", r.event.candidate}};
        if (r.surplus) t["surplus"] = intervalJson(*r.surplus);
        if (r.transferValue) t["transferValue"] = intervalJson(*r.transferValue);
        Json cands = Json::array();
        for (const auto& [id, b] : r.candidates) {
            Json c = boundsJson(b);
            c["candidate"] = id;
            cands.push_back(std::move(c));
        }
        t["candidates"] = std::move(cands);
        trace.push_back(std::move(t));
    }
    j["trace"] = std::move(trace);
    return j.dump(2) + "\n";
}

ReportDigest readReportDigest(const std::string& jsonText) {
    Json j = parseJsonText(jsonText);
    requireSchema(j, "stv-guarantees/1");
    ReportDigest out;
    try {
        out.guaranteedPrefixLength = j.at("guaranteedPrefixLength").get<int>();
        for (const Json& e : j.at("events")) {
            if (e.at("kind").get<std::string>() == "elect" && e.at("guaranteed").get<bool>()) {
                out.guaranteedCandidates.push_back(e.at("candidate").get<std::string>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed guarantee report: ") + e.what());
    }
    return out;
}

// ---- published commission preference rows ----

namespace {

// A mark cell: ranks as integers; '/' and '*' count as rank 1; blank is none.
// Returns -1 for blank, -2 for an unusable mark.
int parseMark(const std::string& cell) {
    std::string s = cell;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) return -1;
    if (s == "/" || s == "*") return 1;
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 1) return -2;
        return v;
    } catch (const std::exception&) {
        return -2;
    }
}

// Sorted preference order when the marks form ranks 1..k (k >= 1) with no
// gaps or repeats; empty otherwise.
std::vector<int> formalOrder(const std::vector<std::pair<int, int>>& marks) {
    // marks: (rank, box index)
    if (marks.empty()) return {};
    std::vector<std::pair<int, int>> sorted = marks;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> order;
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].first != static_cast<int>(i) + 1) return {};
        order.push_back(sorted[i].second);
    }
    return order;
}

} // namespace

IngestResult ingestExternalPreferences(const std::string& csvText, const Contest& contest,
                                       const std::string& layout) {
    if (layout != "aec2016") {
        throw SemanticError("unsupported_layout: " + layout);
    }

    auto lines = csvLines(csvText);
    if (lines.empty()) {
        throw ParseError("preference file is empty");
    }
    std::vector<std::string> header = splitCsvLine(lines.front().second);
    auto prefCol = std::find(header.begin(), header.end(), "Preferences");
    if (prefCol == header.end()) {
        throw ParseError("preference file needs a 'Preferences' column");
    }
    size_t prefIdx = static_cast<size_t>(prefCol - header.begin());

    const size_t atlBoxes = static_cast<size_t>(contest.declaredGroupCount());
    const size_t btlBoxes = static_cast<size_t>(contest.candidateCount());

    IngestResult out;
    std::map<std::pair<int, std::vector<std::string>>, size_t> classIndex;

    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> cols = splitCsvLine(lines[i].second);
        if (cols.size() <= prefIdx) {
            ++out.rows;
            ++out.informal;
            continue;
        }
        std::vector<std::string> marks = splitCsvLine(cols[prefIdx]);
        ++out.rows;
        if (marks.size() != atlBoxes + btlBoxes) {
            ++out.informal;
            continue;
        }

        std::vector<std::pair<int, int>> atlMarks, btlMarks;
        bool unusable = false;
        for (size_t b = 0; b < marks.size(); ++b) {
            int rank = parseMark(marks[b]);
            if (rank == -2) {
                unusable = true;
                break;
            }
            if (rank < 0) continue;
            if (b < atlBoxes) {
                atlMarks.emplace_back(rank, static_cast<int>(b));
            } else {
                btlMarks.emplace_back(rank, static_cast<int>(b - atlBoxes));
            }
        }
        if (unusable) {
            ++out.informal;
            continue;
        }

        std::vector<int> btlOrder = formalOrder(btlMarks);
        std::vector<int> atlOrder = formalOrder(atlMarks);

        Ballot b;
        if (!btlOrder.empty()) {
            b.kind = BallotKind::Btl;
            for (int idx : btlOrder) {
                b.prefs.push_back(contest.candidates[static_cast<size_t>(idx)]);
            }
            if (!atlMarks.empty()) ++out.mixedTreatedAsBtl;
        } else if (!atlOrder.empty()) {
            b.kind = BallotKind::Atl;
            for (int idx : atlOrder) {
                b.prefs.push_back(contest.group(idx).id);
            }
        } else {
            ++out.informal;
            continue;
        }

        auto key = std::make_pair(static_cast<int>(b.kind), b.prefs);
        auto it = classIndex.find(key);
        if (it == classIndex.end()) {
            classIndex.emplace(std::move(key), out.ballots.size());
            out.ballots.push_back(b);
        } else {
            out.ballots[it->second].multiplicity += 1;
        }
        ++out.totalPapers;
    }
    return out;
}

} // namespace stv
