#include "stv/pattern.hpp"

#include "stv/errors.hpp"

#include <sstream>

namespace stv {

namespace {

const char* tokenText(TokenKind k) {
    switch (k) {
        case TokenKind::Quota: return "q";
        case TokenKind::NoQuota: return "s";
        case TokenKind::Eliminated: return "e";
        case TokenKind::Ellipsis: return "...";
    }
    return "?";
}

} // namespace

std::vector<PatternToken> rawEventTokens(const CountLog& log) {
    std::vector<PatternToken> out;
    for (const RoundEvent& ev : log.events) {
        switch (ev.kind) {
            case EventKind::Elect:
                out.push_back({TokenKind::Quota, 1});
                break;
            case EventKind::SeatLastStanding:
                out.push_back({ev.hasQuota ? TokenKind::Quota : TokenKind::NoQuota, 1});
                break;
            case EventKind::Eliminate:
                out.push_back({TokenKind::Eliminated, 1});
                break;
        }
    }
    return out;
}

PatternString renderPattern(const CountLog& log, const GuaranteeReport* report) {
    std::vector<PatternToken> raw = rawEventTokens(log);

    PatternString out;
    out.trailingStanding = !log.finalStanding.empty();
    size_t i = 0;
    while (i < raw.size()) {
        if (raw[i].kind != TokenKind::Eliminated) {
            out.tokens.push_back(raw[i]);
            ++i;
            continue;
        }
        size_t runEnd = i;
        while (runEnd < raw.size() && raw[runEnd].kind == TokenKind::Eliminated) ++runEnd;
        int run = static_cast<int>(runEnd - i);
        out.tokens.push_back({TokenKind::Eliminated, 1});
        if (run >= 2) {
            out.tokens.push_back({TokenKind::Ellipsis, run - 1});
        }
        i = runEnd;
    }

    if (report) {
        int leadingQuota = 0;
        for (const PatternToken& t : out.tokens) {
            if (t.kind != TokenKind::Quota) break;
            ++leadingQuota;
        }
        if (report->guaranteedPrefixLength > leadingQuota) {
            throw SemanticError("report_log_mismatch: guaranteed prefix " +
                                std::to_string(report->guaranteedPrefixLength) +
                                " exceeds the " + std::to_string(leadingQuota) +
                                " leading quota seatings");
        }
        out.boldPrefix = report->guaranteedPrefixLength;
    }
    return out;
}

std::vector<PatternToken> expandTokens(const PatternString& pattern) {
    std::vector<PatternToken> out;
    for (const PatternToken& t : pattern.tokens) {
        if (t.kind == TokenKind::Ellipsis) {
            for (int i = 0; i < t.run; ++i) out.push_back({TokenKind::Eliminated, 1});
        } else {
            out.push_back(t);
        }
    }
    return out;
}

std::string formatPattern(const PatternString& pattern, bool annotated) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < pattern.tokens.size(); ++i) {
        if (!first) os << ' ';
        if (annotated && pattern.boldPrefix > 0 && i == 0) os << '[';
        os << tokenText(pattern.tokens[i].kind);
        if (annotated && pattern.boldPrefix > 0 &&
            i + 1 == static_cast<size_t>(pattern.boldPrefix)) {
            os << ']';
        }
        first = false;
    }
    if (pattern.trailingStanding) {
        if (!first) os << ' ';
        os << "...";
    }
    return os.str();
}

PatternString parsePattern(const std::string& text) {
    // Normalize typographic ellipses and prefix brackets into plain words.
    std::string normalized;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text.compare(i, 3, "\xE2\x80\xA6") == 0) { // U+2026
            normalized += " ... ";
            i += 2;
        } else if (text[i] == '[' || text[i] == ']') {
            normalized += ' ';
            normalized += text[i];
            normalized += ' ';
        } else {
            normalized += text[i];
        }
    }

    std::istringstream is(normalized);
    std::string word;
    std::vector<std::string> words;
    while (is >> word) words.push_back(word);

    PatternString out;
    int bracketClose = -1;
    std::vector<std::string> tokens;
    for (const std::string& w : words) {
        if (w == "[") {
            if (!tokens.empty() || bracketClose >= 0) {
                throw ParseError("pattern bracket must open at the start");
            }
        } else if (w == "]") {
            if (bracketClose >= 0) throw ParseError("pattern has multiple closing brackets");
            bracketClose = static_cast<int>(tokens.size());
        } else if (w == "q" || w == "s" || w == "e" || w == "...") {
            tokens.push_back(w);
        } else {
            throw ParseError("unknown pattern token: " + w);
        }
    }
    out.boldPrefix = bracketClose < 0 ? 0 : bracketClose;

    for (size_t i = 0; i < tokens.size(); ++i) {
        const std::string& w = tokens[i];
        if (w == "q") {
            out.tokens.push_back({TokenKind::Quota, 1});
        } else if (w == "s") {
            out.tokens.push_back({TokenKind::NoQuota, 1});
        } else if (w == "e") {
            out.tokens.push_back({TokenKind::Eliminated, 1});
        } else { // "..."
            bool afterElimination =
                !out.tokens.empty() && out.tokens.back().kind == TokenKind::Eliminated;
            if (afterElimination) {
                out.tokens.push_back({TokenKind::Ellipsis, 1});
            } else if (i + 1 == tokens.size()) {
                out.trailingStanding = true;
            } else {
                throw ParseError("'...' must follow an elimination or end the pattern");
            }
        }
    }
    return out;
}

PatternDiff comparePattern(const PatternString& rendered, const std::string& expected) {
    PatternString want = parsePattern(expected);
    size_t n = std::min(rendered.tokens.size(), want.tokens.size());
    for (size_t i = 0; i < n; ++i) {
        if (rendered.tokens[i].kind != want.tokens[i].kind) {
            return {false, static_cast<int>(i),
                    std::string("token ") + std::to_string(i + 1) + ": got '" +
                        tokenText(rendered.tokens[i].kind) + "', expected '" +
                        tokenText(want.tokens[i].kind) + "'"};
        }
    }
    if (rendered.tokens.size() != want.tokens.size()) {
        return {false, static_cast<int>(n),
                "length " + std::to_string(rendered.tokens.size()) + " vs expected " +
                    std::to_string(want.tokens.size())};
    }
    if (rendered.trailingStanding != want.trailingStanding) {
        return {false, static_cast<int>(n),
                rendered.trailingStanding ? "unexpected trailing '...'"
                                          : "missing trailing '...'"};
    }
    return {true, -1, "match"};
}

} // namespace stv
