#pragma once

#include "stv/bounds.hpp"
#include "stv/tabulation.hpp"

#include <string>
#include <vector>

namespace stv {

// Count outcomes rendered as token strings: q (seated with a quota), s (seated
// without one), e (eliminated). Runs of two or more eliminations compress to
// "e ..."; a trailing "..." means candidates were still standing when the last
// seat was filled.

enum class TokenKind { Quota, NoQuota, Eliminated, Ellipsis };

struct PatternToken {
    TokenKind kind = TokenKind::Quota;
    int run = 1; // Ellipsis: how many eliminations it absorbed

    bool operator==(const PatternToken&) const = default;
};

struct PatternString {
    std::vector<PatternToken> tokens;
    int boldPrefix = 0; // leading guaranteed seatings
    bool trailingStanding = false;

    bool operator==(const PatternString&) const = default;
};

// Uncompressed q/s/e tokens, one per count event.
std::vector<PatternToken> rawEventTokens(const CountLog& log);

// A last-standing seating renders q when the candidate held a quota at the
// time. boldPrefix comes from the report when one is supplied.
PatternString renderPattern(const CountLog& log, const GuaranteeReport* report = nullptr);

// Ellipsis tokens expanded back into their elimination runs.
std::vector<PatternToken> expandTokens(const PatternString& pattern);

// "q q e ... s" plus a trailing "..." marker; annotated form brackets the
// guaranteed prefix: "[q q] e ... s".
std::string formatPattern(const PatternString& pattern, bool annotated = false);

// Accepts the same alphabet formatPattern emits (plus the typographic
// ellipsis) and optional prefix brackets. Throws ParseError.
PatternString parsePattern(const std::string& text);

struct PatternDiff {
    bool match = false;
    int tokenIndex = -1; // first differing token, or -1
    std::string description;
};

// Token-level comparison; ellipsis tokens match regardless of run length.
PatternDiff comparePattern(const PatternString& rendered, const std::string& expected);

} // namespace stv
