#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace stv {

// A column on the ballot paper: an ordered run of candidates, top first.
// Ungrouped candidates are wrapped in synthetic singleton groups so that
// "last candidate in their group" logic is uniform everywhere.
struct Group {
    std::string id;
    std::vector<std::string> members;
    bool synthetic = false;

    bool operator==(const Group&) const = default;
};

enum class BallotKind { Atl, Btl };

// One class of identical ballot papers. ATL prefs rank declared groups,
// BTL prefs rank candidates directly.
struct Ballot {
    BallotKind kind = BallotKind::Btl;
    std::vector<std::string> prefs;
    long long multiplicity = 1;

    bool operator==(const Ballot&) const = default;
};

struct Quota {
    long long votes = 0;

    bool operator==(const Quota&) const = default;
};

struct Contest {
    std::string name;
    long long seats = 0;
    std::vector<std::string> candidates; // ballot-paper order
    std::vector<Group> groups;           // declared groups first, then synthetic singletons

    // Builds lookup tables and synthesizes singleton groups for candidates not
    // covered by a declared group. Throws SemanticError on invariant breaches
    // (duplicate ids, unknown members, candidate in two groups, seat range).
    void finalize();

    int candidateCount() const { return static_cast<int>(candidates.size()); }
    int candidateIndex(const std::string& id) const; // -1 when unknown
    int declaredGroupIndex(const std::string& id) const; // -1; synthetic groups excluded
    int groupOf(int candidate) const { return groupOfCandidate_[static_cast<size_t>(candidate)]; }
    int positionInGroup(int candidate) const { return posInGroup_[static_cast<size_t>(candidate)]; }
    const Group& group(int g) const { return groups[static_cast<size_t>(g)]; }
    long long declaredGroupCount() const { return declaredGroups_; }

    bool operator==(const Contest& o) const {
        return name == o.name && seats == o.seats && candidates == o.candidates && groups == o.groups;
    }

private:
    std::unordered_map<std::string, int> candidateIdx_;
    std::unordered_map<std::string, int> declaredGroupIdx_;
    std::vector<int> groupOfCandidate_;
    std::vector<int> posInGroup_;
    long long declaredGroups_ = 0;
};

// floor(totalBallots / (seats + 1)) + 1
Quota droopQuota(long long totalBallots, long long seats);

// Flattens an ATL group ranking into the candidate ranking used for counting.
// Throws SemanticError for unknown group ids or a non-ATL ballot.
std::vector<std::string> expandAtl(const Ballot& ballot, const Contest& contest);

struct Violation {
    std::string code;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

// Structural checks only (ids known, no duplicates, prefs nonempty,
// multiplicity positive). Statutory formality rules are out of scope.
std::vector<Violation> validateBallot(const Ballot& ballot, const Contest& contest);

} // namespace stv
