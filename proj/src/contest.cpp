#include "stv/contest.hpp"

#include "stv/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace stv {

void Contest::finalize() {
    candidateIdx_.clear();
    declaredGroupIdx_.clear();

    if (candidates.empty()) {
        throw SemanticError("empty_candidates: contest has no candidates");
    }
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].empty()) {
            throw SemanticError("empty_candidate_id: candidate " + std::to_string(i));
        }
        if (!candidateIdx_.emplace(candidates[i], static_cast<int>(i)).second) {
            throw SemanticError("duplicate_candidate: " + candidates[i]);
        }
    }
    if (seats < 1 || seats >= candidateCount()) {
        throw SemanticError("seats_out_of_range: " + std::to_string(seats) + " seats for " +
                            std::to_string(candidates.size()) + " candidates");
    }

    // Drop synthetic groups from a previous finalize so the call is idempotent.
    groups.erase(std::remove_if(groups.begin(), groups.end(),
                                [](const Group& g) { return g.synthetic; }),
                 groups.end());

    groupOfCandidate_.assign(candidates.size(), -1);
    posInGroup_.assign(candidates.size(), -1);
    declaredGroups_ = static_cast<long long>(groups.size());

    for (size_t g = 0; g < groups.size(); ++g) {
        const Group& grp = groups[g];
        if (grp.id.empty()) {
            throw SemanticError("empty_group_id: group " + std::to_string(g));
        }
        if (!declaredGroupIdx_.emplace(grp.id, static_cast<int>(g)).second) {
            throw SemanticError("duplicate_group: " + grp.id);
        }
        if (grp.members.empty()) {
            throw SemanticError("empty_group: " + grp.id);
        }
        for (size_t p = 0; p < grp.members.size(); ++p) {
            auto it = candidateIdx_.find(grp.members[p]);
            if (it == candidateIdx_.end()) {
                throw SemanticError("unknown_group_member: " + grp.members[p] + " in group " + grp.id);
            }
            int c = it->second;
            if (groupOfCandidate_[static_cast<size_t>(c)] != -1) {
                throw SemanticError("candidate_in_multiple_groups: " + grp.members[p]);
            }
            groupOfCandidate_[static_cast<size_t>(c)] = static_cast<int>(g);
            posInGroup_[static_cast<size_t>(c)] = static_cast<int>(p);
        }
    }

    // Ungrouped candidates become singleton groups named after the candidate.
    for (size_t c = 0; c < candidates.size(); ++c) {
        if (groupOfCandidate_[c] != -1) continue;
        Group g;
        g.id = candidates[c];
        g.members = {candidates[c]};
        g.synthetic = true;
        if (declaredGroupIdx_.count(g.id) != 0) {
            throw SemanticError("group_id_collides_with_candidate: " + g.id);
        }
        groupOfCandidate_[c] = static_cast<int>(groups.size());
        posInGroup_[c] = 0;
        groups.push_back(std::move(g));
    }
}

int Contest::candidateIndex(const std::string& id) const {
    auto it = candidateIdx_.find(id);
    return it == candidateIdx_.end() ? -1 : it->second;
}

int Contest::declaredGroupIndex(const std::string& id) const {
    auto it = declaredGroupIdx_.find(id);
    return it == declaredGroupIdx_.end() ? -1 : it->second;
}

Quota droopQuota(long long totalBallots, long long seats) {
    if (seats < 1) {
        throw SemanticError("seats_out_of_range: quota needs at least one seat");
    }
    if (totalBallots < 0) {
        throw SemanticError("negative_ballot_count: " + std::to_string(totalBallots));
    }
    return Quota{totalBallots / (seats + 1) + 1};
}

std::vector<std::string> expandAtl(const Ballot& ballot, const Contest& contest) {
    if (ballot.kind != BallotKind::Atl) {
        throw SemanticError("wrong_ballot_kind: expandAtl expects an ATL ballot");
    }
    std::vector<std::string> out;
    for (const std::string& gid : ballot.prefs) {
        int g = contest.declaredGroupIndex(gid);
        if (g < 0) {
            throw SemanticError("unknown_group: " + gid);
        }
        const Group& grp = contest.group(g);
        out.insert(out.end(), grp.members.begin(), grp.members.end());
    }
    return out;
}

std::vector<Violation> validateBallot(const Ballot& ballot, const Contest& contest) {
    std::vector<Violation> out;
    if (ballot.prefs.empty()) {
        out.push_back({"empty preferences", ""});
    }
    if (ballot.multiplicity < 1) {
        out.push_back({"bad multiplicity", std::to_string(ballot.multiplicity)});
    }
    std::unordered_set<std::string> seen;
    for (const std::string& id : ballot.prefs) {
        if (!seen.insert(id).second) {
            out.push_back({"duplicate preference", id});
        }
        if (ballot.kind == BallotKind::Atl) {
            if (contest.declaredGroupIndex(id) < 0) {
                out.push_back({"unknown group", id});
            }
        } else if (contest.candidateIndex(id) < 0) {
            out.push_back({"unknown candidate", id});
        }
    }
    return out;
}

} // namespace stv
