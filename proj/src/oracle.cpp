#include "stv/oracle.hpp"

#include "stv/errors.hpp"
#include "stv/tabulation.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace stv {

namespace {

// All arrangements (ordered selections, any length including empty) of the
// given ids, by length then lexicographic in input order.
std::vector<std::vector<std::string>> arrangements(const std::vector<std::string>& ids) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> current;
    std::vector<bool> used(ids.size(), false);

    std::function<void(size_t)> rec = [&](size_t len) {
        if (current.size() == len) {
            out.push_back(current);
            return;
        }
        for (size_t i = 0; i < ids.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            current.push_back(ids[i]);
            rec(len);
            current.pop_back();
            used[i] = false;
        }
    };
    for (size_t len = 0; len <= ids.size(); ++len) rec(len);
    return out;
}

struct Pile {
    Ballot base;                                   // kind, first preference, multiplicity
    std::vector<std::vector<std::string>> continuations; // appended to base.prefs
};

std::vector<Pile> buildPiles(const CompletionSpace& space) {
    const Contest& contest = space.contest;
    if (space.summary.entries.size() != static_cast<size_t>(contest.candidateCount())) {
        throw SemanticError("summary_mismatch: summary does not cover the contest");
    }

    std::vector<Pile> piles;
    for (const FirstPrefEntry& e : space.summary.entries) {
        int c = contest.candidateIndex(e.candidate);
        if (c < 0) {
            throw SemanticError("unknown_candidate: " + e.candidate);
        }
        if (e.atlPapers > 0) {
            int g = contest.groupOf(c);
            const Group& grp = contest.group(g);
            if (grp.synthetic || grp.members.front() != e.candidate) {
                throw SemanticError("atl_papers_without_group_lead: " + e.candidate);
            }
            std::vector<std::string> otherGroups;
            for (long long gi = 0; gi < contest.declaredGroupCount(); ++gi) {
                if (gi != g) otherGroups.push_back(contest.group(static_cast<int>(gi)).id);
            }
            Pile p;
            p.base.kind = BallotKind::Atl;
            p.base.prefs = {grp.id};
            p.base.multiplicity = e.atlPapers;
            p.continuations = arrangements(otherGroups);
            piles.push_back(std::move(p));
        }
        if (e.btlPapers > 0) {
            std::vector<std::string> others;
            for (const std::string& id : contest.candidates) {
                if (id != e.candidate) others.push_back(id);
            }
            Pile p;
            p.base.kind = BallotKind::Btl;
            p.base.prefs = {e.candidate};
            p.base.multiplicity = e.btlPapers;
            p.continuations = arrangements(others);
            piles.push_back(std::move(p));
        }
    }
    return piles;
}

BigInt completionProduct(const std::vector<Pile>& piles) {
    BigInt n = 1;
    for (const Pile& p : piles) n *= static_cast<unsigned long>(p.continuations.size());
    return n;
}

} // namespace

BigInt countCompletions(const CompletionSpace& space) {
    return completionProduct(buildPiles(space));
}

long long enumerateCompletions(const CompletionSpace& space,
                               const std::function<bool(const std::vector<Ballot>&)>& fn) {
    if (space.contest.candidateCount() > space.limits.maxCandidates) {
        throw RefusalError("refused: " + std::to_string(space.contest.candidateCount()) +
                           " candidates exceed the limit of " +
                           std::to_string(space.limits.maxCandidates));
    }
    std::vector<Pile> piles = buildPiles(space);
    BigInt total = completionProduct(piles);
    if (total > toBigInt(space.limits.maxCompletions)) {
        throw RefusalError("refused: " + total.get_str() +
                           " completions exceed the limit of " +
                           std::to_string(space.limits.maxCompletions) +
                           " (raise --max-completions to proceed)");
    }

    std::vector<size_t> choice(piles.size(), 0);
    std::vector<Ballot> ballots(piles.size());
    long long visited = 0;
    bool done = false;

    while (true) {
        for (size_t i = 0; i < piles.size(); ++i) {
            Ballot b = piles[i].base;
            const auto& cont = piles[i].continuations[choice[i]];
            b.prefs.insert(b.prefs.end(), cont.begin(), cont.end());
            ballots[i] = std::move(b);
        }
        ++visited;
        if (!fn(ballots)) break;
        // Advance the mixed-radix counter, least significant pile last.
        size_t i = piles.size();
        while (i > 0) {
            --i;
            if (++choice[i] < piles[i].continuations.size()) break;
            choice[i] = 0;
            if (i == 0) done = true;
        }
        if (piles.empty() || done) break;
    }
    return visited;
}

Verdict verifyGuarantees(const CompletionSpace& space,
                         const std::vector<std::string>& guaranteed) {
    Verdict verdict;
    for (const std::string& id : guaranteed) {
        if (space.contest.candidateIndex(id) < 0) {
            throw SemanticError("unknown_candidate: " + id);
        }
    }
    if (guaranteed.empty()) {
        verdict.confirmed = true;
        verdict.completions = 0;
        return verdict;
    }

    long long visited = enumerateCompletions(space, [&](const std::vector<Ballot>& ballots) {
        CountLog log = tabulate(space.contest, ballots);
        std::set<std::string> seated(log.seatedOrder.begin(), log.seatedOrder.end());
        for (const std::string& id : guaranteed) {
            if (seated.count(id) == 0) {
                verdict.violatedCandidate = id;
                verdict.counterexample = ballots;
                verdict.seatedOrder = log.seatedOrder;
                return false;
            }
        }
        return true;
    });
    verdict.completions = visited;
    verdict.confirmed = verdict.violatedCandidate.empty();
    return verdict;
}

Verdict verifyGuarantees(const CompletionSpace& space, const GuaranteeReport& report) {
    return verifyGuarantees(space, report.guaranteedCandidates());
}

std::string writeVerdict(const Verdict& verdict) {
    nlohmann::ordered_json j;
    j["schema"] = "stv-verdict/1";
    j["verdict"] = verdict.confirmed ? "confirmed" : "counterexample";
    j["completions"] = verdict.completions;
    if (!verdict.confirmed) {
        j["violatedCandidate"] = verdict.violatedCandidate;
        j["seated"] = verdict.seatedOrder;
        nlohmann::ordered_json ballots = nlohmann::ordered_json::array();
        for (const Ballot& b : verdict.counterexample) {
            ballots.push_back(nlohmann::ordered_json{
                {"kind", b.kind == BallotKind::Atl ? "ATL" : "BTL"},
                {"prefs", b.prefs},
                {"multiplicity", b.multiplicity},
            });
        }
        j["counterexample"] = std::move(ballots);
    }
    return j.dump(2) + "\n";
}

} // namespace stv
