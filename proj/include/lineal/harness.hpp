#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lineal/gen.hpp"

namespace lineal {

enum class SuiteName { SubjectReduction, Sn, Confluence, Weight1, Correspondence, Uniqueness };

const char* suite_name_str(SuiteName s);
std::optional<SuiteName> parse_suite_name(std::string_view s);

struct SuiteOptions {
    GenConfig gen;
    int cases = 100;
    int join_depth = 6;
    int jobs = 0;  // 0: all available threads; 1: serial
};

enum class CaseStatus { Pass, Fail, Inconclusive };

struct CaseResult {
    CaseStatus status = CaseStatus::Pass;
    std::string detail;
};

struct SuiteReport {
    SuiteName name = SuiteName::Sn;
    SuiteOptions opts;
    std::vector<CaseResult> results;

    int count(CaseStatus s) const;
    bool ok() const { return count(CaseStatus::Fail) == 0; }
    // Line-oriented: CASE <i> <STATUS> [detail] per case plus a summary.
    std::string to_text() const;
};

// Runs every case (sharded across threads when OpenMP is available and
// jobs != 1); case i draws from seed mix(seed, i), so the report does not
// depend on the schedule.
SuiteReport run_suite(SuiteName name, const SuiteOptions& opts);

enum class Joinability { Joinable, NotJoinable, Inconclusive };

// Breadth-first expansion of both reduct sets up to the depth; Joinable on
// intersection, NotJoinable when both sides are exhausted without meeting,
// Inconclusive when the frontier outlives the depth or the node cap.
Joinability join_status(const TermPtr& a, const TermPtr& b, Mode mode, int depth,
                        size_t max_nodes = 20000);
bool joinable(const TermPtr& a, const TermPtr& b, Mode mode, int depth);

// Greedily applies single-node deletions (replacing a node by one child or
// dropping a sum addend) while the predicate keeps failing; the result is
// locally minimal.
TermPtr shrink_counterexample(const TermPtr& t, const std::function<bool(const TermPtr&)>& fails);

}  // namespace lineal
