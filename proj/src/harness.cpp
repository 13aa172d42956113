#include "lineal/harness.hpp"

#include <deque>
#include <unordered_set>

#include "lineal/parse.hpp"
#include "lineal/transport.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lineal {

const char* suite_name_str(SuiteName s) {
    switch (s) {
        case SuiteName::SubjectReduction: return "subject-reduction";
        case SuiteName::Sn: return "sn";
        case SuiteName::Confluence: return "confluence";
        case SuiteName::Weight1: return "weight1";
        case SuiteName::Correspondence: return "correspondence";
        case SuiteName::Uniqueness: return "uniqueness";
    }
    return "?";
}

std::optional<SuiteName> parse_suite_name(std::string_view s) {
    for (SuiteName n : {SuiteName::SubjectReduction, SuiteName::Sn, SuiteName::Confluence,
                        SuiteName::Weight1, SuiteName::Correspondence, SuiteName::Uniqueness})
        if (s == suite_name_str(n)) return n;
    return std::nullopt;
}

int SuiteReport::count(CaseStatus s) const {
    int n = 0;
    for (const auto& r : results) n += r.status == s;
    return n;
}

std::string SuiteReport::to_text() const {
    std::string out;
    for (size_t i = 0; i < results.size(); ++i) {
        out += "CASE " + std::to_string(i) + " ";
        switch (results[i].status) {
            case CaseStatus::Pass: out += "PASS"; break;
            case CaseStatus::Fail: out += "FAIL"; break;
            case CaseStatus::Inconclusive: out += "INCONCLUSIVE"; break;
        }
        if (!results[i].detail.empty()) out += " " + results[i].detail;
        out += '\n';
    }
    out += "SUITE " + std::string(suite_name_str(name)) + " cases=" + std::to_string(results.size()) +
           " pass=" + std::to_string(count(CaseStatus::Pass)) +
           " fail=" + std::to_string(count(CaseStatus::Fail)) +
           " inconclusive=" + std::to_string(count(CaseStatus::Inconclusive)) +
           " seed=" + std::to_string(opts.gen.seed) + '\n';
    return out;
}

Joinability join_status(const TermPtr& a, const TermPtr& b, Mode mode, int depth, size_t max_nodes) {
    if (alpha_equal(a, b)) return Joinability::Joinable;
    std::unordered_set<std::string> seen_a{canonical_key(a)}, seen_b{canonical_key(b)};
    std::deque<TermPtr> frontier_a{a}, frontier_b{b};
    bool capped = false;

    auto expand = [&](std::deque<TermPtr>& frontier, std::unordered_set<std::string>& seen,
                      const std::unordered_set<std::string>& other) -> std::optional<Joinability> {
        std::deque<TermPtr> next;
        for (const auto& t : frontier) {
            for (const auto& r : applicable_redexes(t, mode)) {
                TermPtr u = step(t, r.pos, r.rule, mode);
                auto key = canonical_key(u);
                if (!seen.insert(key).second) continue;
                if (other.count(key)) return Joinability::Joinable;
                next.push_back(std::move(u));
                if (seen.size() > max_nodes) {
                    capped = true;
                    next.clear();
                    break;
                }
            }
            if (capped) break;
        }
        frontier = std::move(next);
        return std::nullopt;
    };

    for (int d = 0; d < depth; ++d) {
        if (frontier_a.empty() && frontier_b.empty()) break;
        if (auto r = expand(frontier_a, seen_a, seen_b)) return *r;
        if (auto r = expand(frontier_b, seen_b, seen_a)) return *r;
    }
    if (capped || !frontier_a.empty() || !frontier_b.empty()) return Joinability::Inconclusive;
    return Joinability::NotJoinable;
}

bool joinable(const TermPtr& a, const TermPtr& b, Mode mode, int depth) {
    return join_status(a, b, mode, depth) == Joinability::Joinable;
}

namespace {

// All terms reachable by deleting a single node (replacing it by one of its
// children, or removing one addend of a sum).
void deletions_at(const TermPtr& root, const Path& pos, const TermPtr& node,
                  std::vector<TermPtr>& out) {
    auto replace = [&](const TermPtr& repl) {
        if (pos.empty()) {
            out.push_back(repl);
            return;
        }
        // rebuild along the path
        std::function<TermPtr(const TermPtr&, size_t)> rec = [&](const TermPtr& t, size_t i) -> TermPtr {
            if (i == pos.size()) return repl;
            return with_child(t, pos[i], rec(child(t, pos[i]), i + 1));
        };
        out.push_back(rec(root, 0));
    };
    if (const auto* s = std::get_if<Sum>(&node->node())) {
        for (size_t i = 0; i < s->addends.size(); ++i) {
            std::vector<TermPtr> rest;
            for (size_t k = 0; k < s->addends.size(); ++k)
                if (k != i) rest.push_back(s->addends[k]);
            replace(mk_sum(std::move(rest)));
        }
        return;
    }
    for (int i = 0; i < child_count(node); ++i) replace(child(node, i));
}

void all_deletions(const TermPtr& root, const TermPtr& node, Path& pos, std::vector<TermPtr>& out) {
    deletions_at(root, pos, node, out);
    for (int i = 0; i < child_count(node); ++i) {
        pos.push_back(i);
        all_deletions(root, child(node, i), pos, out);
        pos.pop_back();
    }
}

}  // namespace

TermPtr shrink_counterexample(const TermPtr& t, const std::function<bool(const TermPtr&)>& fails) {
    TermPtr cur = t;
    for (;;) {
        std::vector<TermPtr> candidates;
        Path pos;
        all_deletions(cur, cur, pos, candidates);
        bool advanced = false;
        for (const auto& c : candidates) {
            bool still = false;
            try {
                still = fails(c);
            } catch (...) {
                still = false;
            }
            if (still) {
                cur = c;
                advanced = true;
                break;
            }
        }
        if (!advanced) return cur;
    }
}

namespace {

std::string status_of_type(const CanonicalType& c) { return print_type(readback(c)); }

// --- per-suite case runners -----------------------------------------------

CaseResult sr_case(const SuiteOptions& opts, int index) {
    Rng rng(mix_seed(opts.gen.seed, static_cast<uint64_t>(index)));
    auto gen = gen_typed_term(opts.gen, rng);
    Context empty;
    CanonicalType expected;
    try {
        expected = infer_scalar(empty, gen.term).type;
    } catch (const TypeError& e) {
        return {CaseStatus::Fail, "generator produced an ill-typed term: " + std::string(e.what()) +
                                      " term=" + print_term(gen.term)};
    }
    if (!canonical_equal(expected, gen.type))
        return {CaseStatus::Fail, "generator type disagrees with the checker on " + print_term(gen.term)};

    TermPtr ta = admin_normalize(gen.term);
    try {
        if (!canonical_equal(infer_scalar(empty, ta).type, expected))
            return {CaseStatus::Fail, "administrative normalization changed the type of " +
                                          print_term(gen.term)};
    } catch (const TypeError& e) {
        return {CaseStatus::Fail,
                "administrative normal form ill-typed: " + std::string(e.what())};
    }

    auto fails_sr = [&](const TermPtr& candidate) {
        CanonicalType ty;
        try {
            ty = infer_scalar(Context{}, candidate).type;
        } catch (const TypeError&) {
            return false;  // shrunken candidates must stay well-typed
        }
        TermPtr cand_admin = admin_normalize(candidate);
        for (const auto& r : annotated_redexes(cand_admin, Mode::Unrestricted)) {
            TermPtr reduct = annotated_step(cand_admin, r, Mode::Unrestricted);
            try {
                if (!canonical_equal(infer_scalar(Context{}, reduct).type, ty)) return true;
            } catch (const TypeError&) {
                return true;
            }
        }
        return false;
    };

    auto redexes = annotated_redexes(ta, Mode::Unrestricted);
    std::vector<TermPtr> reduct_erasures;
    for (const auto& r : redexes) {
        TermPtr reduct = annotated_step(ta, r, Mode::Unrestricted);
        reduct_erasures.push_back(erase(reduct));
        CanonicalType ty;
        try {
            ty = infer_scalar(empty, reduct).type;
        } catch (const TypeError& e) {
            auto shrunk = shrink_counterexample(gen.term, fails_sr);
            return {CaseStatus::Fail, "reduct fails to re-type: " + std::string(e.what()) +
                                          " counterexample=" + print_term(shrunk)};
        }
        if (!canonical_equal(ty, expected)) {
            auto shrunk = shrink_counterexample(gen.term, fails_sr);
            return {CaseStatus::Fail, "type not preserved: " + status_of_type(expected) + " vs " +
                                          status_of_type(ty) + " counterexample=" + print_term(shrunk)};
        }
    }

    // every redex of the erasure must be covered by an annotated reduct
    TermPtr erased = erase(ta);
    auto erased_redexes = applicable_redexes(erased, Mode::Unrestricted);
    for (const auto& r : erased_redexes) {
        TermPtr e = step(erased, r.pos, r.rule, Mode::Unrestricted);
        bool covered = false;
        for (const auto& re : reduct_erasures)
            if (alpha_equal(re, e)) {
                covered = true;
                break;
            }
        if (!covered)
            return {CaseStatus::Fail, "transport missed the erased reduct " + print_term(e) + " of " +
                                          print_term(erased)};
    }
    return {CaseStatus::Pass, "reducts=" + std::to_string(redexes.size())};
}

// Shape of stuck applications in a normal form: the function side is a
// variable, a further application, or an abstraction whose argument is
// itself a stuck application (beta only fires on base arguments; sums,
// scalings and zero arguments unblock an A-rule). Anything else means the
// redex enumeration missed a rule.
bool stuck_applications_ok(const TermPtr& t) {
    if (const auto* a = std::get_if<App>(&t->node())) {
        bool fun_ok = std::holds_alternative<Var>(a->fun->node()) ||
                      std::holds_alternative<App>(a->fun->node()) ||
                      (std::holds_alternative<Abs>(a->fun->node()) &&
                       std::holds_alternative<App>(a->arg->node()));
        if (!fun_ok) return false;
    }
    for (int i = 0; i < child_count(t); ++i)
        if (!stuck_applications_ok(child(t, i))) return false;
    return true;
}

CaseResult sn_case(const SuiteOptions& opts, int index) {
    Rng rng(mix_seed(opts.gen.seed, static_cast<uint64_t>(index)));
    auto gen = gen_typed_term(opts.gen, rng);
    auto r = normalize(erase(gen.term), Mode::Unrestricted, opts.gen.fuel, false);
    if (r.trace.fuel_exhausted)
        return {CaseStatus::Fail, "fuel exhausted on " + print_term(gen.term)};
    if (!is_normal(r.term, Mode::Unrestricted))
        return {CaseStatus::Fail, "normalize returned a reducible term"};
    if (!stuck_applications_ok(r.term))
        return {CaseStatus::Fail, "normal form has an ill-shaped application: " + print_term(r.term)};
    return {CaseStatus::Pass, "steps=" + std::to_string(r.trace.fuel_used)};
}

CaseResult confluence_case(const SuiteOptions& opts, int index) {
    Rng rng(mix_seed(opts.gen.seed, static_cast<uint64_t>(index)));
    // seeded corpus first, generated terms afterwards
    static const char* corpus[] = {
        "\\y. ((\\x. (y + x x)) (\\x. (y + x x)))",
        "(\\y. ((\\x. (y + x x)) (\\x. (y + x x)))) b",
        "(\\x. ((x (1/2.((\\q. \\r. q) + (\\q. \\r. r)))) (1/4.(\\q. \\r. q) + 3/4.(\\q. \\r. r)))) "
        "(1/2.((\\q. \\r. q) + (\\q. \\r. r)))",
        "(2.(\\x. \\y. (1/4.x + 1/4.y)) z) w",
    };
    TermPtr t;
    if (index < 4) {
        t = parse_term(corpus[index]);
    } else {
        GenConfig small = opts.gen;
        small.max_term_size = std::min(opts.gen.max_term_size, 12);
        t = gen_untyped_term(small, rng);
    }
    auto redexes = applicable_redexes(t, Mode::Restricted);
    size_t pairs = 0, inconclusive = 0;
    for (size_t i = 0; i < redexes.size() && pairs < 10; ++i) {
        for (size_t j = i + 1; j < redexes.size() && pairs < 10; ++j) {
            TermPtr a = step(t, redexes[i].pos, redexes[i].rule, Mode::Restricted);
            TermPtr b = step(t, redexes[j].pos, redexes[j].rule, Mode::Restricted);
            ++pairs;
            switch (join_status(a, b, Mode::Restricted, opts.join_depth)) {
                case Joinability::Joinable:
                    break;
                case Joinability::NotJoinable:
                    return {CaseStatus::Fail, "reducts of " + print_term(t) + " do not join: " +
                                                  print_term(a) + " vs " + print_term(b)};
                case Joinability::Inconclusive:
                    ++inconclusive;
                    break;
            }
        }
    }
    std::string detail = "pairs=" + std::to_string(pairs) + " inconclusive=" + std::to_string(inconclusive);
    if (inconclusive) return {CaseStatus::Inconclusive, detail};
    return {CaseStatus::Pass, detail};
}

CaseResult weight1_case(const SuiteOptions& opts, int index) {
    Rng rng(mix_seed(opts.gen.seed, static_cast<uint64_t>(index)));
    auto gen = gen_bary_term(opts.gen, rng);
    BaryResult bary;
    try {
        bary = check_barycentric(Context{}, gen.term);
    } catch (const TypeError& e) {
        return {CaseStatus::Fail, "generator produced a rejected term: " + std::string(e.what())};
    }
    if (!bary.ok)
        return {CaseStatus::Fail, "generator produced a non-barycentric term " + print_term(gen.term) +
                                      " : " + status_of_type(bary.type)};
    auto r = normalize(erase(gen.term), Mode::Unrestricted, opts.gen.fuel, false);
    if (r.trace.fuel_exhausted) return {CaseStatus::Fail, "fuel exhausted on " + print_term(gen.term)};
    if (!(weight(r.term) == Scalar::one()))
        return {CaseStatus::Fail, "normal form of " + print_term(gen.term) + " has weight " +
                                      print_scalar(weight(r.term))};
    try {
        auto parts = decompose_normal(r.term);
        Scalar total = Scalar::zero();
        for (const auto& [coeff, abs] : parts) total = total + coeff;
        if (!(total == Scalar::one()))
            return {CaseStatus::Fail, "decomposition weights sum to " + print_scalar(total)};
    } catch (const NotInCanonicalVectorForm& e) {
        return {CaseStatus::Fail, std::string("closed normal form fails to decompose: ") + e.what()};
    }

    // scaled variant: final type a.C predicts normal-form weight a
    long mag = std::max(1, opts.gen.max_scalar_magnitude);
    long num = rng.range(-mag, mag);
    if (num == 0) num = 3;
    Scalar a(Scalar::Int(num), Scalar::Int(rng.range(1, 4)));
    TermPtr scaled = mk_scale(a, gen.term);
    auto inferred = infer_scalar(Context{}, scaled).type;
    if (inferred.zero || !(inferred.coeff == a))
        return {CaseStatus::Fail, "scaled term has unexpected type " + status_of_type(inferred)};
    auto r2 = normalize(erase(scaled), Mode::Unrestricted, opts.gen.fuel, false);
    if (r2.trace.fuel_exhausted) return {CaseStatus::Fail, "fuel exhausted on the scaled variant"};
    if (!(weight(r2.term) == a))
        return {CaseStatus::Fail, "scaled normal form has weight " + print_scalar(weight(r2.term)) +
                                      ", expected " + print_scalar(a)};
    return {CaseStatus::Pass, "weight=1 scaled=" + print_scalar(a)};
}

CaseResult correspondence_case(const SuiteOptions& opts, int index) {
    Rng rng(mix_seed(opts.gen.seed, static_cast<uint64_t>(index)));
    auto gen = gen_typed_term(opts.gen, rng);
    try {
        if (!check_correspondence(Context{}, gen.term))
            return {CaseStatus::Fail, "forgotten judgement rejected for " + print_term(gen.term)};
    } catch (const TypeError& e) {
        return {CaseStatus::Fail, "scalar side rejected a generated term: " + std::string(e.what())};
    }
    return {CaseStatus::Pass, ""};
}

CaseResult uniqueness_case(const SuiteOptions& opts, int index) {
    Rng rng(mix_seed(opts.gen.seed, static_cast<uint64_t>(index)));
    auto gen = gen_typed_term(opts.gen, rng);
    Context empty;
    auto first = infer_scalar(empty, gen.term);
    auto again = infer_scalar(empty, gen.term);
    if (!derivation_equal(first.deriv, again.deriv))
        return {CaseStatus::Fail, "checking is not deterministic on " + print_term(gen.term)};
    for (int k = 0; k < 3; ++k) {
        TermPtr variant = annotation_variant(gen.term, rng);
        if (!alpha_equal(erase(variant), erase(gen.term)))
            return {CaseStatus::Fail, "annotation variant changed the erasure"};
        CanonicalType ty;
        try {
            ty = infer_scalar(empty, variant).type;
        } catch (const TypeError& e) {
            return {CaseStatus::Fail, "variant rejected: " + std::string(e.what()) + " variant=" +
                                          print_term(variant)};
        }
        bool same_scalar = (ty.zero && first.type.zero) ||
                           (!ty.zero && !first.type.zero && ty.coeff == first.type.coeff);
        if (!same_scalar)
            return {CaseStatus::Fail, "outer scalar changed: " + status_of_type(first.type) + " vs " +
                                          status_of_type(ty) + " on " + print_term(variant)};
    }
    return {CaseStatus::Pass, ""};
}

CaseResult run_case(SuiteName name, const SuiteOptions& opts, int index) {
    try {
        switch (name) {
            case SuiteName::SubjectReduction: return sr_case(opts, index);
            case SuiteName::Sn: return sn_case(opts, index);
            case SuiteName::Confluence: return confluence_case(opts, index);
            case SuiteName::Weight1: return weight1_case(opts, index);
            case SuiteName::Correspondence: return correspondence_case(opts, index);
            case SuiteName::Uniqueness: return uniqueness_case(opts, index);
        }
        return {CaseStatus::Fail, "unknown suite"};
    } catch (const std::exception& e) {
        return {CaseStatus::Fail, std::string("exception: ") + e.what()};
    }
}

}  // namespace

SuiteReport run_suite(SuiteName name, const SuiteOptions& opts) {
    SuiteReport report;
    report.name = name;
    report.opts = opts;
    report.results.resize(static_cast<size_t>(opts.cases));
#ifdef _OPENMP
    int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (int i = 0; i < opts.cases; ++i)
        report.results[static_cast<size_t>(i)] = run_case(name, opts, i);
#else
    for (int i = 0; i < opts.cases; ++i)
        report.results[static_cast<size_t>(i)] = run_case(name, opts, i);
#endif
    return report;
}

}  // namespace lineal
