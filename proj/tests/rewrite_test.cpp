#include "doctest.h"
#include "lineal/parse.hpp"
#include "lineal/rewrite.hpp"

using namespace lineal;

namespace {

Scalar q(long num, long den = 1) { return Scalar(Scalar::Int(num), Scalar::Int(den)); }

TermPtr y_comb() { return parse_term("\\y. ((\\x. (y + x x)) (\\x. (y + x x)))"); }

bool has_rule_at_root(const std::vector<Redex>& rs, RuleId rule) {
    for (const auto& r : rs)
        if (r.pos.empty() && r.rule == rule) return true;
    return false;
}

// The barycentric example: f applied to 1/2.(true+false), erased spelling.
SourceFile barycentric_example() {
    return parse_source(
        "let true = \\x. \\y. x ;\n"
        "let false = \\x. \\y. y ;\n"
        "let f = \\x. ((x (1/2.(true + false))) (1/4.true + 3/4.false)) ;\n"
        "f (1/2.(true + false))\n");
}

}  // namespace

TEST_CASE("factorisation fires on closed normal bodies") {
    auto t = parse_term("3.(\\z. z) - 3.(\\z. z)");
    auto rs = applicable_redexes(t, Mode::Restricted);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].pos.empty());
    CHECK(rs[0].rule == RuleId::F1);
}

TEST_CASE("factorisation is blocked on non-normal or open bodies") {
    // (Y b) with b free: not closed, F-rules blocked at the root.
    auto t = parse_term("(\\y. ((\\x. (y + x x)) (\\x. (y + x x)))) b - (\\y. ((\\x. (y + x x)) (\\x. (y + x x)))) b");
    auto rs = applicable_redexes(t, Mode::Restricted);
    CHECK_FALSE(has_rule_at_root(rs, RuleId::F1));
    CHECK_FALSE(has_rule_at_root(rs, RuleId::F2));
    CHECK_FALSE(has_rule_at_root(rs, RuleId::F3));

    // closed but not normal: 3.(Y (\z. z)) - 3.(Y (\z. z))
    auto u = mk_sum({mk_scale(q(3), mk_app(y_comb(), parse_term("\\z. z"))),
                     mk_scale(q(-3), mk_app(y_comb(), parse_term("\\z. z")))});
    auto rsu = applicable_redexes(u, Mode::Restricted);
    CHECK_FALSE(has_rule_at_root(rsu, RuleId::F1));
    // the same pair factors once the restrictions are dropped
    auto rsu2 = applicable_redexes(u, Mode::Unrestricted);
    CHECK(has_rule_at_root(rsu2, RuleId::F1));
}

TEST_CASE("cancellation reduces to the null vector in two steps") {
    auto t = parse_term("3.(\\z. z) - 3.(\\z. z)");
    auto r = normalize(t, Mode::Unrestricted, 100000, true);
    CHECK(r.trace.fuel_used <= 2);
    CHECK(alpha_equal(r.term, mk_zero()));
    REQUIRE(r.trace.steps.size() == 2);
    CHECK(r.trace.steps[0].rule == RuleId::F1);
    CHECK(r.trace.steps[1].rule == RuleId::E2);
}

TEST_CASE("single steps match their rules") {
    CHECK(alpha_equal(step(parse_term("1.x"), {}, RuleId::E3, Mode::Restricted), parse_term("x")));
    CHECK(alpha_equal(step(parse_term("(\\x. \\y. x) b"), {}, RuleId::B, Mode::Restricted),
                      parse_term("\\y. b")));
    CHECK(alpha_equal(step(parse_term("2.(3.x)"), {}, RuleId::E5, Mode::Restricted), parse_term("6.x")));
    CHECK(alpha_equal(step(parse_term("2.(x + y)"), {}, RuleId::E6, Mode::Restricted),
                      parse_term("2.x + 2.y")));
    CHECK(alpha_equal(step(parse_term("x + 0"), {}, RuleId::E1, Mode::Restricted), parse_term("x")));
    CHECK(alpha_equal(step(parse_term("0.x"), {}, RuleId::E2, Mode::Restricted), mk_zero()));
    CHECK(alpha_equal(step(parse_term("2.0"), {}, RuleId::E4, Mode::Restricted), mk_zero()));
    CHECK(alpha_equal(step(parse_term("0 x"), {}, RuleId::A5, Mode::Restricted), mk_zero()));
    CHECK(alpha_equal(step(parse_term("x 0"), {}, RuleId::A6, Mode::Restricted), mk_zero()));
    CHECK(alpha_equal(step(parse_term("((\\x. x) + (\\x. \\y. y)) u"), {}, RuleId::A1, Mode::Restricted),
                      parse_term("(\\x. x) u + (\\x. \\y. y) u")));
    CHECK(alpha_equal(step(parse_term("u ((\\x. x) + (\\x. \\y. y))"), {}, RuleId::A2, Mode::Restricted),
                      parse_term("u (\\x. x) + u (\\x. \\y. y)")));
    CHECK(alpha_equal(step(parse_term("(2.(\\x. x)) r"), {}, RuleId::A3, Mode::Restricted),
                      parse_term("2.((\\x. x) r)")));
    CHECK(alpha_equal(step(parse_term("r (2.(\\x. x))"), {}, RuleId::A4, Mode::Restricted),
                      parse_term("2.(r (\\x. x))")));
    CHECK(alpha_equal(step(parse_term("2.x + 3.x"), {}, RuleId::F1, Mode::Unrestricted),
                      parse_term("5.x")));
    CHECK(alpha_equal(step(parse_term("2.x + x"), {}, RuleId::F2, Mode::Unrestricted),
                      parse_term("3.x")));
    CHECK(alpha_equal(step(parse_term("x + x"), {}, RuleId::F3, Mode::Unrestricted), parse_term("2.x")));
    CHECK_THROWS_AS(step(parse_term("x"), {}, RuleId::E3, Mode::Restricted), std::logic_error);
    // beta never fires on non-base arguments
    auto redexes = applicable_redexes(parse_term("(\\x. x) (2.y)"), Mode::Unrestricted);
    CHECK_FALSE(has_rule_at_root(redexes, RuleId::B));
}

TEST_CASE("normal forms") {
    CHECK(is_normal(parse_term("\\x. x"), Mode::Restricted));
    CHECK(is_normal(parse_term("x y"), Mode::Restricted));
    CHECK(is_normal(parse_term("x y"), Mode::Unrestricted));
    CHECK_FALSE(is_normal(parse_term("1.x"), Mode::Restricted));
    auto bary = parse_term("3/8.(\\x. \\y. x) + 5/8.(\\x. \\y. y)");
    CHECK(is_normal(bary, Mode::Restricted));
    CHECK(is_normal(bary, Mode::Unrestricted));
    // open factorisation candidates are normal only under the restrictions
    auto open_sum = parse_term("2.x + 3.x");
    CHECK(is_normal(open_sum, Mode::Restricted));
    CHECK_FALSE(is_normal(open_sum, Mode::Unrestricted));
}

TEST_CASE("the barycentric application reduces to 3/8.true + 5/8.false") {
    auto file = barycentric_example();
    auto r = normalize(file.main, Mode::Restricted, 100000);
    auto expected = parse_term("3/8.(\\x. \\y. x) + 5/8.(\\x. \\y. y)");
    CHECK(alpha_equal(r.term, expected));
    CHECK_FALSE(r.trace.fuel_exhausted);
    // identical result with the restrictions dropped
    auto r2 = normalize(file.main, Mode::Unrestricted, 100000);
    CHECK(alpha_equal(r2.term, expected));
    auto names = file.names();
    CHECK(print_term(r.term, &names) == "3/8.true + 5/8.false");
}

TEST_CASE("weights") {
    auto remark1 = parse_term("(2.(\\x. \\y. (1/4.x + 1/4.y)) z) w");
    CHECK(weight(remark1) == q(2));
    CHECK(weight(parse_term("x (1/2.y)")) == q(1, 2));
    CHECK(weight(mk_zero()) == Scalar::zero());
    CHECK(weight(parse_term("3/8.(\\x. \\y. x) + 5/8.(\\x. \\y. y)")) == q(1));
}

TEST_CASE("the Remark 1 term needs the unrestricted mode to finish") {
    auto t = parse_term("(2.(\\x. \\y. (1/4.x + 1/4.y)) z) w");
    auto r = normalize(t, Mode::Unrestricted, 100000);
    CHECK(alpha_equal(r.term, parse_term("1/2.z + 1/2.w")));
    CHECK(weight(r.term) == q(1));
    // restricted mode stalls against the open subterms
    auto rr = normalize(t, Mode::Restricted, 100000);
    CHECK_FALSE(rr.trace.fuel_exhausted);
    CHECK_FALSE(alpha_equal(rr.term, parse_term("1/2.z + 1/2.w")));
}

TEST_CASE("the fixed point combinator runs forever") {
    auto t = mk_app(y_comb(), mk_var("b"));
    auto r = normalize(t, Mode::Restricted, 50, true);
    CHECK(r.trace.fuel_exhausted);
    CHECK(r.trace.fuel_used == 50);
    // after two steps the unfolding has produced b + (Y b)'s unfolding
    auto two = normalize(t, Mode::Restricted, 2, true);
    const auto* s = std::get_if<Sum>(&two.term->node());
    REQUIRE(s);
    bool has_b = false;
    for (const auto& a : s->addends) has_b = has_b || alpha_equal(a, mk_var("b"));
    CHECK(has_b);
}

TEST_CASE("traces replay") {
    auto file = barycentric_example();
    auto r = normalize(file.main, Mode::Restricted, 100000, true);
    TermPtr cur = file.main;
    for (const auto& st : r.trace.steps) {
        cur = step(cur, st.pos, st.rule, Mode::Restricted);
        CHECK(alpha_equal(cur, st.result));
    }
    CHECK(alpha_equal(cur, r.term));
    CHECK(static_cast<long>(r.trace.steps.size()) == r.trace.fuel_used);
}

TEST_CASE("trace format") {
    auto r = normalize(parse_term("1.(2.x)"), Mode::Restricted, 10, true);
    auto text = print_trace(r.trace);
    CHECK(text == "STEP 1 @- E3 => 2.x\n");
}

TEST_CASE("decomposition of closed normal forms") {
    auto bary = parse_term("3/8.(\\x. \\y. x) + 5/8.(\\x. \\y. y)");
    auto parts = decompose_normal(bary);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == q(3, 8));
    CHECK(alpha_equal(parts[0].second, parse_term("\\x. \\y. x")));
    CHECK(parts[1].first == q(5, 8));

    auto id = parse_term("\\x. x");
    auto single = decompose_normal(id);
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == q(1));

    CHECK(decompose_normal(mk_zero()).empty());
    CHECK_THROWS_AS(decompose_normal(parse_term("x y")), NotInCanonicalVectorForm);

    // mixed bare and scaled abstractions
    auto mixed = parse_term("(\\x. x) + 2.(\\x. \\y. x)");
    auto mp = decompose_normal(mixed);
    REQUIRE(mp.size() == 2);
}

TEST_CASE("redex enumeration order is outermost-leftmost") {
    auto t = parse_term("1.((\\x. x x) b)");
    auto rs = applicable_redexes(t, Mode::Restricted);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].pos.empty());
    CHECK(rs[0].rule == RuleId::E3);
    CHECK(rs[1].pos == Path{0});
    CHECK(rs[1].rule == RuleId::B);
}

TEST_CASE("variable-headed applications head normal spines") {
    // every normal application has a variable at the head of its spine
    auto check_spine = [](const TermPtr& t) {
        const auto* app = std::get_if<App>(&t->node());
        REQUIRE(app);
        TermPtr head = app->fun;
        while (const auto* inner = std::get_if<App>(&head->node())) head = inner->fun;
        CHECK(std::holds_alternative<Var>(head->node()));
    };
    for (const char* s : {"x y", "(x y) z", "(x (\\q. q)) (2.w)"}) {
        auto t = parse_term(s);
        if (is_normal(t, Mode::Unrestricted)) check_spine(t);
    }
}
