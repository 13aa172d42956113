#include "doctest.h"
#include "lineal/parse.hpp"
#include "lineal/term.hpp"

#include <random>

using namespace lineal;

namespace {

Scalar q(long num, long den = 1) { return Scalar(Scalar::Int(num), Scalar::Int(den)); }

// The fixed-point combinator Y = \y. ((\x. (y + x x)) (\x. (y + x x))).
TermPtr y_combinator() { return parse_term("\\y. ((\\x. (y + x x)) (\\x. (y + x x)))"); }

TermPtr random_term(std::mt19937_64& rng, int depth, std::vector<std::string>& scope) {
    if (depth <= 0 || rng() % 6 == 0) {
        if (!scope.empty() && rng() % 4 != 0) return mk_var(scope[rng() % scope.size()]);
        switch (rng() % 3) {
            case 0: return mk_var("u");
            case 1: return mk_zero();
            default: return mk_var("w");
        }
    }
    switch (rng() % 5) {
        case 0: {
            std::string name(1, static_cast<char>('a' + rng() % 4));
            scope.push_back(name);
            auto body = random_term(rng, depth - 1, scope);
            scope.pop_back();
            return mk_abs(name, body);
        }
        case 1:
            return mk_app(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope));
        case 2: {
            long num = static_cast<long>(rng() % 9) - 4;
            return mk_scale(Scalar(Scalar::Int(num), Scalar::Int(static_cast<long>(rng() % 3) + 1)),
                            random_term(rng, depth - 1, scope));
        }
        case 3: {
            std::vector<TermPtr> addends;
            size_t n = 2 + rng() % 2;
            for (size_t i = 0; i < n; ++i) addends.push_back(random_term(rng, depth - 1, scope));
            return mk_sum(std::move(addends));
        }
        default:
            return random_term(rng, depth - 1, scope);
    }
}

}  // namespace

TEST_CASE("free variables") {
    CHECK(free_vars(parse_term("\\x. x y")) == std::set<std::string>{"y"});
    CHECK(free_vars(parse_term("2.x + 3.y")) == std::set<std::string>{"x", "y"});
    CHECK(free_vars(y_combinator()).empty());
    CHECK(is_closed(y_combinator()));
}

TEST_CASE("base and closed predicates") {
    CHECK(is_base(parse_term("\\x. x")));
    CHECK(is_base(parse_term("x")));
    CHECK_FALSE(is_base(parse_term("2.(\\x. x)")));
    CHECK_FALSE(is_base(parse_term("x + y")));
    CHECK_FALSE(is_base(mk_zero()));
    // erasure-respecting: a type abstraction over an abstraction is base
    CHECK(is_base(parse_term("/\\X. \\x:X. x")));
}

TEST_CASE("substitution distributes over sums and scaling") {
    auto b = parse_term("\\z. z");
    auto t = substitute(parse_term("2.x + 3.y"), "x", b);
    CHECK(alpha_equal(t, parse_term("2.(\\z. z) + 3.y")));
    CHECK(alpha_equal(substitute(parse_term("x"), "x", b), b));
    CHECK(alpha_equal(substitute(parse_term("\\x. x"), "x", b), parse_term("\\x. x")));
}

TEST_CASE("substitution avoids capture") {
    // (\y. x y)[y/x] must not capture the free y
    auto t = substitute(parse_term("\\y. x y"), "x", mk_var("y"));
    CHECK(alpha_equal(t, parse_term("\\w. y w")));
    CHECK(free_vars(t) == std::set<std::string>{"y"});
}

TEST_CASE("substitution only moves the expected free variables") {
    std::mt19937_64 rng(5);
    std::vector<std::string> scope;
    for (int i = 0; i < 300; ++i) {
        auto t = random_term(rng, 4, scope);
        auto b = rng() % 2 ? parse_term("\\z. z w") : mk_var("u");
        auto fv_before = free_vars(t);
        auto r = substitute(t, "a", b);
        auto expected = fv_before;
        if (expected.erase("a")) {
            auto bs = free_vars(b);
            expected.insert(bs.begin(), bs.end());
        }
        CHECK(free_vars(r) == expected);
    }
}

TEST_CASE("erasure drops annotations and type nodes") {
    CHECK(alpha_equal(erase(parse_term("/\\X. \\x:X. x")), parse_term("\\x. x")));
    CHECK(alpha_equal(erase(parse_term("(f [forall X. X -> X]) a")), parse_term("f a")));
    CHECK(alpha_equal(erase(parse_term("2.((\\x:Y. x) + r)")), parse_term("2.((\\x. x) + r)")));
    CHECK(is_erased(erase(parse_term("/\\X. \\x:X. (0 : X) + x"))));
}

TEST_CASE("sum flattening is association-independent") {
    auto a = mk_var("a"), b = mk_var("b"), c = mk_var("c");
    auto left = mk_sum({mk_sum({a, b}), c});
    auto right = mk_sum({a, mk_sum({b, c})});
    CHECK(alpha_equal(left, right));
    CHECK(std::get<Sum>(left->node()).addends.size() == 3);
    CHECK(alpha_equal(parse_term("(a + b) + c"), parse_term("a + (b + c)")));
    CHECK(alpha_equal(parse_term("a + b + c"), parse_term("c + b + a")));
}

TEST_CASE("alpha equality") {
    CHECK(alpha_equal(parse_term("\\x. x"), parse_term("\\y. y")));
    CHECK_FALSE(alpha_equal(parse_term("\\x. \\y. x"), parse_term("\\x. \\y. y")));
    CHECK(alpha_equal(parse_term("/\\X. \\x:X. x"), parse_term("/\\Y. \\z:Y. z")));
    CHECK_FALSE(alpha_equal(parse_term("\\x:U. x"), parse_term("\\x:V. x")));
    // multiset comparison of sums ignores duplicates only as multiplicity
    CHECK_FALSE(alpha_equal(parse_term("x + x + y"), parse_term("x + y + y")));
    CHECK(alpha_equal(parse_term("x + x + y"), parse_term("y + x + x")));
    CHECK(canonical_key(parse_term("\\x. x y")) == canonical_key(parse_term("\\q. q y")));
}

TEST_CASE("parsing the paper's spellings") {
    auto t = parse_term("1/2 . (true + false)");
    const auto* s = std::get_if<Scale>(&t->node());
    REQUIRE(s);
    CHECK(s->coeff == q(1, 2));
    CHECK(std::holds_alternative<Sum>(s->body->node()));
    CHECK(std::holds_alternative<Zero>(parse_term("0")->node()));
    // subtraction negates the leading coefficient of the right operand
    auto d = parse_term("3.x - 3.x");
    const auto* sum = std::get_if<Sum>(&d->node());
    REQUIRE(sum);
    REQUIRE(sum->addends.size() == 2);
    const auto* a0 = std::get_if<Scale>(&sum->addends[0]->node());
    const auto* a1 = std::get_if<Scale>(&sum->addends[1]->node());
    REQUIRE(a0);
    REQUIRE(a1);
    CHECK(a0->coeff == q(-3));
    CHECK(a1->coeff == q(3));
    CHECK(alpha_equal(parse_term("x - y"), mk_sum({mk_var("x"), mk_scale(q(-1), mk_var("y"))})));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_term("\\x."), ParseError);
    CHECK_THROWS_AS(parse_term("2"), ParseError);
    CHECK_THROWS_AS(parse_term("x +"), ParseError);
    CHECK_THROWS_AS(parse_term("(x"), ParseError);
    CHECK_THROWS_AS(parse_term("\\x:2.X. x"), ParseError);
    try {
        parse_term("x +\n  )");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("let definitions and assumes in source files") {
    auto f = parse_source("let id = \\x. x ;\nlet twice = id id ;\nassume y : U ;\ntwice y\n:: U");
    REQUIRE(f.main);
    CHECK(alpha_equal(f.main, parse_term("((\\x. x) (\\x. x)) y")));
    REQUIRE(f.ascription);
    CHECK(alpha_equal_types(f.ascription, tvar("U")));
    REQUIRE(f.assumes.size() == 1);
    CHECK(f.assumes[0].first == "y");
    // binders shadow definitions
    auto g = parse_source("let id = \\x. x ;\n\\id. id");
    CHECK(alpha_equal(g.main, parse_term("\\q. q")));
    // type aliases expand, with forall binders shadowing
    auto h = parse_source("let B = forall X. X -> X -> X ;\n\\x:B. x");
    const auto* abs = std::get_if<Abs>(&h.main->node());
    REQUIRE(abs);
    CHECK(alpha_equal_types(abs->ann, parse_type("forall X. X -> X -> X")));
}

TEST_CASE("print/parse round-trip on random terms") {
    std::mt19937_64 rng(17);
    std::vector<std::string> scope;
    for (int i = 0; i < 500; ++i) {
        auto t = random_term(rng, 5, scope);
        auto printed = print_term(t);
        CAPTURE(printed);
        auto back = parse_term(printed);
        CHECK(alpha_equal(back, t));
    }
}

TEST_CASE("print/parse round-trip on annotated spellings") {
    const char* cases[] = {
        "\\x:U. x",
        "/\\X. \\x:X. \\y:X. x",
        "(f [forall X. X -> X]) a",
        "1/2.(true + false)",
        "(0 : X -> X)",
        "3.x - 3.x",
        "- x + y",
        "2.(\\x:U. \\y:U. (1/4.x + 1/4.y))",
        "x - 1/2.y",
    };
    for (const char* s : cases) {
        auto t = parse_term(s);
        CHECK(alpha_equal(parse_term(print_term(t)), t));
    }
}

TEST_CASE("resugaring through definition names") {
    auto f = parse_source("let true = /\\X. \\x:X. \\y:X. x ;\nlet false = /\\X. \\x:X. \\y:X. y ;\ntrue");
    auto names = f.names();
    auto result = parse_term("3/8.(\\x. \\y. x) + 5/8.(\\x. \\y. y)");
    CHECK(print_term(result, &names) == "3/8.true + 5/8.false");
}
