#include "doctest.h"
#include "lineal/parse.hpp"
#include "lineal/rewrite.hpp"
#include "lineal/typecheck.hpp"

using namespace lineal;

namespace {

Scalar q(long num, long den = 1) { return Scalar(Scalar::Int(num), Scalar::Int(den)); }

const char* kPrelude =
    "let B = forall X. X -> X -> X ;\n"
    "let true = /\\X. \\x:X. \\y:X. x ;\n"
    "let false = /\\X. \\x:X. \\y:X. y ;\n";

SourceFile with_prelude(const std::string& main_text) { return parse_source(kPrelude + main_text); }

Context ctx_of(const SourceFile& f) { return Context(f.assumes); }

CanonicalType canon_of(const char* src) {
    auto f = with_prelude(src);
    return infer_scalar(ctx_of(f), f.main).type;
}

}  // namespace

TEST_CASE("variables, abstractions and polymorphism") {
    auto id = infer_scalar(Context{}, parse_term("/\\X. \\x:X. x"));
    CHECK_FALSE(id.type.zero);
    CHECK(id.type.coeff.is_one());
    CHECK(alpha_equal_types(id.type.unit, parse_type("forall X. X -> X")));

    auto half = infer_scalar(Context{}, parse_term("1/2.(/\\X. \\x:X. x)"));
    CHECK(half.type.coeff == q(1, 2));
    CHECK(alpha_equal_types(half.type.unit, parse_type("forall X. X -> X")));
}

TEST_CASE("the Remark 2 judgement") {
    auto f = parse_source("assume x : U -> 2.U ;\nassume y : U ;\nx (1/2.y)");
    auto inf = infer_scalar(ctx_of(f), f.main);
    CHECK(inf.type.coeff.is_one());
    CHECK(alpha_equal_types(inf.type.unit, tvar("U")));
    // while the weight of the same term is 1/2
    CHECK(weight(erase(f.main)) == q(1, 2));
    // the barycentric system rejects the context itself
    CHECK_THROWS_AS(check_barycentric(ctx_of(f), f.main), TypeError);
}

TEST_CASE("the barycentric function of the worked example") {
    auto f = with_prelude(
        "let f = \\x:B. ((x [B]) (1/2.(true + false))) (1/4.true + 3/4.false) ;\n"
        "f");
    auto inf = infer_scalar(Context{}, f.main);
    CHECK(inf.type.coeff.is_one());
    CHECK(alpha_equal_types(inf.type.unit, parse_type("(forall X. X -> X -> X) -> forall X. X -> X -> X")));

    auto bary = check_barycentric(Context{}, f.main);
    CHECK(bary.ok);

    // applied to a barycentric argument it stays barycentric
    auto app = with_prelude(
        "let f = \\x:B. ((x [B]) (1/2.(true + false))) (1/4.true + 3/4.false) ;\n"
        "f (1/2.(true + false))");
    auto bapp = check_barycentric(Context{}, app.main);
    CHECK(bapp.ok);
    CHECK(alpha_equal_types(bapp.type.unit, parse_type("forall X. X -> X -> X")));
}

TEST_CASE("the Remark 1 judgement accepts in the barycentric system") {
    auto f = parse_source(
        "assume z : U ;\nassume w : U ;\n"
        "(2.(\\x:U. \\y:U. (1/4.x + 1/4.y)) z) w");
    auto bary = check_barycentric(ctx_of(f), f.main);
    CHECK(bary.ok);
    CHECK(alpha_equal_types(bary.type.unit, tvar("U")));
    CHECK(weight(erase(f.main)) == q(2));
}

TEST_CASE("barycentric rejections report the final type") {
    auto r = check_barycentric(Context{}, parse_term("1/2.(\\x:X. x)"));
    CHECK_FALSE(r.ok);
    CHECK(r.type.coeff == q(1, 2));

    // classical-but-scaled codomains also fail the final check
    auto s = check_barycentric(Context{}, parse_term("\\x:U. 2.x"));
    CHECK_FALSE(s.ok);

    // non-classical type application argument
    CHECK_THROWS_AS(check_barycentric(Context{}, parse_term("(/\\X. \\x:X. x) [U -> 2.U]")), TypeError);
    // non-classical binder annotations enter the context
    CHECK_THROWS_AS(check_barycentric(Context{}, parse_term("\\x:(U -> 2.U). x")), TypeError);
}

TEST_CASE("zero typing") {
    CHECK(canon_of("0").zero);
    CHECK(canon_of("0 + 1/2.(\\x:U. x)").coeff == q(1, 2));
    // sums of zeros stay zero, scaling by zero collapses
    CHECK(canon_of("0 + 0").zero);
    CHECK(canon_of("0.(\\x:U. x)").zero);
    // applying zero gives zero
    CHECK(canon_of("(0) (\\x:U. x)").zero);
    CHECK(canon_of("(\\x:U. x) 0").zero);
    // cancellation in the type: 1.t - 1.t has the zero type
    CHECK(canon_of("1.(\\x:U. x) - 1.(\\x:U. x)").zero);
}

TEST_CASE("scalar typing errors") {
    CHECK_THROWS_WITH_AS(infer_scalar(Context{}, parse_term("x")).type, doctest::Contains("UnboundVariable"),
                         TypeError);
    CHECK_THROWS_WITH_AS(infer_scalar(Context{}, parse_term("\\x. x")).type,
                         doctest::Contains("MissingAnnotation"), TypeError);
    auto f = parse_source("assume y : U ;\ny y");
    CHECK_THROWS_WITH_AS(infer_scalar(ctx_of(f), f.main).type, doctest::Contains("NotAnArrow"), TypeError);
    auto g = parse_source("assume y : U ;\ny [U]");
    CHECK_THROWS_WITH_AS(infer_scalar(ctx_of(g), g.main).type, doctest::Contains("NotAForall"), TypeError);
    auto h = parse_source("assume f : U -> U ;\nassume v : V ;\nf v");
    CHECK_THROWS_WITH_AS(infer_scalar(ctx_of(h), h.main).type, doctest::Contains("DomainMismatch"),
                         TypeError);
    CHECK_THROWS_WITH_AS(infer_scalar(Context{}, parse_term("(\\x:U. x) + (\\x:V. \\y:V. x)")).type,
                         doctest::Contains("SumUnitMismatch"), TypeError);
    auto k = parse_source("assume y : X ;\n/\\X. \\x:X. y");
    CHECK_THROWS_WITH_AS(infer_scalar(ctx_of(k), k.main).type, doctest::Contains("ForallEscape"), TypeError);
}

TEST_CASE("the forgetting map") {
    auto B = parse_type("forall X. X -> X -> X");
    CHECK(alpha_equal_types(forget(tscale(q(1, 2), tarrow(B, B))), tarrow(B, B)));
    CHECK(alpha_equal_types(forget(tvar("X")), tvar("X")));
    CHECK(alpha_equal_types(forget(parse_type("forall X. 3.(X -> X)")), parse_type("forall X. X -> X")));
    // the zero type becomes a fresh placeholder variable
    auto z = forget(tzero());
    const auto* v = std::get_if<TVar>(&z->node());
    REQUIRE(v);
    CHECK(v->name[0] == '?');
}

TEST_CASE("System F with transparent scalars") {
    auto sum = infer_f(Context{}, parse_term("(\\x:X. x) + (\\y:X. y)"));
    CHECK(alpha_equal_types(sum, parse_type("X -> X")));
    auto scaled = infer_f(Context{}, parse_term("7.(\\x:X. x)"));
    CHECK(alpha_equal_types(scaled, parse_type("X -> X")));
    auto zero = infer_f(Context{}, parse_term("(0 : X -> X)"));
    CHECK(alpha_equal_types(zero, parse_type("X -> X")));

    // zeros adopt the type of a sum sibling or an application domain
    auto adopted = infer_f(Context{}, parse_term("(\\x:X. x) + 0"));
    CHECK(alpha_equal_types(adopted, parse_type("X -> X")));
    auto g = parse_source("assume f : U -> U ;\nf 0");
    CHECK(alpha_equal_types(infer_f(Context(g.assumes), g.main), tvar("U")));
    CHECK_THROWS_WITH_AS(infer_f(Context{}, parse_term("0")), doctest::Contains("MissingZeroAnnotation"),
                         TypeError);

    // scalar-laden annotations are forgotten before use
    auto h = infer_f(Context{}, parse_term("\\x:(U -> 2.U). x"));
    CHECK(alpha_equal_types(h, parse_type("(U -> U) -> U -> U")));

    // polymorphism as in System F
    auto poly = infer_f(Context{}, parse_term("(/\\X. \\x:X. x) [U]"));
    CHECK(alpha_equal_types(poly, parse_type("U -> U")));
}

TEST_CASE("correspondence between the scalar system and System F") {
    auto f = with_prelude(
        "let f = \\x:B. ((x [B]) (1/2.(true + false))) (1/4.true + 3/4.false) ;\n"
        "f");
    CHECK(check_correspondence(Context{}, f.main));
    CHECK(check_correspondence(Context{}, parse_term("/\\X. \\x:X. x")));
    CHECK(check_correspondence(Context{}, parse_term("1/2.(\\x:U. x) + 1/2.(\\y:U. y)")));
    // zero-typed terms always correspond (any type may be chosen)
    CHECK(check_correspondence(Context{}, parse_term("0.(\\x:U. x)")));
    // zero in an arrow codomain meets the placeholder wildcard
    CHECK(check_correspondence(Context{}, parse_term("\\x:U. (0 : U)")));
    auto r2 = parse_source("assume x : U -> 2.U ;\nassume y : U ;\nx (1/2.y)");
    CHECK(check_correspondence(Context(r2.assumes), r2.main));
}

TEST_CASE("derivations are deterministic and carry the size metric") {
    auto f = parse_source("assume u : U ;\n2.(3.u)");
    auto a = infer_scalar(ctx_of(f), f.main);
    auto b = infer_scalar(ctx_of(f), f.main);
    CHECK(derivation_equal(a.deriv, b.deriv));
    CHECK(a.type.coeff == q(6));
    // equiv wrapping contributes no size: ax(1), sI(2), sI+equiv(3)
    CHECK(a.deriv->rule == RuleLabel::Equiv);
    CHECK(a.deriv->size() == 3);

    auto printed = print_derivation(a.deriv);
    CHECK(printed.find("equiv") != std::string::npos);
    CHECK(printed.find("sI") != std::string::npos);
    CHECK(printed.find("|- 2.(3.u) : 6.U") != std::string::npos);

    auto exported = derivation_export(a.deriv);
    CHECK(exported.find("\"rule\"") != std::string::npos);
    CHECK(exported.find("\"children\"") != std::string::npos);
}

TEST_CASE("the no-cloning probe") {
    Context empty;
    std::vector<Scalar> samples = {q(1, 2), q(1), q(2), q(3), q(5)};

    // single-hypothesis template: the hole scales one subterm
    auto linear = [](const Scalar& a) { return mk_scale(a, parse_term("\\x:U. x")); };
    CHECK(probe_scalar_linearity(linear, empty, samples) == 1);

    // unused hole
    auto constant = [](const Scalar&) { return parse_term("\\x:U. x"); };
    CHECK(probe_scalar_linearity(constant, empty, samples) == 0);

    // affine combination: a.id + 3.id
    auto affine = [](const Scalar& a) {
        return mk_sum({mk_scale(a, parse_term("\\x:U. x")), mk_scale(q(3), parse_term("\\x:U. x"))});
    };
    CHECK(probe_scalar_linearity(affine, empty, samples) == 1);

    // the hole feeding two hypotheses multiplies out: degree 2, outside the
    // single-sequent scope of the theorem
    auto f = parse_source("assume y : U ;\ny");
    Context ctx = Context(f.assumes);
    auto square = [](const Scalar& a) {
        return mk_app(mk_scale(a, parse_term("\\x:U. x")), mk_scale(a, mk_var("y")));
    };
    CHECK(probe_scalar_linearity(square, ctx, samples) == 2);

    // ill-typed template reports, degenerate samples are rejected
    auto broken = [](const Scalar& a) { return mk_scale(a, parse_term("z")); };
    CHECK_THROWS_AS(probe_scalar_linearity(broken, empty, samples), TemplateIllTyped);
    CHECK_THROWS_AS(probe_scalar_linearity(linear, empty, {q(1), q(2)}), std::invalid_argument);
    CHECK_THROWS_AS(probe_scalar_linearity(linear, empty, {q(1), q(2), q(2), q(3)}), std::invalid_argument);
}

TEST_CASE("uniqueness of scalars across annotation variants") {
    // the same erased term under equivalent but distinct annotations gets
    // the same outer scalar
    auto v1 = parse_term("2.(\\x:(U -> V). x)");
    auto v2 = parse_term("2.(\\x:(U -> 1.V). x)");
    auto c1 = infer_scalar(Context{}, v1);
    auto c2 = infer_scalar(Context{}, v2);
    CHECK(alpha_equal(erase(v1), erase(v2)));
    CHECK(c1.type.coeff == c2.type.coeff);
    CHECK(alpha_equal_types(readback(c1.type), readback(c2.type)));
}
