#include "lineal/parse.hpp"

#include <cctype>

namespace lineal {

namespace {

enum class Tok {
    Ident,
    TyIdent,
    Int,  // "123" or a tight fraction "123/45"
    Lambda,
    TyLambda,
    Dot,
    Colon,
    DoubleColon,
    Semi,
    Equals,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Plus,
    Minus,
    Arrow,
    KwLet,
    KwAssume,
    KwForall,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    auto push = [&](Tok k, std::string text, int l, int c) { out.push_back({k, std::move(text), l, c}); };
    while (i < src.size()) {
        char c = src[i];
        int l = line, cl = col;
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            // tight fraction INT/INT
            if (j < src.size() && src[j] == '/' && j + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                size_t k = j + 1;
                while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                j = k;
            }
            push(Tok::Int, std::string(src.substr(i, j - i)), l, cl);
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            std::string word(src.substr(i, j - i));
            Tok kind;
            if (word == "let")
                kind = Tok::KwLet;
            else if (word == "assume")
                kind = Tok::KwAssume;
            else if (word == "forall")
                kind = Tok::KwForall;
            else if (std::isupper(static_cast<unsigned char>(word[0])))
                kind = Tok::TyIdent;
            else
                kind = Tok::Ident;
            push(kind, std::move(word), l, cl);
            advance(j - i);
            continue;
        }
        switch (c) {
            case '\\':
                push(Tok::Lambda, "\\", l, cl);
                advance(1);
                break;
            case '/':
                if (i + 1 < src.size() && src[i + 1] == '\\') {
                    push(Tok::TyLambda, "/\\", l, cl);
                    advance(2);
                } else {
                    throw ParseError("unexpected '/' (fractions are written INT/INT, tight)", l, cl);
                }
                break;
            case '.':
                push(Tok::Dot, ".", l, cl);
                advance(1);
                break;
            case ':':
                if (i + 1 < src.size() && src[i + 1] == ':') {
                    push(Tok::DoubleColon, "::", l, cl);
                    advance(2);
                } else {
                    push(Tok::Colon, ":", l, cl);
                    advance(1);
                }
                break;
            case ';':
                push(Tok::Semi, ";", l, cl);
                advance(1);
                break;
            case '=':
                push(Tok::Equals, "=", l, cl);
                advance(1);
                break;
            case '(':
                push(Tok::LParen, "(", l, cl);
                advance(1);
                break;
            case ')':
                push(Tok::RParen, ")", l, cl);
                advance(1);
                break;
            case '[':
                push(Tok::LBracket, "[", l, cl);
                advance(1);
                break;
            case ']':
                push(Tok::RBracket, "]", l, cl);
                advance(1);
                break;
            case '+':
                push(Tok::Plus, "+", l, cl);
                advance(1);
                break;
            case '-':
                if (i + 1 < src.size() && src[i + 1] == '>') {
                    push(Tok::Arrow, "->", l, cl);
                    advance(2);
                } else {
                    push(Tok::Minus, "-", l, cl);
                    advance(1);
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

struct Parser {
    std::vector<Token> toks;
    size_t pos = 0;
    std::vector<std::pair<std::string, TermPtr>> term_defs;
    std::vector<std::pair<std::string, TypePtr>> type_defs;
    std::vector<std::string> bound_vars;
    std::vector<std::string> bound_tyvars;

    const Token& peek(size_t k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
    const Token& next() { return toks[pos == toks.size() - 1 ? pos : pos++]; }
    bool accept(Tok k) {
        if (peek().kind == k) {
            ++pos;
            return true;
        }
        return false;
    }
    const Token& expect(Tok k, const std::string& what) {
        if (peek().kind != k) throw err("expected " + what);
        return next();
    }
    ParseError err(const std::string& msg) const {
        std::string got = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
        return ParseError(msg + " (got " + got + ")", peek().line, peek().col);
    }

    bool var_bound(const std::string& name) const {
        for (auto it = bound_vars.rbegin(); it != bound_vars.rend(); ++it)
            if (*it == name) return true;
        return false;
    }
    bool tyvar_bound(const std::string& name) const {
        for (auto it = bound_tyvars.rbegin(); it != bound_tyvars.rend(); ++it)
            if (*it == name) return true;
        return false;
    }
    const TermPtr* lookup_term_def(const std::string& name) const {
        for (auto it = term_defs.rbegin(); it != term_defs.rend(); ++it)
            if (it->first == name) return &it->second;
        return nullptr;
    }
    const TypePtr* lookup_type_def(const std::string& name) const {
        for (auto it = type_defs.rbegin(); it != type_defs.rend(); ++it)
            if (it->first == name) return &it->second;
        return nullptr;
    }

    Scalar parse_fraction() {
        const Token& n = expect(Tok::Int, "integer");
        auto slash = n.text.find('/');
        if (slash == std::string::npos) return Scalar(Scalar::Int(n.text), 1);
        Scalar::Int num(n.text.substr(0, slash));
        Scalar::Int den(n.text.substr(slash + 1));
        if (den == 0) throw ParseError("scalar denominator is zero", n.line, n.col);
        return Scalar(num, den);
    }

    bool scalar_prefix_ahead() const { return peek().kind == Tok::Int && peek(1).kind == Tok::Dot; }

    // --- types -----------------------------------------------------------

    TypePtr parse_type_top() {
        if (accept(Tok::KwForall)) {
            const Token& v = expect(Tok::TyIdent, "type variable after 'forall'");
            std::string name = v.text;
            expect(Tok::Dot, "'.' after forall binder");
            bound_tyvars.push_back(name);
            TypePtr body = parse_type_top();
            bound_tyvars.pop_back();
            return tforall(name, body);
        }
        return parse_type_arrow();
    }

    TypePtr parse_type_arrow() {
        TypePtr lhs = parse_type_scaled();
        if (peek().kind == Tok::Arrow) {
            if (!is_unit(lhs)) throw err("arrow domain must be a unit type");
            next();
            TypePtr rhs = parse_type_top();
            return tarrow(lhs, rhs);
        }
        return lhs;
    }

    TypePtr parse_type_scaled() {
        bool neg = false;
        if (peek().kind == Tok::Minus && peek(1).kind == Tok::Int && peek(2).kind == Tok::Dot) {
            next();
            neg = true;
        }
        if (scalar_prefix_ahead()) {
            Scalar s = parse_fraction();
            expect(Tok::Dot, "'.' after scalar");
            TypePtr body = parse_type_atom();
            return tscale(neg ? -s : s, body);
        }
        return parse_type_atom();
    }

    TypePtr parse_type_atom() {
        if (peek().kind == Tok::TyIdent) {
            const Token& v = next();
            if (v.text == "Zero") return tzero();
            if (!tyvar_bound(v.text)) {
                if (const TypePtr* def = lookup_type_def(v.text)) return *def;
            }
            return tvar(v.text);
        }
        if (accept(Tok::LParen)) {
            TypePtr t = parse_type_top();
            expect(Tok::RParen, "')'");
            return t;
        }
        throw err("expected a type");
    }

    // --- terms -----------------------------------------------------------

    TermPtr parse_term_top() {
        if (peek().kind == Tok::Lambda) {
            next();
            std::string name = expect(Tok::Ident, "binder name after '\\'").text;
            TypePtr ann = nullptr;
            if (accept(Tok::Colon)) {
                ann = parse_type_top();
                if (!is_unit(ann)) throw err("binder annotation must be a unit type");
            }
            expect(Tok::Dot, "'.' after binder");
            bound_vars.push_back(name);
            TermPtr body = parse_term_top();
            bound_vars.pop_back();
            return mk_abs(name, ann, body);
        }
        if (peek().kind == Tok::TyLambda) {
            next();
            std::string name = expect(Tok::TyIdent, "type variable after '/\\'").text;
            expect(Tok::Dot, "'.' after type binder");
            bound_tyvars.push_back(name);
            TermPtr body = parse_term_top();
            bound_tyvars.pop_back();
            return mk_tyabs(name, body);
        }
        return parse_sum();
    }

    TermPtr parse_sum() {
        std::vector<TermPtr> addends;
        addends.push_back(parse_scaled(accept(Tok::Minus)));
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            addends.push_back(parse_scaled(minus));
        }
        if (addends.size() == 1) return addends.front();
        return mk_sum(std::move(addends));
    }

    // Subtraction sugar: `t - r` adds r with its leading coefficient
    // negated (coefficient -1 when r carries none).
    TermPtr parse_scaled(bool negated) {
        if (scalar_prefix_ahead()) {
            Scalar s = parse_fraction();
            expect(Tok::Dot, "'.' after scalar");
            TermPtr body = parse_application();
            return mk_scale(negated ? -s : s, body);
        }
        TermPtr t = parse_application();
        if (negated) return mk_scale(Scalar(-1), t);
        return t;
    }

    TermPtr parse_application() {
        TermPtr t = parse_atom();
        for (;;) {
            Tok k = peek().kind;
            if (k == Tok::Ident || k == Tok::LParen || (k == Tok::Int && peek().text == "0")) {
                t = mk_app(t, parse_atom());
            } else if (k == Tok::LBracket) {
                next();
                TypePtr ty = parse_type_top();
                if (!is_unit(ty)) throw err("type application argument must be a unit type");
                expect(Tok::RBracket, "']'");
                t = mk_tyapp(t, ty);
            } else {
                break;
            }
        }
        return t;
    }

    TermPtr parse_atom() {
        if (peek().kind == Tok::Ident) {
            const Token& v = next();
            if (!var_bound(v.text)) {
                if (const TermPtr* def = lookup_term_def(v.text)) return *def;
            }
            return mk_var(v.text);
        }
        if (peek().kind == Tok::Int) {
            if (peek().text == "0") {
                next();
                return mk_zero();
            }
            throw err("bare integers are not terms (write SCALAR.term or 0)");
        }
        if (accept(Tok::LParen)) {
            TermPtr t = parse_term_top();
            if (accept(Tok::Colon)) {
                if (!std::holds_alternative<Zero>(t->node())) throw err("ascription is only supported on 0");
                TypePtr ty = parse_type_top();
                t = mk_zero(ty);
            }
            expect(Tok::RParen, "')'");
            return t;
        }
        throw err("expected a term");
    }

    // --- source files ----------------------------------------------------

    SourceFile parse_file() {
        SourceFile out;
        for (;;) {
            if (accept(Tok::KwLet)) {
                if (peek().kind == Tok::Ident) {
                    std::string name = next().text;
                    expect(Tok::Equals, "'='");
                    TermPtr body = parse_term_top();
                    expect(Tok::Semi, "';' after definition");
                    term_defs.emplace_back(name, body);
                    out.term_defs.emplace_back(name, body);
                } else if (peek().kind == Tok::TyIdent) {
                    std::string name = next().text;
                    expect(Tok::Equals, "'='");
                    TypePtr body = parse_type_top();
                    expect(Tok::Semi, "';' after definition");
                    type_defs.emplace_back(name, body);
                    out.type_defs.emplace_back(name, body);
                } else {
                    throw err("expected a name after 'let'");
                }
                continue;
            }
            if (accept(Tok::KwAssume)) {
                std::string name = expect(Tok::Ident, "variable name after 'assume'").text;
                expect(Tok::Colon, "':'");
                TypePtr ty = parse_type_top();
                if (!is_unit(ty)) throw err("assumed variable types must be unit types");
                expect(Tok::Semi, "';' after assumption");
                out.assumes.emplace_back(name, ty);
                continue;
            }
            break;
        }
        if (peek().kind != Tok::End) {
            out.main = parse_term_top();
            if (accept(Tok::DoubleColon)) out.ascription = parse_type_top();
        }
        expect(Tok::End, "end of input");
        return out;
    }
};

Parser make_parser(std::string_view text, const SourceFile* prelude) {
    Parser p;
    p.toks = lex(text);
    if (prelude) {
        p.term_defs = prelude->term_defs;
        p.type_defs = prelude->type_defs;
    }
    return p;
}

}  // namespace

TermPtr parse_term(std::string_view text) {
    Parser p = make_parser(text, nullptr);
    TermPtr t = p.parse_term_top();
    p.expect(Tok::End, "end of input");
    return t;
}

TypePtr parse_type(std::string_view text) {
    Parser p = make_parser(text, nullptr);
    TypePtr t = p.parse_type_top();
    p.expect(Tok::End, "end of input");
    return t;
}

SourceFile parse_source(std::string_view text, const SourceFile* prelude) {
    Parser p = make_parser(text, prelude);
    SourceFile f = p.parse_file();
    if (prelude) {
        f.term_defs.insert(f.term_defs.begin(), prelude->term_defs.begin(), prelude->term_defs.end());
        f.type_defs.insert(f.type_defs.begin(), prelude->type_defs.begin(), prelude->type_defs.end());
        f.assumes.insert(f.assumes.begin(), prelude->assumes.begin(), prelude->assumes.end());
    }
    return f;
}

PrintNames SourceFile::names() const {
    PrintNames out;
    for (const auto& [name, def] : term_defs) out.terms.emplace_back(erase(def), name);
    for (const auto& [name, def] : type_defs) out.types.entries.emplace_back(def, name);
    return out;
}

}  // namespace lineal
