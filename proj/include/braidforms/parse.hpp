#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "tensor.hpp"

namespace braidforms {

// Raised by evaluation hooks (unknown identifier, bad division, ...); the
// parser converts it into a ParseError carrying the offending position.
struct EvalError : Error {
    using Error::Error;
};

struct Token {
    enum class Kind {
        Int,
        Ident,
        Plus,
        Minus,
        Star,
        Slash,
        Caret,
        LParen,
        RParen,
        End
    };
    Kind kind;
    std::string text;
    int line = 1;
    int column = 1;
};

inline std::vector<Token> lex_expression(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        int tl = line, tc = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string t;
            while (i < src.size() &&
                   std::isdigit(static_cast<unsigned char>(src[i]))) {
                t += src[i++];
                ++col;
            }
            if (t.size() > 18)
                throw ParseError("integer literal too long", tl, tc);
            out.push_back({Token::Kind::Int, std::move(t), tl, tc});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string t;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) ||
                    src[i] == '_')) {
                t += src[i++];
                ++col;
            }
            out.push_back({Token::Kind::Ident, std::move(t), tl, tc});
            continue;
        }
        Token::Kind k;
        switch (ch) {
            case '+': k = Token::Kind::Plus; break;
            case '-': k = Token::Kind::Minus; break;
            case '*': k = Token::Kind::Star; break;
            case '/': k = Token::Kind::Slash; break;
            case '^': k = Token::Kind::Caret; break;
            case '(': k = Token::Kind::LParen; break;
            case ')': k = Token::Kind::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'",
                                 tl, tc);
        }
        out.push_back({k, std::string(1, ch), tl, tc});
        ++i;
        ++col;
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

// Recursive-descent evaluator over pluggable value operations:
//   tensor := expr ("(x)" expr)*
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' INT]
//   atom   := INT | IDENT | '(' expr ')'
// "(x)" is only a tensor separator where a complete expression just ended;
// in atom position a parenthesis always opens a subexpression.
template <class Ops>
class ExprParser {
   public:
    using Value = typename Ops::Value;

    ExprParser(std::vector<Token> tokens, Ops ops)
        : ts_(std::move(tokens)), ops_(std::move(ops)) {}

    Value parse_expr() {
        std::optional<Token> lead;
        if (cur().kind == Token::Kind::Minus) {
            lead = cur();
            advance();
        }
        Value v = parse_term();
        if (lead) v = guarded(*lead, [&] { return ops_.neg(v); });
        while (cur().kind == Token::Kind::Plus ||
               cur().kind == Token::Kind::Minus) {
            Token op = cur();
            advance();
            Value rhs = parse_term();
            v = guarded(op, [&] {
                return op.kind == Token::Kind::Minus ? ops_.sub(v, rhs)
                                                     : ops_.add(v, rhs);
            });
        }
        return v;
    }

    std::vector<Value> parse_tensor() {
        std::vector<Value> out;
        out.push_back(parse_expr());
        while (at_tensor_separator()) {
            pos_ += 3;
            out.push_back(parse_expr());
        }
        return out;
    }

    void expect_end() const {
        if (cur().kind != Token::Kind::End)
            throw ParseError("unexpected trailing input", cur().line,
                             cur().column);
    }

   private:
    const Token& cur() const { return ts_[pos_]; }
    void advance() { ++pos_; }

    bool at_tensor_separator() const {
        return pos_ + 2 < ts_.size() && ts_[pos_].kind == Token::Kind::LParen &&
               ts_[pos_ + 1].kind == Token::Kind::Ident &&
               ts_[pos_ + 1].text == "x" &&
               ts_[pos_ + 2].kind == Token::Kind::RParen;
    }

    template <class Fn>
    Value guarded(const Token& at, Fn&& fn) {
        try {
            return fn();
        } catch (const EvalError& e) {
            throw ParseError(e.what(), at.line, at.column);
        }
    }

    Value parse_term() {
        Value v = parse_factor();
        while (cur().kind == Token::Kind::Star ||
               cur().kind == Token::Kind::Slash) {
            Token op = cur();
            advance();
            Value rhs = parse_factor();
            v = guarded(op, [&] {
                return op.kind == Token::Kind::Slash ? ops_.div(v, rhs)
                                                     : ops_.mul(v, rhs);
            });
        }
        return v;
    }

    Value parse_factor() {
        Value v = parse_atom();
        if (cur().kind == Token::Kind::Caret) {
            advance();
            if (cur().kind != Token::Kind::Int)
                throw ParseError("expected an integer exponent", cur().line,
                                 cur().column);
            Token e = cur();
            advance();
            v = guarded(e, [&] { return ops_.pow(v, std::stoul(e.text)); });
        }
        return v;
    }

    Value parse_atom() {
        Token t = cur();
        switch (t.kind) {
            case Token::Kind::Int:
                advance();
                return guarded(t, [&] { return ops_.from_int(t.text); });
            case Token::Kind::Ident:
                advance();
                return guarded(t, [&] { return ops_.ident(t.text); });
            case Token::Kind::LParen: {
                advance();
                Value v = parse_expr();
                if (cur().kind != Token::Kind::RParen)
                    throw ParseError("expected ')'", cur().line, cur().column);
                advance();
                return v;
            }
            default:
                throw ParseError(
                    "expected a number, an identifier, or a parenthesis",
                    t.line, t.column);
        }
    }

    std::vector<Token> ts_;
    Ops ops_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Value operations for the three evaluation targets.
// ---------------------------------------------------------------------------

template <class F>
struct ScalarOps {
    using Elem = typename F::Elem;
    using Value = Elem;

    const F* field;
    std::optional<Elem> q;

    Value from_int(const std::string& digits) const {
        return field->from_long(std::stol(digits));
    }
    Value ident(const std::string& name) const {
        if (name == "q") {
            if (!q) throw EvalError("this field carries no parameter q");
            return *q;
        }
        throw EvalError("unknown identifier '" + name + "' in a scalar");
    }
    Value neg(const Value& a) const { return Value(-a); }
    Value add(const Value& a, const Value& b) const { return Value(a + b); }
    Value sub(const Value& a, const Value& b) const { return Value(a - b); }
    Value mul(const Value& a, const Value& b) const { return Value(a * b); }
    Value div(const Value& a, const Value& b) const {
        if (is_zero(b)) throw EvalError("division by zero");
        return Value(a * inverse(b));
    }
    Value pow(const Value& a, unsigned long e) const {
        return elem_pow(a, e, field->one());
    }
};

template <class F>
struct PolyOps {
    using Elem = typename F::Elem;
    using Value = Polynomial<Elem>;

    const F* field;
    const std::vector<std::string>* vars;
    std::optional<Elem> q;

    Value from_int(const std::string& digits) const {
        return Value::constant(vars->size(), field->from_long(std::stol(digits)));
    }
    Value ident(const std::string& name) const {
        for (std::size_t i = 0; i < vars->size(); ++i)
            if ((*vars)[i] == name)
                return Value::variable(vars->size(), i, field->one());
        if (name == "q") {
            if (!q) throw EvalError("this field carries no parameter q");
            return Value::constant(vars->size(), *q);
        }
        throw EvalError("unknown identifier '" + name + "'");
    }
    Value neg(const Value& a) const { return -a; }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value div(const Value& a, const Value& b) const {
        if (!b.is_constant())
            throw EvalError("can only divide by a nonzero constant");
        if (b.is_zero()) throw EvalError("division by zero");
        return a.scaled(inverse(b.terms().begin()->second));
    }
    Value pow(const Value& a, unsigned long e) const {
        if (e > 4096) throw EvalError("exponent too large");
        return poly_pow(a, static_cast<std::uint32_t>(e), field->one());
    }
};

template <class F>
struct FormOps {
    using Elem = typename F::Elem;
    using Value = DiffForm<F>;

    const AlgebraCtx<F>* ctx;

    Value from_int(const std::string& digits) const {
        return form_from(
            *ctx,
            Polynomial<Elem>::constant(ctx->nvars(),
                                       ctx->field().from_long(std::stol(digits))),
            {});
    }
    Value ident(const std::string& name) const {
        const auto& vars = ctx->variables();
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return form_from(*ctx, ctx->var_poly(i), {});
        if (name.size() > 1 && name[0] == 'd')
            for (std::uint32_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name.substr(1))
                    return form_from(*ctx, ctx->one_poly(), {i});
        if (name == "q") {
            auto qv = ctx->field().q_value();
            if (!qv) throw EvalError("this field carries no parameter q");
            return form_from(*ctx, Polynomial<Elem>::constant(ctx->nvars(), *qv),
                             {});
        }
        throw EvalError("unknown identifier '" + name + "'");
    }
    Value neg(const Value& a) const { return -a; }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value div(const Value& a, const Value& b) const {
        if (b.is_zero()) throw EvalError("division by zero");
        if (b.coords.size() != 1)
            throw EvalError("can only divide by a nonzero constant");
        const auto& [l, c] = *b.coords.begin();
        if (l.var_degree() != 0 || l.form_degree() != 0)
            throw EvalError("can only divide by a nonzero constant");
        return a.scaled(inverse(c));
    }
    Value pow(const Value& a, unsigned long e) const {
        if (e > 4096) throw EvalError("exponent too large");
        Value acc = one_form_unit(*ctx);
        for (unsigned long k = 0; k < e; ++k) acc = acc * a;
        return acc;
    }
};

// ---------------------------------------------------------------------------
// Entry points.
// ---------------------------------------------------------------------------

template <class F>
typename F::Elem parse_scalar(const F& field, const std::string& text,
                              bool allow_q = true) {
    ExprParser<ScalarOps<F>> p(
        lex_expression(text),
        ScalarOps<F>{&field,
                     allow_q ? field.q_value() : std::optional<typename F::Elem>()});
    auto v = p.parse_expr();
    p.expect_end();
    return v;
}

template <class F>
Polynomial<typename F::Elem> parse_polynomial(
    const F& field, const std::vector<std::string>& vars,
    const std::string& text) {
    ExprParser<PolyOps<F>> p(lex_expression(text),
                             PolyOps<F>{&field, &vars, field.q_value()});
    auto v = p.parse_expr();
    p.expect_end();
    return v;
}

template <class F>
DiffForm<F> parse_form(const AlgebraCtx<F>& ctx, const std::string& text) {
    ExprParser<FormOps<F>> p(lex_expression(text), FormOps<F>{&ctx});
    auto v = p.parse_expr();
    p.expect_end();
    return v;
}

template <class F>
MultiTensor<F> parse_tensor(const AlgebraCtx<F>& ctx, const std::string& text) {
    ExprParser<FormOps<F>> p(lex_expression(text), FormOps<F>{&ctx});
    auto factors = p.parse_tensor();
    p.expect_end();
    return outer(ctx, factors);
}

}  // namespace braidforms
