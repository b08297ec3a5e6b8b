#include "motfourier/dsl.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <utility>

#include "motfourier/errors.hpp"

namespace motfourier {

namespace {

// ------------------------------------------------------------------ tokens

enum class Tok { Ident, Number, Imag, String, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Rat value = Rat(0);
    int line = 1;
    int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Tokenize one physical line; `#` starts a comment, `×` is a synonym for `*`.
std::vector<Token> lex_line(const std::string& text, int line) {
    std::vector<Token> out;
    size_t pos = 0;
    const size_t n = text.size();
    while (pos < n) {
        const char c = text[pos];
        const int col = static_cast<int>(pos) + 1;
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        // UTF-8 multiplication sign.
        if (static_cast<unsigned char>(c) == 0xC3 && pos + 1 < n &&
            static_cast<unsigned char>(text[pos + 1]) == 0x97) {
            out.push_back({Tok::Punct, "*", Rat(0), line, col});
            pos += 2;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t end = pos;
            while (end < n && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            Rat value(Int(text.substr(pos, end - pos)));
            if (end < n && text[end] == 'i' && (end + 1 >= n || !ident_char(text[end + 1]))) {
                out.push_back({Tok::Imag, "", value, line, col});
                pos = end + 1;
            } else {
                out.push_back({Tok::Number, "", value, line, col});
                pos = end;
            }
            continue;
        }
        if (ident_start(c)) {
            size_t end = pos;
            while (end < n && ident_char(text[end])) ++end;
            out.push_back({Tok::Ident, text.substr(pos, end - pos), Rat(0), line, col});
            pos = end;
            continue;
        }
        if (c == '"') {
            std::string body;
            size_t end = pos + 1;
            bool closed = false;
            while (end < n) {
                if (text[end] == '\\' && end + 1 < n &&
                    (text[end + 1] == '"' || text[end + 1] == '\\')) {
                    body.push_back(text[end + 1]);
                    end += 2;
                    continue;
                }
                if (text[end] == '"') {
                    closed = true;
                    ++end;
                    break;
                }
                body.push_back(text[end]);
                ++end;
            }
            if (!closed) throw SyntaxError(line, col, "unterminated string literal");
            out.push_back({Tok::String, body, Rat(0), line, col});
            pos = end;
            continue;
        }
        static const std::string punct = "()[]{},;=+-*/^";
        if (punct.find(c) != std::string::npos) {
            out.push_back({Tok::Punct, std::string(1, c), Rat(0), line, col});
            ++pos;
            continue;
        }
        throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::End, "", Rat(0), line, static_cast<int>(n) + 1});
    return out;
}

// ------------------------------------------------------------ expression AST

std::shared_ptr<Expr> make_node(Expr::Kind kind, int line, int col) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->line = line;
    e->col = col;
    return e;
}

ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Bin;
    e->op = op;
    e->line = lhs->line;
    e->col = lhs->col;
    e->args = {std::move(lhs), std::move(rhs)};
    return e;
}

bool is_coordinate_name(const std::string& name, int* index) {
    if (name == "x") { *index = 0; return true; }
    if (name == "y") { *index = 1; return true; }
    if (name.size() >= 2 && name[0] == 'x') {
        for (size_t k = 1; k < name.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(name[k]))) return false;
        long n = std::stol(name.substr(1));
        if (n < 1) return false;
        *index = static_cast<int>(n - 1);
        return true;
    }
    return false;
}

const std::set<std::string>& reserved_names() {
    static const std::set<std::string> names = {
        "t", "e", "i", "O", "C", "x", "y", "exp", "chi", "oball", "cball",
        "expchar", "nu", "packet", "regular", "fourier", "tensor", "conv",
        "dist", "option", "integrate", "convolve", "verify", "weil", "oracle",
        "limit", "set", "inversion", "plancherel", "poisson", "convolution"};
    return names;
}

bool is_reserved(const std::string& name) {
    int idx = 0;
    return reserved_names().count(name) > 0 || is_coordinate_name(name, &idx);
}

class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, int line, size_t pos = 0)
        : toks_(toks), line_(line), pos_(pos) {}

    size_t position() const { return pos_; }

    const Token& peek() const { return toks_[pos_]; }

    bool at_punct(char c) const {
        return peek().kind == Tok::Punct && peek().text[0] == c;
    }

    Token take() { return toks_[pos_++]; }

    void expect_punct(char c, const std::string& what) {
        if (!at_punct(c))
            throw SyntaxError(line_, peek().col, "expected '" + std::string(1, c) + "' " + what);
        ++pos_;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (at_punct('+') || at_punct('-')) {
            const char op = take().text[0];
            lhs = make_binary(op, std::move(lhs), parse_term());
        }
        return lhs;
    }

private:
    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (at_punct('*') || at_punct('/')) {
            const char op = take().text[0];
            lhs = make_binary(op, std::move(lhs), parse_factor());
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        if (at_punct('-')) {
            const Token minus = take();
            auto node = make_node(Expr::Kind::Neg, minus.line, minus.col);
            node->args.push_back(parse_factor());
            return node;
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (!at_punct('^')) return base;
        take();
        ExprPtr exponent;
        if (at_punct('-')) {
            const Token minus = take();
            auto neg = make_node(Expr::Kind::Neg, minus.line, minus.col);
            neg->args.push_back(parse_primary());
            exponent = neg;
        } else {
            exponent = parse_primary();
        }
        return make_binary('^', std::move(base), std::move(exponent));
    }

    Rat parse_signed_rational() {
        bool negative = false;
        if (at_punct('-')) {
            take();
            negative = true;
        }
        if (peek().kind != Tok::Number)
            throw SyntaxError(line_, peek().col, "expected a rational literal");
        Rat value = take().value;
        if (at_punct('/')) {
            take();
            if (peek().kind != Tok::Number)
                throw SyntaxError(line_, peek().col, "expected a denominator");
            Rat den = take().value;
            if (den == 0) throw SyntaxError(line_, peek().col, "zero denominator");
            value = Rat(value / den);
        }
        return negative ? Rat(-value) : value;
    }

    ExprPtr parse_bracket_index(Expr::Kind kind, const Token& head) {
        expect_punct('[', "after '" + head.text + "'");
        auto node = make_node(kind, head.line, head.col);
        node->number = parse_signed_rational();
        expect_punct(']', "to close the index of '" + head.text + "'");
        return node;
    }

    ExprPtr parse_call(const Token& head) {
        const Token open = take();  // '('
        auto node = make_node(Expr::Kind::Call, head.line, head.col);
        node->name = head.text;
        if (at_punct(')')) {
            take();
            return node;
        }
        char sep = 0;
        for (;;) {
            if (peek().kind == Tok::End)
                throw SyntaxError(line_, open.col,
                                  "unclosed '(' in call of '" + head.text + "'");
            node->args.push_back(parse_expr());
            if (at_punct(')')) {
                take();
                break;
            }
            if (at_punct(',') || at_punct(';')) {
                const char s = take().text[0];
                if (sep == 0) sep = s;
                if (s != sep)
                    throw SyntaxError(line_, peek().col,
                                      "mixed ',' and ';' separators in one call");
                continue;
            }
            if (peek().kind == Tok::End)
                throw SyntaxError(line_, open.col,
                                  "unclosed '(' in call of '" + head.text + "'");
            throw SyntaxError(line_, peek().col, "expected ',' or ')' in argument list");
        }
        node->sep = (sep == 0) ? ',' : sep;
        return node;
    }

    ExprPtr parse_primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::Number: {
                const Token t = take();
                auto node = make_node(Expr::Kind::Rational, t.line, t.col);
                node->number = t.value;
                return node;
            }
            case Tok::Imag: {
                const Token t = take();
                auto node = make_node(Expr::Kind::Imaginary, t.line, t.col);
                node->number = t.value;
                return node;
            }
            case Tok::String:
                throw SyntaxError(line_, tok.col,
                                  "quoted text is only valid as a command argument");
            case Tok::Punct: {
                if (tok.text[0] == '(') {
                    const Token open = take();
                    ExprPtr inner = parse_expr();
                    if (peek().kind == Tok::End)
                        throw SyntaxError(line_, open.col, "unclosed '('");
                    expect_punct(')', "to close the group");
                    return inner;
                }
                throw SyntaxError(line_, tok.col, "unexpected '" + tok.text + "'");
            }
            case Tok::Ident: {
                const Token head = take();
                if (head.text == "t") return make_node(Expr::Kind::TLit, head.line, head.col);
                if (head.text == "e") return make_node(Expr::Kind::ELit, head.line, head.col);
                if (head.text == "i") return make_node(Expr::Kind::ILit, head.line, head.col);
                if (head.text == "O" && at_punct('['))
                    return parse_bracket_index(Expr::Kind::BigO, head);
                if (head.text == "C" && at_punct('['))
                    return parse_bracket_index(Expr::Kind::BigC, head);
                if (head.text == "exp" && at_punct('{')) {
                    const Token open = take();
                    auto node = make_node(Expr::Kind::ExpOmega, head.line, head.col);
                    node->args.push_back(parse_expr());
                    if (peek().kind == Tok::End)
                        throw SyntaxError(line_, open.col, "unclosed '{' after 'exp'");
                    expect_punct('}', "to close 'exp{'");
                    return node;
                }
                int coord = 0;
                if (is_coordinate_name(head.text, &coord)) {
                    auto node = make_node(Expr::Kind::Var, head.line, head.col);
                    node->var = coord;
                    return node;
                }
                if (at_punct('(')) return parse_call(head);
                auto node = make_node(Expr::Kind::Ref, head.line, head.col);
                node->name = head.text;
                return node;
            }
            case Tok::End:
                throw SyntaxError(line_, tok.col, "unexpected end of line");
        }
        throw SyntaxError(line_, tok.col, "unexpected token");
    }

    const std::vector<Token>& toks_;
    int line_;
    size_t pos_;
};

// ------------------------------------------------------------- statements

struct StatementParser {
    const std::vector<Token>& toks;
    int line;
    size_t pos = 0;

    const Token& peek() const { return toks[pos]; }

    Token take() { return toks[pos++]; }

    std::string take_name(const std::string& what) {
        if (peek().kind != Tok::Ident)
            throw SyntaxError(line, peek().col, "expected " + what);
        return take().text;
    }

    std::string take_string(const std::string& what) {
        if (peek().kind != Tok::String)
            throw SyntaxError(line, peek().col, "expected a quoted " + what);
        return take().text;
    }

    void expect_end() {
        if (peek().kind != Tok::End)
            throw SyntaxError(line, peek().col, "unexpected trailing input");
    }

    long take_integer() {
        bool negative = false;
        if (peek().kind == Tok::Punct && peek().text == "-") {
            take();
            negative = true;
        }
        if (peek().kind != Tok::Number)
            throw SyntaxError(line, peek().col, "expected an integer");
        const Rat value = take().value;
        if (value.get_den() != 1 || !value.get_num().fits_slong_p())
            throw SyntaxError(line, peek().col, "expected a machine integer");
        const long v = value.get_num().get_si();
        return negative ? -v : v;
    }
};

Statement parse_statement(const std::vector<Token>& toks, int line) {
    Statement stmt;
    stmt.line = line;
    StatementParser p{toks, line};

    // Definition: IDENT '=' expr.
    if (toks.size() >= 2 && toks[0].kind == Tok::Ident && toks[1].kind == Tok::Punct &&
        toks[1].text == "=") {
        stmt.kind = Statement::Kind::Definition;
        stmt.name = toks[0].text;
        if (is_reserved(stmt.name))
            throw SyntaxError(line, toks[0].col, "'" + stmt.name + "' is a reserved name");
        ExprParser ep(toks, line, 2);
        stmt.expr = ep.parse_expr();
        if (toks[ep.position()].kind != Tok::End)
            throw SyntaxError(line, toks[ep.position()].col, "unexpected trailing input");
        return stmt;
    }

    const std::string head = p.take_name("a statement");
    if (head == "option") {
        stmt.kind = Statement::Kind::Option;
        stmt.name = p.take_name("an option key");
        if (stmt.name != "p" && stmt.name != "level")
            throw SyntaxError(line, toks[1].col, "unknown option '" + stmt.name + "'");
        stmt.option_value = p.take_integer();
        p.expect_end();
        return stmt;
    }
    if (head == "integrate" || head == "fourier" || head == "oracle") {
        stmt.kind = head == "integrate" ? Statement::Kind::Integrate
                  : head == "fourier"   ? Statement::Kind::Fourier
                                        : Statement::Kind::Oracle;
        stmt.operands.push_back(p.take_name("a function name"));
        p.expect_end();
        return stmt;
    }
    if (head == "convolve") {
        stmt.kind = Statement::Kind::Convolve;
        stmt.operands.push_back(p.take_name("a function name"));
        stmt.operands.push_back(p.take_name("a second function name"));
        p.expect_end();
        return stmt;
    }
    if (head == "verify") {
        stmt.kind = Statement::Kind::Verify;
        stmt.name = p.take_name("an identity kind");
        static const std::set<std::string> kinds = {"inversion", "plancherel", "poisson",
                                                    "convolution"};
        if (!kinds.count(stmt.name))
            throw SyntaxError(line, toks[1].col,
                              "unknown identity '" + stmt.name +
                                  "' (expected inversion, plancherel, poisson, or convolution)");
        while (p.peek().kind == Tok::Ident) stmt.operands.push_back(p.take().text);
        if (stmt.operands.empty())
            throw SyntaxError(line, p.peek().col, "expected a function name");
        p.expect_end();
        return stmt;
    }
    if (head == "weil") {
        stmt.kind = Statement::Kind::Weil;
        stmt.text = p.take_string("group word");
        stmt.operands.push_back(p.take_name("a function name"));
        p.expect_end();
        return stmt;
    }
    if (head == "limit") {
        // The two-token command "limit-set".
        if (!(p.peek().kind == Tok::Punct && p.peek().text == "-"))
            throw SyntaxError(line, p.peek().col, "expected '-set' after 'limit'");
        p.take();
        const std::string tail = p.take_name("'set'");
        if (tail != "set")
            throw SyntaxError(line, p.peek().col, "expected '-set' after 'limit'");
        stmt.kind = Statement::Kind::LimitSet;
        stmt.text = p.take_string("polynomial");
        p.expect_end();
        return stmt;
    }
    throw SyntaxError(line, toks[0].col, "unknown statement '" + head + "'");
}

// ------------------------------------------------------------- validation

struct Validator {
    std::map<std::string, TypeInfo> table;

    TypeInfo lookup(const std::string& name, int line) const {
        auto it = table.find(name);
        if (it == table.end()) throw UndefinedNameError(line, name);
        return it->second;
    }

    TypeInfo require_fn(const std::string& name, int line) const {
        const TypeInfo info = lookup(name, line);
        if (info.type != DslType::FnVal)
            throw ParseError(line, "'" + name + "' is " + dsl_type_name(info.type) +
                                       ", expected a function");
        return info;
    }

    TypeInfo require_group(const std::string& name, int line) const {
        const TypeInfo info = lookup(name, line);
        if (info.type != DslType::BallVal && info.type != DslType::PolyballVal)
            throw ParseError(line, "'" + name + "' is " + dsl_type_name(info.type) +
                                       ", expected a ball or a product of balls");
        return info;
    }

    TypeInfo type_of(const ExprPtr& e, int line) {
        switch (e->kind) {
            case Expr::Kind::Rational:
            case Expr::Kind::Imaginary:
            case Expr::Kind::TLit:
            case Expr::Kind::ILit:
                return {DslType::Scalar, 0};
            case Expr::Kind::ELit:
            case Expr::Kind::BigO:
            case Expr::Kind::BigC:
                return {DslType::CValue, 0};
            case Expr::Kind::ExpOmega: {
                const TypeInfo inner = type_of(e->args[0], line);
                if (inner.type != DslType::Scalar)
                    throw ParseError(line, "exp{...} takes a field element");
                return {DslType::CValue, 0};
            }
            case Expr::Kind::Var:
                return {DslType::PolyVal, e->var + 1};
            case Expr::Kind::Ref:
                return lookup(e->name, line);
            case Expr::Kind::Neg: {
                const TypeInfo inner = type_of(e->args[0], line);
                if (inner.type == DslType::BallVal || inner.type == DslType::PolyballVal ||
                    inner.type == DslType::DistVal)
                    throw ParseError(line, "cannot negate " + dsl_type_name(inner.type));
                return inner;
            }
            case Expr::Kind::Bin:
                return type_of_binary(e, line);
            case Expr::Kind::Call:
                return type_of_call(e, line);
        }
        throw ParseError(line, "malformed expression");
    }

    TypeInfo type_of_binary(const ExprPtr& e, int line) {
        const TypeInfo a = type_of(e->args[0], line);
        const TypeInfo b = type_of(e->args[1], line);
        const char op = e->op;
        auto is_scalarish = [](const TypeInfo& t) {
            return t.type == DslType::Scalar || t.type == DslType::PolyVal;
        };
        if (op == '+' || op == '-') {
            if (is_scalarish(a) && is_scalarish(b)) {
                if (a.type == DslType::Scalar && b.type == DslType::Scalar)
                    return {DslType::Scalar, 0};
                return {DslType::PolyVal, std::max(a.arity, b.arity)};
            }
            if ((a.type == DslType::CValue || a.type == DslType::Scalar) &&
                (b.type == DslType::CValue || b.type == DslType::Scalar))
                return {DslType::CValue, 0};
            if (a.type == DslType::FnVal && b.type == DslType::FnVal) {
                if (a.arity != b.arity)
                    throw ArityMismatchError(
                        line, "cannot add a " + std::to_string(a.arity) + "-ary and a " +
                                  std::to_string(b.arity) + "-ary function");
                return a;
            }
            throw ParseError(line, "cannot combine " + dsl_type_name(a.type) + " and " +
                                       dsl_type_name(b.type) + " with '" + op + "'");
        }
        if (op == '*') {
            if (is_scalarish(a) && is_scalarish(b)) {
                if (a.type == DslType::Scalar && b.type == DslType::Scalar)
                    return {DslType::Scalar, 0};
                return {DslType::PolyVal, std::max(a.arity, b.arity)};
            }
            if ((a.type == DslType::CValue || a.type == DslType::Scalar) &&
                (b.type == DslType::CValue || b.type == DslType::Scalar))
                return {DslType::CValue, 0};
            const bool a_scale = a.type == DslType::CValue || a.type == DslType::Scalar;
            const bool b_scale = b.type == DslType::CValue || b.type == DslType::Scalar;
            if (a.type == DslType::FnVal && b_scale) return a;
            if (b.type == DslType::FnVal && a_scale) return b;
            if (a.type == DslType::FnVal && b.type == DslType::FnVal) {
                if (a.arity != b.arity)
                    throw ArityMismatchError(
                        line, "cannot multiply a " + std::to_string(a.arity) + "-ary and a " +
                                  std::to_string(b.arity) + "-ary function");
                return a;
            }
            auto factors = [](const TypeInfo& t) {
                return t.type == DslType::BallVal ? 1 : t.arity;
            };
            const bool a_ball = a.type == DslType::BallVal || a.type == DslType::PolyballVal;
            const bool b_ball = b.type == DslType::BallVal || b.type == DslType::PolyballVal;
            if (a_ball && b_ball) return {DslType::PolyballVal, factors(a) + factors(b)};
            throw ParseError(line, "cannot multiply " + dsl_type_name(a.type) + " and " +
                                       dsl_type_name(b.type));
        }
        if (op == '/') {
            if (a.type == DslType::Scalar && b.type == DslType::Scalar)
                return {DslType::Scalar, 0};
            if (a.type == DslType::PolyVal && b.type == DslType::Scalar) return a;
            throw ParseError(line, "division is defined for field elements only");
        }
        if (op == '^') {
            if (b.type != DslType::Scalar)
                throw ParseError(line, "exponents must be constants");
            if (a.type == DslType::Scalar || a.type == DslType::PolyVal ||
                a.type == DslType::CValue)
                return a;
            throw ParseError(line, "cannot exponentiate " + dsl_type_name(a.type));
        }
        throw ParseError(line, std::string("unknown operator '") + op + "'");
    }

    TypeInfo type_of_call(const ExprPtr& e, int line) {
        const std::string& f = e->name;
        auto want_args = [&](size_t n) {
            if (e->args.size() != n)
                throw ParseError(line, "'" + f + "' takes " + std::to_string(n) +
                                           (n == 1 ? " argument" : " arguments"));
        };
        auto want_sep = [&](char sep) {
            if (e->args.size() > 1 && e->sep != sep)
                throw SyntaxError(line, e->col,
                                  std::string("'") + f + "' arguments are separated by '" +
                                      sep + "'");
        };
        if (f == "oball" || f == "cball") {
            want_args(2);
            want_sep(',');
            for (const auto& a : e->args)
                if (type_of(a, line).type != DslType::Scalar)
                    throw ParseError(line, "'" + f + "' takes a center and a radius exponent");
            return {DslType::BallVal, 1};
        }
        if (f == "chi") {
            want_args(1);
            const TypeInfo a = type_of(e->args[0], line);
            if (a.type == DslType::BallVal) return {DslType::FnVal, 1};
            if (a.type == DslType::PolyballVal) return {DslType::FnVal, a.arity};
            throw ParseError(line, "'chi' takes a ball or a product of balls");
        }
        if (f == "expchar") {
            want_args(1);
            const TypeInfo a = type_of(e->args[0], line);
            if (a.type == DslType::Scalar) return {DslType::FnVal, 0};
            if (a.type == DslType::PolyVal) return {DslType::FnVal, a.arity};
            throw ParseError(line, "'expchar' takes a polynomial phase");
        }
        if (f == "nu") {
            want_args(1);
            if (type_of(e->args[0], line).type != DslType::Scalar)
                throw ParseError(line, "'nu' takes a field element");
            return {DslType::FnVal, 2};
        }
        if (f == "packet") {
            want_args(3);
            want_sep(';');
            const TypeInfo support = type_of(e->args[0], line);
            if (support.type != DslType::BallVal && support.type != DslType::PolyballVal)
                throw ParseError(line, "packet support must be a ball or a product of balls");
            const int arity = support.type == DslType::BallVal ? 1 : support.arity;
            const TypeInfo phase = type_of(e->args[1], line);
            if (phase.type != DslType::Scalar && phase.type != DslType::PolyVal)
                throw ParseError(line, "packet phase must be a polynomial");
            if (phase.type == DslType::PolyVal && phase.arity > arity)
                throw ArityMismatchError(line, "packet phase uses x" +
                                                   std::to_string(phase.arity) +
                                                   " but the support has " +
                                                   std::to_string(arity) + " coordinates");
            const TypeInfo coeff = type_of(e->args[2], line);
            if (coeff.type != DslType::CValue && coeff.type != DslType::Scalar)
                throw ParseError(line, "packet coefficient must be a ring value");
            return {DslType::FnVal, arity};
        }
        if (f == "regular") {
            want_args(1);
            const TypeInfo a = type_of(e->args[0], line);
            if (a.type != DslType::FnVal) throw ParseError(line, "'regular' takes a function");
            return {DslType::DistVal, a.arity};
        }
        if (f == "fourier") {
            want_args(1);
            const TypeInfo a = type_of(e->args[0], line);
            if (a.type == DslType::FnVal || a.type == DslType::DistVal) return a;
            throw ParseError(line, "'fourier' takes a function or a distribution");
        }
        if (f == "tensor" || f == "conv") {
            want_args(2);
            want_sep(',');
            const TypeInfo a = type_of(e->args[0], line);
            const TypeInfo b = type_of(e->args[1], line);
            if (a.type != DslType::DistVal || b.type != DslType::DistVal)
                throw ParseError(line, "'" + f + "' takes two distributions");
            if (f == "conv" && a.arity != b.arity)
                throw ArityMismatchError(line, "cannot convolve a " + std::to_string(a.arity) +
                                                   "-ary and a " + std::to_string(b.arity) +
                                                   "-ary distribution");
            return {DslType::DistVal, f == "tensor" ? a.arity + b.arity : a.arity};
        }
        throw UndefinedNameError(line, f);
    }

    void check(const Statement& s) {
        switch (s.kind) {
            case Statement::Kind::Definition: {
                const TypeInfo info = type_of(s.expr, s.line);
                if (info.type == DslType::PolyVal)
                    throw ParseError(s.line,
                                     "free coordinates are only allowed inside expchar "
                                     "arguments and packet phases");
                table[s.name] = info;
                return;
            }
            case Statement::Kind::Option:
                return;
            case Statement::Kind::Integrate:
            case Statement::Kind::Fourier:
            case Statement::Kind::Oracle:
                require_fn(s.operands[0], s.line);
                return;
            case Statement::Kind::Convolve: {
                const TypeInfo a = require_fn(s.operands[0], s.line);
                const TypeInfo b = require_fn(s.operands[1], s.line);
                if (a.arity != b.arity)
                    throw ArityMismatchError(s.line, "cannot convolve a " +
                                                         std::to_string(a.arity) +
                                                         "-ary and a " +
                                                         std::to_string(b.arity) +
                                                         "-ary function");
                return;
            }
            case Statement::Kind::Verify: {
                const size_t fns = (s.name == "inversion") ? 1 : (s.name == "poisson") ? 1 : 2;
                const bool group_required = s.name == "poisson";
                const size_t min_ops = fns + (group_required ? 1 : 0);
                const size_t max_ops = fns + 1;
                if (s.operands.size() < min_ops || s.operands.size() > max_ops)
                    throw ParseError(s.line, "'verify " + s.name + "' takes " +
                                                 std::to_string(min_ops) +
                                                 (min_ops == max_ops
                                                      ? ""
                                                      : " or " + std::to_string(max_ops)) +
                                                 " operands");
                TypeInfo first = require_fn(s.operands[0], s.line);
                for (size_t k = 1; k < fns; ++k) {
                    const TypeInfo other = require_fn(s.operands[k], s.line);
                    if (other.arity != first.arity)
                        throw ArityMismatchError(s.line,
                                                 "operand arities disagree: " +
                                                     std::to_string(first.arity) + " vs " +
                                                     std::to_string(other.arity));
                }
                if (s.operands.size() > fns) {
                    const TypeInfo group = require_group(s.operands.back(), s.line);
                    const int factors = group.type == DslType::BallVal ? 1 : group.arity;
                    if (factors != first.arity)
                        throw ArityMismatchError(
                            s.line, "the subgroup has " + std::to_string(factors) +
                                        " factors but the function is " +
                                        std::to_string(first.arity) + "-ary");
                }
                return;
            }
            case Statement::Kind::Weil: {
                const TypeInfo info = require_fn(s.operands[0], s.line);
                if (info.arity != 2)
                    throw ArityMismatchError(
                        s.line, "the group action needs a 2-ary function, got arity " +
                                    std::to_string(info.arity));
                try {
                    parse_sl2_word(s.text);
                } catch (const ParseError&) {
                    throw;
                } catch (const EngineError& err) {
                    throw ParseError(s.line, err.what());
                }
                return;
            }
            case Statement::Kind::LimitSet: {
                VfPoly g = [&] {
                    try {
                        return parse_polynomial(s.text, 2);
                    } catch (const ParseError&) {
                        throw;
                    } catch (const EngineError& err) {
                        throw ParseError(s.line, err.what());
                    }
                }();
                if (g.nvars() > 2)
                    throw ParseError(s.line, "limit-set takes a binary polynomial");
                return;
            }
        }
    }
};

// --------------------------------------------------------------- printing

int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Bin:
            if (e->op == '+' || e->op == '-') return 1;
            if (e->op == '*' || e->op == '/') return 2;
            return 3;  // '^'
        case Expr::Kind::Neg:
            return 2;
        default:
            return 4;
    }
}

void print_expr(const ExprPtr& e, std::ostream& out);

void print_child(const ExprPtr& child, int min_prec, std::ostream& out) {
    if (precedence(child) < min_prec) {
        out << '(';
        print_expr(child, out);
        out << ')';
    } else {
        print_expr(child, out);
    }
}

void print_expr(const ExprPtr& e, std::ostream& out) {
    switch (e->kind) {
        case Expr::Kind::Rational:
            out << e->number.get_str();
            return;
        case Expr::Kind::Imaginary:
            out << e->number.get_str() << 'i';
            return;
        case Expr::Kind::TLit:
            out << 't';
            return;
        case Expr::Kind::ELit:
            out << 'e';
            return;
        case Expr::Kind::ILit:
            out << 'i';
            return;
        case Expr::Kind::BigO:
            out << "O[" << e->number.get_str() << ']';
            return;
        case Expr::Kind::BigC:
            out << "C[" << e->number.get_str() << ']';
            return;
        case Expr::Kind::ExpOmega:
            out << "exp{";
            print_expr(e->args[0], out);
            out << '}';
            return;
        case Expr::Kind::Var:
            out << 'x' << (e->var + 1);
            return;
        case Expr::Kind::Ref:
            out << e->name;
            return;
        case Expr::Kind::Neg:
            out << '-';
            // A negated sum, product, or quotient needs its own group; the
            // grammar binds '-' more tightly than '*'.
            print_child(e->args[0], 3, out);
            return;
        case Expr::Kind::Call: {
            out << e->name << '(';
            const char* sep = (e->sep == ';') ? "; " : ", ";
            for (size_t k = 0; k < e->args.size(); ++k) {
                if (k) out << sep;
                print_expr(e->args[k], out);
            }
            out << ')';
            return;
        }
        case Expr::Kind::Bin: {
            const int prec = precedence(e);
            if (e->op == '^') {
                print_child(e->args[0], 4, out);
                out << '^';
                const ExprPtr& exp = e->args[1];
                if (exp->kind == Expr::Kind::Neg) {
                    out << '-';
                    print_child(exp->args[0], 4, out);
                } else {
                    print_child(exp, 4, out);
                }
                return;
            }
            print_child(e->args[0], prec, out);
            out << ' ' << e->op << ' ';
            print_child(e->args[1], prec + 1, out);
            return;
        }
    }
}

std::string escape_quoted(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// -------------------------------------------- scalar / polynomial evaluation

VfElem eval_scalar_node(const ExprPtr& e);

// The exponent of '^' must reduce to a rational constant.
Rat scalar_rational(const ExprPtr& e, const std::string& what) {
    const VfElem v = eval_scalar_node(e);
    if (!v.is_constant())
        throw ParseError(e->line, what + " must be a rational constant");
    const GaussQ c = v.constant_value();
    if (!c.is_rational())
        throw ParseError(e->line, what + " must be a rational constant");
    return c.re();
}

long scalar_integer(const ExprPtr& e, const std::string& what) {
    const Rat q = scalar_rational(e, what);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw ParseError(e->line, what + " must be an integer");
    return q.get_num().get_si();
}

VfElem eval_scalar_node(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Rational:
            return VfElem(e->number);
        case Expr::Kind::Imaginary:
            return VfElem(e->number) * VfElem::i();
        case Expr::Kind::TLit:
            return VfElem::t_pow(Rat(1));
        case Expr::Kind::ILit:
            return VfElem::i();
        case Expr::Kind::Neg:
            return -eval_scalar_node(e->args[0]);
        case Expr::Kind::Bin: {
            if (e->op == '^') {
                if (e->args[0]->kind == Expr::Kind::TLit)
                    return VfElem::t_pow(scalar_rational(e->args[1], "the exponent of t"));
                const VfElem base = eval_scalar_node(e->args[0]);
                return base.pow(scalar_integer(e->args[1], "the exponent"));
            }
            const VfElem a = eval_scalar_node(e->args[0]);
            const VfElem b = eval_scalar_node(e->args[1]);
            switch (e->op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a * b.inverse();
            }
            throw ParseError(e->line, "malformed expression");
        }
        default:
            throw ParseError(e->line, "expected a field element");
    }
}

std::optional<VfElem> poly_constant(const VfPoly& p) {
    if (p.is_zero()) return VfElem(0L);
    if (p.terms().size() != 1) return std::nullopt;
    const auto& [exps, coeff] = *p.terms().begin();
    for (long k : exps)
        if (k != 0) return std::nullopt;
    return coeff;
}

VfPoly eval_poly_node(const ExprPtr& e, int nvars) {
    switch (e->kind) {
        case Expr::Kind::Rational:
        case Expr::Kind::Imaginary:
        case Expr::Kind::TLit:
        case Expr::Kind::ILit:
            return VfPoly::constant(nvars, eval_scalar_node(e));
        case Expr::Kind::Var:
            return VfPoly::variable(nvars, e->var);
        case Expr::Kind::Neg:
            return -eval_poly_node(e->args[0], nvars);
        case Expr::Kind::Bin: {
            if (e->op == '^') {
                if (e->args[0]->kind == Expr::Kind::TLit)
                    return VfPoly::constant(
                        nvars,
                        VfElem::t_pow(scalar_rational(e->args[1], "the exponent of t")));
                const long k = scalar_integer(e->args[1], "the exponent");
                const VfPoly base = eval_poly_node(e->args[0], nvars);
                if (k < 0) {
                    const auto c = poly_constant(base);
                    if (!c) throw ParseError(e->line, "negative powers need a constant base");
                    return VfPoly::constant(nvars, c->pow(k));
                }
                VfPoly acc = VfPoly::constant(nvars, VfElem(1L));
                for (long j = 0; j < k; ++j) acc = acc * base;
                return acc;
            }
            const VfPoly a = eval_poly_node(e->args[0], nvars);
            const VfPoly b = eval_poly_node(e->args[1], nvars);
            switch (e->op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': {
                    const auto c = poly_constant(b);
                    if (!c) throw ParseError(e->line, "division by a non-constant polynomial");
                    return a.scaled(c->inverse());
                }
            }
            throw ParseError(e->line, "malformed expression");
        }
        default:
            throw ParseError(e->line, "not valid inside a polynomial");
    }
}

}  // namespace

int max_coordinate(const ExprPtr& e) {
    int best = -1;
    if (e->kind == Expr::Kind::Var) best = e->var;
    for (const auto& a : e->args) best = std::max(best, max_coordinate(a));
    return best;
}

std::string dsl_type_name(DslType t) {
    switch (t) {
        case DslType::Scalar: return "a field element";
        case DslType::BallVal: return "a ball";
        case DslType::PolyballVal: return "a product of balls";
        case DslType::CValue: return "a ring value";
        case DslType::PolyVal: return "a polynomial";
        case DslType::FnVal: return "a function";
        case DslType::DistVal: return "a distribution";
    }
    return "an unknown value";
}

Script parse(const std::string& source) {
    Script script;
    int line = 0;
    std::istringstream stream(source);
    std::string text;
    while (std::getline(stream, text)) {
        ++line;
        const std::vector<Token> toks = lex_line(text, line);
        if (toks.size() == 1) continue;  // blank or comment-only line
        script.statements.push_back(parse_statement(toks, line));
    }
    validate(script);
    return script;
}

std::map<std::string, TypeInfo> validate(const Script& script) {
    Validator v;
    for (const Statement& s : script.statements) v.check(s);
    return v.table;
}

std::string print(const Script& script) {
    std::ostringstream out;
    for (const Statement& s : script.statements) {
        switch (s.kind) {
            case Statement::Kind::Definition:
                out << s.name << " = ";
                print_expr(s.expr, out);
                break;
            case Statement::Kind::Option:
                out << "option " << s.name << ' ' << s.option_value;
                break;
            case Statement::Kind::Integrate:
                out << "integrate " << s.operands[0];
                break;
            case Statement::Kind::Fourier:
                out << "fourier " << s.operands[0];
                break;
            case Statement::Kind::Convolve:
                out << "convolve " << s.operands[0] << ' ' << s.operands[1];
                break;
            case Statement::Kind::Verify: {
                out << "verify " << s.name;
                for (const auto& op : s.operands) out << ' ' << op;
                break;
            }
            case Statement::Kind::Weil:
                out << "weil \"" << escape_quoted(s.text) << "\" " << s.operands[0];
                break;
            case Statement::Kind::LimitSet:
                out << "limit-set \"" << escape_quoted(s.text) << "\"";
                break;
            case Statement::Kind::Oracle:
                out << "oracle " << s.operands[0];
                break;
        }
        out << '\n';
    }
    return out.str();
}

ExprPtr parse_expression(const std::string& text, int line) {
    const std::vector<Token> toks = lex_line(text, line);
    ExprParser p(toks, line);
    ExprPtr e = p.parse_expr();
    if (toks[p.position()].kind != Tok::End)
        throw SyntaxError(line, toks[p.position()].col, "unexpected trailing input");
    return e;
}

VfPoly parse_polynomial(const std::string& text, int min_vars) {
    const ExprPtr e = parse_expression(text);
    const int nvars = std::max(min_vars, max_coordinate(e) + 1);
    return eval_poly_node(e, nvars);
}

std::vector<VfElem> parse_point(const std::string& text) {
    const std::vector<Token> toks = lex_line(text, 1);
    std::vector<VfElem> out;
    ExprParser p(toks, 1);
    if (toks[p.position()].kind == Tok::End) return out;
    for (;;) {
        out.push_back(eval_scalar_node(p.parse_expr()));
        if (toks[p.position()].kind == Tok::End) break;
        if (!p.at_punct(','))
            throw SyntaxError(1, toks[p.position()].col, "expected ',' between coordinates");
        p.take();
    }
    return out;
}

SL2Word parse_sl2_word(const std::string& text) {
    const std::vector<Token> toks = lex_line(text, 1);
    SL2Word word;
    ExprParser p(toks, 1);
    if (toks[p.position()].kind == Tok::End) return word;
    for (;;) {
        if (toks[p.position()].kind != Tok::Ident)
            throw SyntaxError(1, toks[p.position()].col, "expected w, u(...), or s(...)");
        const Token head = p.take();
        if (head.text == "w") {
            word.push_back(sl2_w());
        } else if (head.text == "u" || head.text == "s") {
            p.expect_punct('(', "after '" + head.text + "'");
            const VfElem a = eval_scalar_node(p.parse_expr());
            p.expect_punct(')', "to close '" + head.text + "('");
            word.push_back(head.text == "u" ? sl2_u(a) : sl2_s(a));
        } else {
            throw SyntaxError(1, head.col, "unknown group generator '" + head.text + "'");
        }
        if (toks[p.position()].kind == Tok::End) break;
        if (!p.at_punct(','))
            throw SyntaxError(1, toks[p.position()].col, "expected ',' between generators");
        p.take();
    }
    return word;
}

}  // namespace motfourier
