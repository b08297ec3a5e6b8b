#include "motfourier/engine.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "motfourier/errors.hpp"
#include "motfourier/fourier.hpp"
#include "motfourier/integrate.hpp"
#include "motfourier/newton.hpp"
#include "motfourier/padic.hpp"
#include "motfourier/weil.hpp"

namespace motfourier {

namespace {

using ojson = nlohmann::ordered_json;

// ------------------------------------------------------------- evaluation

class Evaluator {
public:
    Evaluator(const std::map<std::string, Value>& env, int line) : env_(env), line_(line) {}

    Value eval(const ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::Rational:
                return VfElem(e->number);
            case Expr::Kind::Imaginary:
                return VfElem(e->number) * VfElem::i();
            case Expr::Kind::TLit:
                return VfElem::t_pow(Rat(1));
            case Expr::Kind::ILit:
                return VfElem::i();
            case Expr::Kind::ELit:
                return CElem(MotElem::e(1));
            case Expr::Kind::BigO:
                return CElem(MotElem::o(e->number));
            case Expr::Kind::BigC:
                return CElem(MotElem::c(e->number));
            case Expr::Kind::ExpOmega:
                return CElem::character(theta(scalar(e->args[0])));
            case Expr::Kind::Var:
                throw ParseError(line_,
                                 "free coordinates are only allowed inside expchar "
                                 "arguments and packet phases");
            case Expr::Kind::Ref: {
                auto it = env_.find(e->name);
                if (it == env_.end()) throw UndefinedNameError(line_, e->name);
                return it->second;
            }
            case Expr::Kind::Neg:
                return negate(eval(e->args[0]));
            case Expr::Kind::Bin:
                return binary(e);
            case Expr::Kind::Call:
                return call(e);
        }
        throw ParseError(line_, "malformed expression");
    }

private:
    VfElem scalar(const ExprPtr& e) {
        Value v = eval(e);
        if (auto* x = std::get_if<VfElem>(&v)) return *x;
        throw ParseError(line_, "expected a field element");
    }

    Rat rational(const ExprPtr& e, const std::string& what) {
        const VfElem v = scalar(e);
        if (!v.is_constant() || !v.constant_value().is_rational())
            throw ParseError(line_, what + " must be a rational constant");
        return v.constant_value().re();
    }

    long integer(const ExprPtr& e, const std::string& what) {
        const Rat q = rational(e, what);
        if (q.get_den() != 1 || !q.get_num().fits_slong_p())
            throw ParseError(line_, what + " must be an integer");
        return q.get_num().get_si();
    }

    // Promote an integer constant of the field into the value ring.
    std::optional<CElem> as_cvalue(const Value& v) {
        if (const auto* c = std::get_if<CElem>(&v)) return *c;
        if (const auto* x = std::get_if<VfElem>(&v)) {
            if (!x->is_constant() || !x->constant_value().is_rational()) return std::nullopt;
            const Rat q = x->constant_value().re();
            if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return std::nullopt;
            return CElem(q.get_num().get_si());
        }
        return std::nullopt;
    }

    CElem cvalue(const ExprPtr& e) {
        const auto c = as_cvalue(eval(e));
        if (!c)
            throw ParseError(line_,
                             "expected a ring value (the value ring has integer "
                             "coefficients)");
        return *c;
    }

    Polyball as_polyball(const Value& v) {
        if (const auto* b = std::get_if<Ball>(&v)) return Polyball({*b});
        if (const auto* pb = std::get_if<Polyball>(&v)) return *pb;
        throw ParseError(line_, "expected a ball or a product of balls");
    }

    Value negate(Value v) {
        if (auto* x = std::get_if<VfElem>(&v)) return -*x;
        if (auto* c = std::get_if<CElem>(&v)) return -*c;
        if (auto* f = std::get_if<MotFn>(&v)) return fn_neg(*f);
        throw ParseError(line_, "cannot negate this value");
    }

    Value binary(const ExprPtr& e) {
        const char op = e->op;
        if (op == '^') {
            if (e->args[0]->kind == Expr::Kind::TLit)
                return VfElem::t_pow(rational(e->args[1], "the exponent of t"));
            Value base = eval(e->args[0]);
            const long k = integer(e->args[1], "the exponent");
            if (auto* x = std::get_if<VfElem>(&base)) return x->pow(k);
            if (auto* c = std::get_if<CElem>(&base)) return cpow(*c, k);
            throw ParseError(line_, "cannot exponentiate this value");
        }
        Value a = eval(e->args[0]);
        Value b = eval(e->args[1]);
        switch (op) {
            case '+': return add(std::move(a), std::move(b), false);
            case '-': return add(std::move(a), std::move(b), true);
            case '*': return mul(std::move(a), std::move(b));
            case '/': {
                auto* x = std::get_if<VfElem>(&a);
                auto* y = std::get_if<VfElem>(&b);
                if (x && y) return *x * y->inverse();
                throw ParseError(line_, "division is defined for field elements only");
            }
        }
        throw ParseError(line_, "malformed expression");
    }

    Value add(Value a, Value b, bool subtract) {
        if (auto* x = std::get_if<VfElem>(&a))
            if (auto* y = std::get_if<VfElem>(&b)) return subtract ? *x - *y : *x + *y;
        if (auto* f = std::get_if<MotFn>(&a))
            if (auto* g = std::get_if<MotFn>(&b))
                return fn_add(*f, subtract ? fn_neg(*g) : *g);
        const auto ca = as_cvalue(a);
        const auto cb = as_cvalue(b);
        if (ca && cb) return subtract ? *ca - *cb : *ca + *cb;
        throw ParseError(line_, "cannot combine these values with '+'/'-'");
    }

    Value mul(Value a, Value b) {
        if (auto* x = std::get_if<VfElem>(&a))
            if (auto* y = std::get_if<VfElem>(&b)) return *x * *y;
        if (auto* f = std::get_if<MotFn>(&a))
            if (auto* g = std::get_if<MotFn>(&b)) return fn_mul(*f, *g);
        if (auto* f = std::get_if<MotFn>(&a)) {
            const auto c = as_cvalue(b);
            if (c) return fn_scale(*f, *c);
        }
        if (auto* g = std::get_if<MotFn>(&b)) {
            const auto c = as_cvalue(a);
            if (c) return fn_scale(*g, *c);
        }
        {
            const auto ca = as_cvalue(a);
            const auto cb = as_cvalue(b);
            if (ca && cb) return *ca * *cb;
        }
        const bool a_ball = std::holds_alternative<Ball>(a) || std::holds_alternative<Polyball>(a);
        const bool b_ball = std::holds_alternative<Ball>(b) || std::holds_alternative<Polyball>(b);
        if (a_ball && b_ball) {
            std::vector<Ball> factors = as_polyball(a).factors();
            const Polyball right = as_polyball(b);
            for (const Ball& f : right.factors()) factors.push_back(f);
            return Polyball(std::move(factors));
        }
        throw ParseError(line_, "cannot multiply these values");
    }

    CElem cpow(const CElem& base, long k) {
        if (k >= 0) {
            CElem acc(1);
            for (long j = 0; j < k; ++j) acc *= base;
            return acc;
        }
        if (base == CElem(MotElem::e(1))) return CElem(MotElem::e(k));
        if (base == CElem(MotElem::e(-1))) return CElem(MotElem::e(-k));
        throw ParseError(line_, "negative powers are defined for the unit e only");
    }

    // ---------------------------------------------- polynomial subtrees

    VfPoly poly(const ExprPtr& e, int nvars) {
        switch (e->kind) {
            case Expr::Kind::Var:
                if (e->var >= nvars)
                    throw ArityMismatchError(line_, "coordinate x" + std::to_string(e->var + 1) +
                                                        " exceeds the declared arity");
                return VfPoly::variable(nvars, e->var);
            case Expr::Kind::Neg:
                return -poly(e->args[0], nvars);
            case Expr::Kind::Bin: {
                const char op = e->op;
                if (op == '^') {
                    if (e->args[0]->kind == Expr::Kind::TLit)
                        return VfPoly::constant(
                            nvars, VfElem::t_pow(rational(e->args[1], "the exponent of t")));
                    const long k = integer(e->args[1], "the exponent");
                    const VfPoly base = poly(e->args[0], nvars);
                    if (k < 0) {
                        const auto c = constant_of(base);
                        if (!c)
                            throw ParseError(line_, "negative powers need a constant base");
                        return VfPoly::constant(nvars, c->pow(k));
                    }
                    VfPoly acc = VfPoly::constant(nvars, VfElem(1L));
                    for (long j = 0; j < k; ++j) acc = acc * base;
                    return acc;
                }
                const VfPoly a = poly(e->args[0], nvars);
                const VfPoly b = poly(e->args[1], nvars);
                switch (op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    case '/': {
                        const auto c = constant_of(b);
                        if (!c)
                            throw ParseError(line_, "division by a non-constant polynomial");
                        return a.scaled(c->inverse());
                    }
                }
                throw ParseError(line_, "malformed expression");
            }
            default:
                return VfPoly::constant(nvars, scalar(e));
        }
    }

    static std::optional<VfElem> constant_of(const VfPoly& p) {
        if (p.is_zero()) return VfElem(0L);
        if (p.terms().size() != 1) return std::nullopt;
        const auto& [exps, coeff] = *p.terms().begin();
        for (long k : exps)
            if (k != 0) return std::nullopt;
        return coeff;
    }

    Phase phase_from_poly(const VfPoly& p) {
        Phase ph;
        for (const auto& [exps, coeff] : p.terms()) {
            long degree = 0;
            for (long k : exps) degree += k;
            if (degree == 0) {
                ph.add_constant(coeff);
            } else if (degree == 1) {
                for (size_t i = 0; i < exps.size(); ++i)
                    if (exps[i] == 1) ph.add_linear(static_cast<int>(i), coeff);
            } else if (degree == 2) {
                int first = -1, second = -1;
                for (size_t i = 0; i < exps.size(); ++i) {
                    if (exps[i] == 2) first = second = static_cast<int>(i);
                    if (exps[i] == 1) (first < 0 ? first : second) = static_cast<int>(i);
                }
                ph.add_bilinear(first, second, coeff);
            } else {
                throw UnsupportedPhaseError("phase has a term of degree " +
                                            std::to_string(degree));
            }
        }
        return ph;
    }

    // -------------------------------------------------------- constructors

    Value call(const ExprPtr& e) {
        const std::string& f = e->name;
        if (f == "oball" || f == "cball") {
            const VfElem center = scalar(e->args[0]);
            const Rat radius = rational(e->args[1], "the radius exponent");
            return f == "oball" ? Ball::open(center, radius) : Ball::closed(center, radius);
        }
        if (f == "chi") return chi(as_polyball(eval(e->args[0])));
        if (f == "expchar") {
            const int nvars = max_coordinate(e->args[0]) + 1;
            if (nvars == 0)
                return const_fn(0, CElem::character(theta(scalar(e->args[0]))));
            const Phase ph = phase_from_poly(poly(e->args[0], nvars));
            return MotFn(nvars, {WavePacket(nvars, {}, ph, CElem(1))});
        }
        if (f == "nu") return nu_char(scalar(e->args[0]));
        if (f == "packet") {
            const Polyball support = as_polyball(eval(e->args[0]));
            const int arity = support.arity();
            std::vector<Constraint> constraints;
            constraints.reserve(support.factors().size());
            for (int i = 0; i < arity; ++i)
                constraints.push_back(plain_constraint(i, support.factors()[i]));
            const Phase ph = phase_from_poly(poly(e->args[1], arity));
            return MotFn(arity, {WavePacket(arity, std::move(constraints), ph,
                                            cvalue(e->args[2]))});
        }
        if (f == "regular") {
            Value v = eval(e->args[0]);
            if (auto* fn = std::get_if<MotFn>(&v)) return Dist::regular(*fn);
            throw ParseError(line_, "'regular' takes a function");
        }
        if (f == "fourier") {
            Value v = eval(e->args[0]);
            if (auto* fn = std::get_if<MotFn>(&v)) return fourier0(*fn);
            if (auto* d = std::get_if<Dist>(&v)) return Dist::fourier_of(*d);
            throw ParseError(line_, "'fourier' takes a function or a distribution");
        }
        if (f == "tensor" || f == "conv") {
            Value va = eval(e->args[0]);
            Value vb = eval(e->args[1]);
            auto* da = std::get_if<Dist>(&va);
            auto* db = std::get_if<Dist>(&vb);
            if (!da || !db) throw ParseError(line_, "'" + f + "' takes two distributions");
            return f == "tensor" ? Dist::tensor(*da, *db) : Dist::convolution(*da, *db);
        }
        throw UndefinedNameError(line_, f);
    }

    const std::map<std::string, Value>& env_;
    int line_;
};

// --------------------------------------------------------------- commands

std::string kind_name(Statement::Kind k) {
    switch (k) {
        case Statement::Kind::Definition: return "define";
        case Statement::Kind::Option: return "option";
        case Statement::Kind::Integrate: return "integrate";
        case Statement::Kind::Fourier: return "fourier";
        case Statement::Kind::Convolve: return "convolve";
        case Statement::Kind::Verify: return "verify";
        case Statement::Kind::Weil: return "weil";
        case Statement::Kind::LimitSet: return "limit-set";
        case Statement::Kind::Oracle: return "oracle";
    }
    return "statement";
}

const Value& lookup(const std::map<std::string, Value>& env, const std::string& name,
                    int line) {
    auto it = env.find(name);
    if (it == env.end()) throw UndefinedNameError(line, name);
    return it->second;
}

const MotFn& fn_operand(const std::map<std::string, Value>& env, const std::string& name,
                        int line) {
    const Value& v = lookup(env, name, line);
    if (const auto* f = std::get_if<MotFn>(&v)) return *f;
    throw ParseError(line, "'" + name + "' is not a function");
}

Polyball group_operand(const std::map<std::string, Value>& env, const std::string& name,
                       int line) {
    const Value& v = lookup(env, name, line);
    if (const auto* b = std::get_if<Ball>(&v)) return Polyball({*b});
    if (const auto* pb = std::get_if<Polyball>(&v)) return *pb;
    throw ParseError(line, "'" + name + "' is not a ball or a product of balls");
}

std::string value_kind(const Value& v) {
    if (std::holds_alternative<VfElem>(v)) return "field element";
    if (std::holds_alternative<Ball>(v)) return "ball";
    if (std::holds_alternative<Polyball>(v)) return "product of balls";
    if (std::holds_alternative<CElem>(v)) return "ring value";
    if (const auto* f = std::get_if<MotFn>(&v))
        return "function of arity " + std::to_string(f->arity());
    if (const auto* d = std::get_if<Dist>(&v))
        return "distribution of arity " + std::to_string(d->arity());
    return "value";
}

}  // namespace

Value eval_expression(const ExprPtr& e, const std::map<std::string, Value>& env) {
    return Evaluator(env, e->line).eval(e);
}

RunResult run_script(const Script& script, const RunOptions& options) {
    ojson reports = ojson::array();
    std::ostringstream summary;
    std::map<std::string, Value> env;
    long p = options.p;
    int level = options.level;
    bool all_pass = true;
    bool errored = false;

    auto push_check = [&](const Statement& s, const std::string& command,
                          const CheckReport& rep, const ojson& extra = {}) {
        ojson obj;
        obj["line"] = s.line;
        obj["command"] = command;
        for (auto it = extra.begin(); it != extra.end(); ++it) obj[it.key()] = it.value();
        obj["identity"] = rep.identity;
        obj["lhs"] = rep.lhs;
        obj["rhs"] = rep.rhs;
        obj["status"] = rep.status();
        reports.push_back(obj);
        all_pass = all_pass && rep.pass;
    };

    for (const Statement& s : script.statements) {
        try {
            switch (s.kind) {
                case Statement::Kind::Definition: {
                    Value v = eval_expression(s.expr, env);
                    summary << "defined " << s.name << ": " << value_kind(v) << '\n';
                    env.insert_or_assign(s.name, std::move(v));
                    break;
                }
                case Statement::Kind::Option: {
                    if (s.option_value < 1)
                        throw ParseError(s.line, "option '" + s.name + "' must be positive");
                    if (s.name == "p")
                        p = s.option_value;
                    else
                        level = static_cast<int>(s.option_value);
                    summary << "option " << s.name << " = " << s.option_value << '\n';
                    break;
                }
                case Statement::Kind::Integrate: {
                    const MotFn& f = fn_operand(env, s.operands[0], s.line);
                    const CElem value = integrate(f);
                    ojson obj;
                    obj["line"] = s.line;
                    obj["command"] = "integrate";
                    obj["input"] = s.operands[0];
                    obj["value"] = value.to_string();
                    reports.push_back(obj);
                    summary << "integrate " << s.operands[0] << " = " << value.to_string()
                            << '\n';
                    break;
                }
                case Statement::Kind::Fourier: {
                    const MotFn& f = fn_operand(env, s.operands[0], s.line);
                    const MotFn g = fourier0(f);
                    ojson obj;
                    obj["line"] = s.line;
                    obj["command"] = "fourier";
                    obj["input"] = s.operands[0];
                    obj["result"] = g.to_string();
                    reports.push_back(obj);
                    summary << "fourier " << s.operands[0] << " = " << g.to_string() << '\n';
                    break;
                }
                case Statement::Kind::Convolve: {
                    const MotFn& f = fn_operand(env, s.operands[0], s.line);
                    const MotFn& g = fn_operand(env, s.operands[1], s.line);
                    const MotFn h = convolve(f, g);
                    ojson obj;
                    obj["line"] = s.line;
                    obj["command"] = "convolve";
                    obj["inputs"] = ojson::array({s.operands[0], s.operands[1]});
                    obj["result"] = h.to_string();
                    reports.push_back(obj);
                    summary << "convolve " << s.operands[0] << ' ' << s.operands[1] << " = "
                            << h.to_string() << '\n';
                    break;
                }
                case Statement::Kind::Verify: {
                    const MotFn& f = fn_operand(env, s.operands[0], s.line);
                    const size_t fns = (s.name == "inversion" || s.name == "poisson") ? 1 : 2;
                    FourierConfig cfg;
                    std::optional<Polyball> sub;
                    if (s.operands.size() > fns) {
                        sub = group_operand(env, s.operands.back(), s.line);
                        cfg = FourierConfig::over(*sub);
                    }
                    CheckReport rep;
                    if (s.name == "inversion") {
                        rep = check_inversion(f, cfg);
                    } else if (s.name == "convolution") {
                        rep = check_convolution(f, fn_operand(env, s.operands[1], s.line), cfg);
                    } else if (s.name == "plancherel") {
                        rep = check_plancherel(f, fn_operand(env, s.operands[1], s.line), cfg);
                    } else {
                        rep = check_poisson(f, *sub);
                    }
                    push_check(s, "verify", rep);
                    summary << "verify " << s.name;
                    for (const auto& op : s.operands) summary << ' ' << op;
                    summary << ": " << rep.status() << '\n';
                    break;
                }
                case Statement::Kind::Weil: {
                    const MotFn& f = fn_operand(env, s.operands[0], s.line);
                    const SL2Word word = parse_sl2_word(s.text);
                    const MuFn out = weil_apply(word, MuFn(f, RvElem::one()));
                    ojson obj;
                    obj["line"] = s.line;
                    obj["command"] = "weil";
                    obj["word"] = s.text;
                    obj["input"] = s.operands[0];
                    obj["result"] = mu_to_string(out);
                    reports.push_back(obj);
                    summary << "weil \"" << s.text << "\" " << s.operands[0] << " = "
                            << mu_to_string(out) << '\n';
                    break;
                }
                case Statement::Kind::LimitSet: {
                    const VfPoly g = parse_polynomial(s.text, 2);
                    const LimitResult r = limit_set(g);
                    ojson obj;
                    obj["line"] = s.line;
                    obj["command"] = "limit-set";
                    obj["polynomial"] = s.text;
                    obj["result"] = r.to_string();
                    reports.push_back(obj);
                    summary << "limit-set \"" << s.text << "\" = " << r.to_string() << '\n';
                    break;
                }
                case Statement::Kind::Oracle: {
                    const MotFn& f = fn_operand(env, s.operands[0], s.line);
                    const CElem symbolic = integrate(f);
                    const PadicConfig cfg(p, level);
                    const CheckReport rep = oracle_check(symbolic, f, cfg);
                    ojson extra;
                    extra["input"] = s.operands[0];
                    extra["p"] = p;
                    extra["level"] = level;
                    push_check(s, "oracle", rep, extra);
                    summary << "oracle " << s.operands[0] << " (p = " << p
                            << ", level = " << level << "): " << rep.status() << '\n';
                    break;
                }
            }
        } catch (const EngineError& err) {
            ojson obj;
            obj["line"] = s.line;
            obj["command"] = kind_name(s.kind);
            obj["error"] = err.what();
            reports.push_back(obj);
            summary << "error at line " << s.line << ": " << err.what() << '\n';
            errored = true;
        }
        if (errored) break;
    }

    RunResult out;
    out.exit_code = errored ? 2 : (all_pass ? 0 : 1);
    ojson root;
    root["status"] = errored ? "error" : (all_pass ? "pass" : "fail");
    root["reports"] = reports;
    out.json = root.dump(2) + "\n";
    out.summary = summary.str();
    return out;
}

int thread_cap() {
    if (const char* env = std::getenv("MOTFOURIER_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0') return static_cast<int>(std::max(1L, v));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace motfourier
