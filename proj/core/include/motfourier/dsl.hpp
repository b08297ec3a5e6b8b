/*
 * Line-oriented script language for the engine: definitions of field
 * elements, balls, functions, and distributions, plus commands that run
 * integrals, transforms, identity checks, group-action words, limit sets,
 * and numeric cross-checks.
 *
 * Grammar.  One statement per line; `#` starts a comment; blank lines are
 * skipped.  Expressions use explicit operators only (no implicit
 * multiplication) with precedence `^` above `*` and `/` above `+` and `-`,
 * and `×` accepted as a synonym for `*`.  Literals come from the module
 * vocabularies:
 *
 *   field elements   integers, rationals `1/2`, `i`, `2i`, `t^gamma`
 *   value ring       `O[gamma]`, `C[gamma]`, `e`, `e^-1`, `exp{<vf>}`
 *   balls            `oball(<vf>, <gamma>)`, `cball(<vf>, <gamma>)`,
 *                    products with `*` or `×`
 *   functions        `chi(<ball>)`, `expchar(<poly>)`, `nu(<vf>)`,
 *                    `packet(<ball>; <poly>; <coeff>)`
 *   distributions    `regular(<fn>)`, `fourier(<dist>)`,
 *                    `tensor(<d1>,<d2>)`, `conv(<d1>,<d2>)`
 *   variables        `x1`, `x2`, ... (aliases `x`, `y`), only inside
 *                    `expchar` arguments and `packet` phases
 *
 * Statements:
 *
 *   <name> = <expr>
 *   option <key> <integer>            # keys: p, level
 *   integrate <fn>
 *   fourier <fn>
 *   convolve <fn> <fn>
 *   verify inversion <fn> [<subgroup>]
 *   verify convolution <fn> <fn> [<subgroup>]
 *   verify plancherel <fn> <fn> [<subgroup>]
 *   verify poisson <fn> <subgroup>
 *   weil "<word>" <fn>                # word like  w,u(t),s(t^-1)
 *   limit-set "<polynomial>"          # binary polynomial in x, y
 *   oracle <fn>
 *
 * parse() builds the statement list and validates it: every referenced
 * name must be defined on an earlier line (UndefinedName), operand arities
 * must agree (ArityMismatch), and malformed text raises SyntaxError with
 * line and column.  print() renders a script back to canonical text;
 * parsing that text reproduces the same statement list.
 */
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "motfourier/newton.hpp"
#include "motfourier/valfield.hpp"
#include "motfourier/weil.hpp"

namespace motfourier {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression tree.  `number` holds rational literals (plain, imaginary
// coefficients, and bracket indices), `name` the callee or referenced
// definition, `args` the children.
struct Expr {
    enum class Kind {
        Rational,   // number
        Imaginary,  // number * i, written "<n>i"
        TLit,       // the uniformizer variable t
        ELit,       // the dual-volume unit e
        ILit,       // the imaginary unit i
        BigO,       // O[number]
        BigC,       // C[number]
        ExpOmega,   // exp{args[0]}
        Var,        // coordinate x<var+1>
        Ref,        // reference to an earlier definition
        Call,       // name(args...), separator sep
        Neg,        // -args[0]
        Bin,        // args[0] op args[1]
    };

    Kind kind;
    Rat number = Rat(0);
    int var = 0;
    std::string name;
    char op = 0;
    char sep = ',';
    std::vector<ExprPtr> args;
    int line = 0;
    int col = 0;
};

struct Statement {
    enum class Kind {
        Definition,  // name = expr
        Option,      // option name value
        Integrate,   // integrate operands[0]
        Fourier,     // fourier operands[0]
        Convolve,    // convolve operands[0] operands[1]
        Verify,      // verify name operands...
        Weil,        // weil "text" operands[0]
        LimitSet,    // limit-set "text"
        Oracle,      // oracle operands[0]
    };

    Kind kind;
    int line = 0;
    std::string name;                   // definition name / verify kind / option key
    std::vector<std::string> operands;  // command operand names
    std::string text;                   // quoted word or polynomial
    ExprPtr expr;                       // definition right-hand side
    long option_value = 0;
};

struct Script {
    std::vector<Statement> statements;
};

// The static type of a script value, used by validation and by callers
// that need to dispatch on a definition before evaluating it.
enum class DslType { Scalar, BallVal, PolyballVal, CValue, PolyVal, FnVal, DistVal };

struct TypeInfo {
    DslType type = DslType::Scalar;
    int arity = 0;  // function/distribution arity, polyball factor count
};

std::string dsl_type_name(DslType t);

// Parse and validate; throws SyntaxError / UndefinedName / ArityMismatch.
Script parse(const std::string& source);

// Canonical rendering; parse(print(s)) reproduces s's statement list.
std::string print(const Script& script);

// Validation alone (parse already runs it); returns the final symbol table.
std::map<std::string, TypeInfo> validate(const Script& script);

// One expression (no statement syntax) from `text`, as used by command-line
// operands; line is used for error reporting only.
ExprPtr parse_expression(const std::string& text, int line = 1);

// Highest coordinate index mentioned in the tree, or -1 when there is none.
int max_coordinate(const ExprPtr& e);

// Exact polynomial in x1..xn (aliases x, y) with `+ - * ^` and t^gamma
// coefficients; the variable count is the larger of min_vars and the
// highest index mentioned.
VfPoly parse_polynomial(const std::string& text, int min_vars = 1);

// Comma-separated field elements, e.g. "t^-1, 1+2i".
std::vector<VfElem> parse_point(const std::string& text);

// Group word like "w,u(t),s(t^-1)" (leftmost factor written first).
SL2Word parse_sl2_word(const std::string& text);

}  // namespace motfourier
