/*
 * Script execution: evaluate definitions to runtime values, run commands in
 * order, and collect machine-readable JSON reports plus human-readable
 * summaries.  Identical scripts produce byte-identical JSON across runs and
 * across MOTFOURIER_THREADS settings — every reduction the engine performs
 * iterates ordered containers in a fixed order.
 */
#pragma once

#include <map>
#include <string>
#include <variant>

#include "motfourier/distribution.hpp"
#include "motfourier/dsl.hpp"
#include "motfourier/geometry.hpp"
#include "motfourier/wavefn.hpp"

namespace motfourier {

// A runtime script value.  Polynomials never escape expression evaluation;
// they live only inside expchar arguments and packet phases.
using Value = std::variant<VfElem, Ball, Polyball, CElem, MotFn, Dist>;

// Evaluate a validated expression against earlier definitions.
Value eval_expression(const ExprPtr& e, const std::map<std::string, Value>& env);

struct RunOptions {
    long p = 5;   // prime for the numeric cross-check commands
    int level = 3;  // congruence level for the numeric cross-check commands
};

struct RunResult {
    // 0: every check passed; 1: a verification or cross-check failed;
    // 2: a statement raised an error.
    int exit_code = 0;
    std::string json;     // rendered report array, ends with a newline
    std::string summary;  // one human-readable line per statement
};

// Execute the statements in order, stopping at the first error.
RunResult run_script(const Script& script, const RunOptions& options = {});

// Parallelism cap: MOTFOURIER_THREADS when set (clamped to >= 1), otherwise
// the hardware thread count.  Results never depend on it.
int thread_cap();

}  // namespace motfourier
