#pragma once

#include <array>
#include <string>
#include <vector>

#include "mgof/numerics/rational.hpp"

namespace mgof::gof {

// Cell of a binary law over (R1, R2, X1, X2). Observed cells use -1 for "?".
struct LawCell {
    int r1 = 0, r2 = 0;
    int x1 = 0, x2 = 0;
    num::Rational p;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CounterexampleRecord {
    std::array<std::vector<LawCell>, 2> full_law;      // M1, M2 over (R1, R2, X1, X2)
    std::array<std::vector<LawCell>, 2> observed_law;  // p(R1, R2, X1*, X2*) of each model
    std::array<std::vector<std::pair<std::string, num::Rational>>, 2> parameters;
    std::vector<CheckResult> checks;
    bool passed() const;
};

// Two full laws factorising over X1 -> X2, X2 -> R1, X1 -> R2, R1 -> R2 that
// share one observed law, in exact arithmetic.
CounterexampleRecord verify_crisscross_counterexample();

std::string to_json(const CounterexampleRecord& record, int indent = 2);
std::string to_text(const CounterexampleRecord& record);

}  // namespace mgof::gof
