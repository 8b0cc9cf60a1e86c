#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mgof::gof {

enum class Decision { accept, reject, inconclusive };
enum class Verdict { accepted, rejected, inconclusive };

struct StepRecord {
    // 1-based positions in the order (sequential) or variable indices of the
    // pair (block-parallel), with the matching names.
    std::vector<std::size_t> k;
    std::vector<std::string> variables;
    std::string statistic_name;  // "2rho" or "theta"
    double statistic = 0.0;
    std::optional<int> df;
    std::optional<std::pair<double, double>> ci;
    double p_value = 1.0;
    Decision decision = Decision::inconclusive;
    std::map<std::string, double> diagnostics;
    std::string note;
};

struct TestReport {
    std::string model;  // "seq-mar", "seq-mnar" or "block-parallel"
    std::vector<std::string> order;
    double alpha = 0.05;
    std::vector<StepRecord> steps;
    Verdict verdict = Verdict::accepted;
};

// Rejected if any step rejected, otherwise inconclusive if any step was,
// otherwise accepted.
Verdict combine(const std::vector<StepRecord>& steps);

std::string to_string(Decision d);
std::string to_string(Verdict v);
std::string to_json(const TestReport& report, int indent = 2);

// Exit status used by the command-line tool: 0 accepted, 1 rejected, 2 inconclusive.
int exit_code(Verdict v);

}  // namespace mgof::gof
