#include "mgof/gof/report.hpp"

#include <cmath>

#include "json.hpp"

namespace mgof::gof {

namespace {

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

Verdict combine(const std::vector<StepRecord>& steps) {
    bool inconclusive = false;
    for (const auto& s : steps) {
        if (s.decision == Decision::reject) return Verdict::rejected;
        if (s.decision == Decision::inconclusive) inconclusive = true;
    }
    return inconclusive ? Verdict::inconclusive : Verdict::accepted;
}

std::string to_string(Decision d) {
    switch (d) {
        case Decision::accept: return "accept";
        case Decision::reject: return "reject";
        case Decision::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::accepted: return "accepted";
        case Verdict::rejected: return "rejected";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::accepted: return 0;
        case Verdict::rejected: return 1;
        case Verdict::inconclusive: return 2;
    }
    return 2;
}

std::string to_json(const TestReport& report, int indent) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["model"] = report.model;
    doc["order"] = report.order;
    doc["alpha"] = report.alpha;
    ordered_json steps = ordered_json::array();
    for (const auto& s : report.steps) {
        ordered_json step;
        if (s.k.size() == 1)
            step["k"] = s.k.front();
        else
            step["k"] = s.k;
        step["variables"] = s.variables;
        step["statistic_name"] = s.statistic_name;
        step["statistic"] = number(s.statistic);
        step["df"] = s.df ? ordered_json(*s.df) : ordered_json(nullptr);
        if (s.ci) step["ci"] = {number(s.ci->first), number(s.ci->second)};
        step["p_value"] = number(s.p_value);
        step["decision"] = to_string(s.decision);
        ordered_json diag = ordered_json::object();
        for (const auto& [key, value] : s.diagnostics) diag[key] = number(value);
        if (!s.note.empty()) diag["note"] = s.note;
        step["diagnostics"] = std::move(diag);
        steps.push_back(std::move(step));
    }
    doc["steps"] = std::move(steps);
    doc["verdict"] = to_string(report.verdict);
    return doc.dump(indent);
}

}  // namespace mgof::gof
