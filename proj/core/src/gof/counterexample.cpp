#include "mgof/gof/counterexample.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace mgof::gof {

namespace {

using num::Rational;
using Cell = std::array<int, 4>;  // R1, R2, X1, X2
using Table = std::map<Cell, Rational>;

Rational q(long long n, long long d) { return num::make_rational(n, d); }

struct Cpts {
    Rational x1_0;             // p(X1 = 0)
    Rational x2_0[2];          // p(X2 = 0 | X1)
    Rational r1_0[2];          // p(R1 = 0 | X2)
    Rational r2_0[2][2];       // p(R2 = 0 | R1, X1)
};

const Cpts& model(int m) {
    static const Cpts m1{q(7, 15),
                         {q(6, 7), q(3, 4)},
                         {q(19, 20), q(85, 100)},
                         {{q(268, 323), q(208, 323)}, {q(1, 2), q(1, 2)}}};
    static const Cpts m2{q(5, 11),
                         {q(4, 5), q(2, 3)},
                         {q(189, 200), q(89, 100)},
                         {{q(7636, 16821), q(16216, 16821)}, {q(1, 2), q(1, 2)}}};
    return m == 0 ? m1 : m2;
}

Rational pick(const Rational& p0, int value) { return value == 0 ? p0 : Rational(1 - p0); }

Table full_law(const Cpts& c) {
    Table t;
    for (int r1 = 0; r1 < 2; ++r1)
        for (int r2 = 0; r2 < 2; ++r2)
            for (int x2 = 0; x2 < 2; ++x2)
                for (int x1 = 0; x1 < 2; ++x1)
                    t[{r1, r2, x1, x2}] = pick(c.x1_0, x1) * pick(c.x2_0[x1], x2) * pick(c.r1_0[x2], r1) *
                                          pick(c.r2_0[r1][x1], r2);
    return t;
}

// X*_k = X_k when R_k = 1 and "?" (-1) otherwise.
Table observed_law(const Table& full) {
    Table obs;
    for (const auto& [cell, p] : full) {
        const Cell o{cell[0], cell[1], cell[0] ? cell[2] : -1, cell[1] ? cell[3] : -1};
        obs[o] += p;
    }
    return obs;
}

Table marginal(const Table& t, const std::vector<int>& keep) {
    Table out;
    for (const auto& [cell, p] : t) {
        Cell key{-9, -9, -9, -9};
        for (int v : keep) key[static_cast<std::size_t>(v)] = cell[static_cast<std::size_t>(v)];
        out[key] += p;
    }
    return out;
}

Rational lookup(const Table& m, const Cell& cell, const std::vector<int>& keep) {
    Cell key{-9, -9, -9, -9};
    for (int v : keep) key[static_cast<std::size_t>(v)] = cell[static_cast<std::size_t>(v)];
    auto it = m.find(key);
    return it == m.end() ? Rational(0) : it->second;
}

// a _||_ b | c, checked as p(a, b, c) p(c) = p(a, c) p(b, c) in every cell.
bool independent(const Table& t, int a, int b, std::vector<int> c) {
    auto abc = c, ac = c, bc = c;
    abc.push_back(a);
    abc.push_back(b);
    ac.push_back(a);
    bc.push_back(b);
    const auto m_abc = marginal(t, abc), m_ac = marginal(t, ac), m_bc = marginal(t, bc), m_c = marginal(t, c);
    for (const auto& [cell, p] : t)
        if (lookup(m_abc, cell, abc) * lookup(m_c, cell, c) != lookup(m_ac, cell, ac) * lookup(m_bc, cell, bc))
            return false;
    return true;
}

std::vector<LawCell> cells(const Table& t) {
    std::vector<LawCell> out;
    for (const auto& [c, p] : t) out.push_back({c[0], c[1], c[2], c[3], p});
    return out;
}

std::vector<std::pair<std::string, Rational>> parameters(const Cpts& c) {
    return {{"p(X1=0)", c.x1_0},
            {"p(X2=0|X1=0)", c.x2_0[0]},
            {"p(X2=0|X1=1)", c.x2_0[1]},
            {"p(R1=0|X2=0)", c.r1_0[0]},
            {"p(R1=0|X2=1)", c.r1_0[1]},
            {"p(R2=0|R1=0,X1=0)", c.r2_0[0][0]},
            {"p(R2=0|R1=0,X1=1)", c.r2_0[0][1]},
            {"p(R2=0|R1=1,X1=0)", c.r2_0[1][0]},
            {"p(R2=0|R1=1,X1=1)", c.r2_0[1][1]}};
}

std::string value(int v) { return v < 0 ? "?" : std::to_string(v); }

}  // namespace

bool CounterexampleRecord::passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

CounterexampleRecord verify_crisscross_counterexample() {
    CounterexampleRecord rec;
    std::array<Table, 2> full, obs;
    for (int m = 0; m < 2; ++m) {
        full[m] = full_law(model(m));
        obs[m] = observed_law(full[m]);
        rec.full_law[m] = cells(full[m]);
        rec.observed_law[m] = cells(obs[m]);
        rec.parameters[m] = parameters(model(m));
    }
    const std::string label[2] = {"M1", "M2"};
    enum { R1, R2, X1, X2 };

    for (int m = 0; m < 2; ++m) {
        Rational total = 0;
        bool nonnegative = true;
        for (const auto& [c, p] : full[m]) {
            total += p;
            nonnegative = nonnegative && p >= 0;
        }
        rec.checks.push_back({label[m] + " full law is a distribution", total == 1 && nonnegative,
                              "sum = " + num::to_string(total)});
        const bool local = independent(full[m], R1, X1, {X2}) && independent(full[m], R2, X2, {R1, X1});
        rec.checks.push_back({label[m] + " factorises over the criss-cross graph", local,
                              "R1 _||_ X1 | X2 and R2 _||_ X2 | R1, X1"});
    }

    int differing = 0;
    for (const auto& [c, p] : obs[0])
        if (obs[1].at(c) != p) ++differing;
    rec.checks.push_back({"observed laws coincide", differing == 0 && obs[0].size() == obs[1].size(),
                          std::to_string(obs[0].size()) + " cells compared, " + std::to_string(differing) +
                              " differ"});

    int full_diff = 0;
    for (const auto& [c, p] : full[0])
        if (full[1].at(c) != p) ++full_diff;
    rec.checks.push_back({"full laws differ", full_diff > 0, std::to_string(full_diff) + " of 16 cells differ"});

    const auto t1 = marginal(full[0], {X1, X2});
    const auto t2 = marginal(full[1], {X1, X2});
    rec.checks.push_back({"target laws p(X1, X2) differ", t1 != t2, ""});
    return rec;
}

std::string to_json(const CounterexampleRecord& rec, int indent) {
    using nlohmann::ordered_json;
    auto law = [](const std::vector<LawCell>& cells, bool observed) {
        ordered_json out = ordered_json::array();
        for (const auto& c : cells) {
            ordered_json cell;
            cell["R1"] = c.r1;
            cell["R2"] = c.r2;
            if (observed) {
                cell["X1*"] = value(c.x1);
                cell["X2*"] = value(c.x2);
            } else {
                cell["X1"] = c.x1;
                cell["X2"] = c.x2;
            }
            cell["p"] = num::to_string(c.p);
            out.push_back(std::move(cell));
        }
        return out;
    };
    ordered_json doc;
    const char* names[2] = {"M1", "M2"};
    for (int m = 0; m < 2; ++m) {
        ordered_json params;
        for (const auto& [k, v] : rec.parameters[m]) params[k] = num::to_string(v);
        doc["parameters"][names[m]] = std::move(params);
    }
    for (int m = 0; m < 2; ++m) doc["full_law"][names[m]] = law(rec.full_law[m], false);
    doc["observed_law"] = law(rec.observed_law[0], true);
    ordered_json checks = ordered_json::array();
    for (const auto& c : rec.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    doc["checks"] = std::move(checks);
    doc["passed"] = rec.passed();
    return doc.dump(indent);
}

std::string to_text(const CounterexampleRecord& rec) {
    std::ostringstream out;
    out << "parameter";
    for (const char* m : {"M1", "M2"}) out << '\t' << m;
    out << '\n';
    for (std::size_t i = 0; i < rec.parameters[0].size(); ++i)
        out << rec.parameters[0][i].first << '\t' << num::to_string(rec.parameters[0][i].second) << '\t'
            << num::to_string(rec.parameters[1][i].second) << '\n';
    out << "\nfull law\nR1 R2 X1 X2\tM1\tM2\n";
    for (std::size_t i = 0; i < rec.full_law[0].size(); ++i) {
        const auto& c = rec.full_law[0][i];
        out << c.r1 << "  " << c.r2 << "  " << c.x1 << "  " << c.x2 << '\t' << num::to_string(c.p) << '\t'
            << num::to_string(rec.full_law[1][i].p) << '\n';
    }
    out << "\nobserved law (shared)\nR1 R2 X1* X2*\tp\n";
    for (const auto& c : rec.observed_law[0])
        out << c.r1 << "  " << c.r2 << "  " << value(c.x1) << "   " << value(c.x2) << '\t' << num::to_string(c.p)
            << '\n';
    out << '\n';
    for (const auto& c : rec.checks)
        out << (c.passed ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
    out << (rec.passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

}  // namespace mgof::gof
