// mdag-gof: goodness-of-fit tests and graph audits for missing-data DAG models.
//
// Exit status: 0 accepted / ok, 1 rejected / check failed, 2 inconclusive,
// 64 usage error, 65 data or graph error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgof/estimate/cascade.hpp"
#include "mgof/gof/block_parallel.hpp"
#include "mgof/gof/counterexample.hpp"
#include "mgof/gof/sequential.hpp"
#include "mgof/graph/graph_json.hpp"
#include "mgof/io/csv.hpp"
#include "mgof/simulate/study.hpp"

namespace {

constexpr int exit_usage = 64;
constexpr int exit_data = 65;

using namespace mgof;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

unsigned resolve_threads(int flag) {
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("MDAG_GOF_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw UsageError("MDAG_GOF_THREADS must be a positive integer");
    }
    return 1;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << seed << '\n';
    return seed;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// --- test -----------------------------------------------------------------

struct TestArgs {
    std::string input, model, order, output, graph, calibration = "rao-scott";
    double alpha = 0.05;
    int bootstrap = 200;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

int cmd_test(const TestArgs& a) {
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    const bool sequential = a.model != "block-parallel";
    if (sequential && a.order.empty()) throw UsageError("--order is required for " + a.model);
    if (!a.graph.empty() && a.model != "seq-mnar") throw UsageError("--graph is only used with seq-mnar");

    const auto data = io::read_csv(a.input);
    gof::TestReport report;
    if (sequential) {
        std::vector<std::size_t> order;
        for (const auto& name : split_list(a.order)) {
            try {
                order.push_back(data.index_of(name));
            } catch (const std::invalid_argument&) {
                throw io::DataError("--order names '" + name + "', which is not a CSV column");
            }
        }
        if (order.size() != data.variable_count())
            throw io::DataError("--order must list every CSV column exactly once");
        std::optional<graph::GraphFile> declared;
        gof::SequentialOptions opt;
        opt.alpha = a.alpha;
        opt.calibration = gof::parse_calibration(a.calibration);
        if (!a.graph.empty()) {
            declared = graph::read_graph_file(a.graph);
            graph::require_valid(declared->graph);
            opt.declared = &declared->graph;
        }
        report = a.model == "seq-mar" ? gof::test_sequential_mar(data, order, opt)
                                      : gof::test_sequential_mnar(data, order, opt);
    } else {
        if (a.bootstrap < 1) throw UsageError("--bootstrap must be positive");
        est::OddsRatioOptions opt;
        opt.alpha = a.alpha;
        opt.n_bootstrap = a.bootstrap;
        opt.seed = resolve_seed(a.seed);
        opt.threads = resolve_threads(a.threads);
        report = gof::test_block_parallel(data, opt);
    }
    write_output(a.output, gof::to_json(report) + "\n");
    if (!a.output.empty() && a.output != "-") std::cerr << "verdict: " << gof::to_string(report.verdict) << '\n';
    return gof::exit_code(report.verdict);
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string scenario, dist = "binary", grid, range = "0,2", output, emit, calibration = "rao-scott";
    int reps = 100;
    int k = 4;
    double alpha = 0.05;
    int bootstrap = 200;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

std::vector<Eigen::Index> parse_grid(const std::string& spec) {
    std::vector<Eigen::Index> out;
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || v < 1) throw UsageError("invalid --n-grid '" + spec + "'");
        return static_cast<Eigen::Index>(v);
    };
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream in(spec);
        std::string p;
        while (std::getline(in, p, ':')) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("--n-grid takes start:stop:step");
        const auto start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
        if (stop < start) throw UsageError("--n-grid stop is below start");
        for (auto n = start; n <= stop; n += step) out.push_back(n);
    } else {
        for (const auto& s : split_list(spec)) out.push_back(number(s));
    }
    if (out.empty()) throw UsageError("--n-grid is empty");
    return out;
}

int cmd_simulate(const SimulateArgs& a) {
    sim::ScenarioConfig c;
    try {
        c.scenario = sim::parse_scenario(a.scenario);
        c.dist = sim::parse_distribution(a.dist);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto range = split_list(a.range);
    if (range.size() != 2) throw UsageError("--param-range takes lo,hi");
    try {
        c.lo = std::stod(range[0]);
        c.hi = std::stod(range[1]);
    } catch (const std::exception&) {
        throw UsageError("invalid --param-range '" + a.range + "'");
    }
    if (a.k < 1) throw UsageError("--k must be positive");
    c.k = static_cast<std::size_t>(a.k);
    c.reps = a.reps;
    c.alpha = a.alpha;
    c.calibration = gof::parse_calibration(a.calibration);
    c.n_bootstrap = a.bootstrap;
    c.threads = resolve_threads(a.threads);
    const auto grid = parse_grid(a.grid);
    c.n = grid.front();
    try {
        sim::validate(c);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    c.seed = resolve_seed(a.seed);

    if (!a.emit.empty()) {
        auto first = c;
        first.seed = sim::grid_seed(c.seed, grid.front());
        auto rng = num::Rng::child(first.seed, 0);
        io::write_csv(std::filesystem::path(a.emit), sim::simulate_dataset(first, rng));
    }

    std::ostringstream out;
    if (sim::is_block_parallel(c.scenario)) {
        out << sim::theta_csv_header();
        for (auto n : grid) {
            auto cn = c;
            cn.n = n;
            cn.seed = sim::grid_seed(c.seed, n);
            const auto s = sim::run_study(cn);
            out << sim::theta_csv(s);
            std::cerr << "n=" << n << " ci_covers_1=" << s.acceptance_rate << " median_theta=" << s.median_theta
                      << " complete_case=" << s.mean_complete_case << " inconclusive=" << s.inconclusive << '\n';
        }
    } else {
        out << sim::curve_csv(sim::sweep_curve(c, grid));
    }
    write_output(a.output, out.str());
    return 0;
}

// --- graph ----------------------------------------------------------------

struct GraphArgs {
    std::string file, x, y, given, intervene, order, cards;
    bool json = false;
};

graph::GraphFile load_graph(const GraphArgs& a) {
    graph::GraphFile g;
    try {
        g = graph::read_graph_file(a.file);
    } catch (const std::invalid_argument& e) {
        throw io::DataError(e.what());
    }
    const auto violations = graph::validate_mdag(g.graph);
    if (!violations.empty()) {
        std::string msg = "invalid m-DAG:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw io::DataError(msg);
    }
    return g;
}

graph::IndependenceQuery parse_query(const graph::MDag& g, const GraphArgs& a) {
    graph::IndependenceQuery q;
    auto vertices = [&](const std::string& list) {
        std::vector<graph::Vertex> out;
        for (const auto& name : split_list(list)) {
            try {
                out.push_back(g.vertex(name));
            } catch (const graph::UnknownVertex& e) {
                throw UsageError(e.what());
            }
        }
        return out;
    };
    q.left = vertices(a.x);
    q.right = vertices(a.y);
    q.given = vertices(a.given);
    if (q.left.empty() || q.right.empty()) throw UsageError("--x and --y are required");
    for (auto v : vertices(a.intervene)) {
        if (v.kind == graph::VertexKind::proxy) throw UsageError("--do takes indicators such as R1");
        q.interventions.push_back(v.index);
    }
    return q;
}

std::string names(const graph::MDag& g, const std::vector<graph::Vertex>& vs, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? sep : "") + g.name(vs[i]);
    return out;
}

int cmd_graph(const std::string& op, const GraphArgs& a) {
    using nlohmann::ordered_json;
    const auto file = load_graph(a);
    const auto& g = file.graph;
    ordered_json doc;
    std::ostringstream text;

    if (op == "dsep") {
        const auto q = parse_query(g, a);
        bool sep = false;
        try {
            sep = graph::d_separated(g, q);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        doc["separated"] = sep;
        text << (sep ? "separated" : "not separated") << '\n';
    } else if (op == "classify") {
        std::vector<std::size_t> order;
        if (!a.order.empty()) {
            try {
                order = graph::parse_order(g, split_list(a.order));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        } else if (file.order) {
            order = *file.order;
        } else {
            for (std::size_t i = 0; i < g.variable_count(); ++i) order.push_back(i);
        }
        const auto cls = graph::classify_model(g, order);
        doc["class"] = graph::to_string(cls);
        text << graph::to_string(cls) << '\n';
    } else if (op == "structures") {
        const auto s = graph::detect_structures(g);
        ordered_json self = ordered_json::array(), coll = ordered_json::array(), cc = ordered_json::array(),
                     paths = ordered_json::array();
        for (const auto& e : s.self_censoring_edges) {
            self.push_back({g.name(e.from), g.name(e.to)});
            text << "self-censoring: " << g.name(e.from) << " -> " << g.name(e.to) << '\n';
        }
        for (const auto& c : s.colluders) {
            const auto x = g.name(graph::Vertex::x(c.cause)), rj = g.name(graph::Vertex::r(c.collider)),
                       ri = g.name(graph::Vertex::r(c.partner));
            coll.push_back({x, rj, ri});
            text << "colluder: " << x << " -> " << rj << " <- " << ri << '\n';
        }
        for (const auto& [i, j] : s.criss_crosses) {
            const auto xi = g.variables()[i], xj = g.variables()[j];
            cc.push_back({xi, xj});
            text << "criss-cross: {" << xi << ", " << xj << "}\n";
        }
        for (const auto& p : s.colluding_paths) {
            ordered_json path = ordered_json::array();
            for (auto v : p) path.push_back(g.name(v));
            paths.push_back(std::move(path));
            text << "colluding path: " << names(g, p, " *-* ") << '\n';
        }
        if (s.empty()) text << "no structures found\n";
        doc["self_censoring"] = std::move(self);
        doc["colluders"] = std::move(coll);
        doc["criss_crosses"] = std::move(cc);
        doc["colluding_paths"] = std::move(paths);
    } else if (op == "count-params") {
        std::vector<int> cards(g.variable_count(), 2);
        if (!a.cards.empty()) {
            cards.clear();
            for (const auto& c : split_list(a.cards)) {
                try {
                    cards.push_back(std::stoi(c));
                } catch (const std::exception&) {
                    throw UsageError("invalid --cardinalities '" + a.cards + "'");
                }
            }
        }
        graph::ParameterCount pc;
        try {
            pc = graph::count_parameters(g, cards);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        doc["full"] = pc.full_law;
        doc["saturated"] = pc.saturated_observed;
        doc["constrained"] = pc.constrained();
        text << "full=" << pc.full_law << " saturated=" << pc.saturated_observed
             << " constrained=" << (pc.constrained() ? "yes" : "no") << '\n';
    } else if (op == "testability") {
        const auto q = parse_query(g, a);
        graph::TestabilityVerdict v;
        try {
            v = graph::testability_verdict(g, q);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        doc["verdict"] = graph::to_string(v.verdict);
        doc["route"] = graph::to_string(v.route);
        ordered_json fixed = ordered_json::array();
        for (auto k : v.fixed) fixed.push_back(g.name(graph::Vertex::r(k)));
        doc["fixed"] = std::move(fixed);
        doc["reason"] = v.reason;
        text << graph::to_string(v.verdict) << " (route: " << graph::to_string(v.route) << ")\n" << v.reason << '\n';
    }
    std::cout << (a.json ? doc.dump(2) + "\n" : text.str());
    return 0;
}

// --- verify-counterexample --------------------------------------------------

int cmd_verify(const std::string& format) {
    const auto rec = gof::verify_crisscross_counterexample();
    std::cout << (format == "json" ? gof::to_json(rec) + "\n" : gof::to_text(rec));
    return rec.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goodness-of-fit tests and graph audits for missing-data DAG models", "mdag-gof"};
    app.require_subcommand(1);

    TestArgs test;
    auto* t = app.add_subcommand("test", "test a missingness model on a CSV data set");
    t->add_option("--input", test.input, "CSV with a header row; NA marks missing cells")->required();
    t->add_option("--model", test.model, "model to test")
        ->required()
        ->check(CLI::IsMember({"seq-mar", "seq-mnar", "block-parallel"}));
    t->add_option("--order", test.order, "variable order X1,...,XK (sequential models)");
    t->add_option("--alpha", test.alpha, "level of each step")->capture_default_str();
    t->add_option("--calibration", test.calibration, "reference law for 2 rho (sequential models)")
        ->check(CLI::IsMember({"raw", "rao-scott"}))
        ->capture_default_str();
    t->add_option("--bootstrap", test.bootstrap, "bootstrap resamples (block-parallel)")->capture_default_str();
    t->add_option("--output", test.output, "write the JSON report here instead of stdout");
    t->add_option("--graph", test.graph, "declared graph, checked for colluders before seq-mnar runs");
    t->add_option("--seed", test.seed, "bootstrap seed");
    t->add_option("--threads", test.threads, "worker threads (default: MDAG_GOF_THREADS or 1)");

    SimulateArgs simulate;
    auto* s = app.add_subcommand("simulate", "run a replicated simulation study");
    s->add_option("--scenario", simulate.scenario, "data-generating process")
        ->required()
        ->check(CLI::IsMember({"mar-null", "mar-alt", "mnar-null", "mnar-alt", "bp-null", "bp-alt"}));
    s->add_option("--dist", simulate.dist, "distribution of X")
        ->check(CLI::IsMember({"gaussian", "binary"}))
        ->capture_default_str();
    s->add_option("--n-grid", simulate.grid, "sample sizes: start:stop:step or a comma list")->required();
    s->add_option("--reps", simulate.reps, "replications per sample size")->capture_default_str();
    s->add_option("--param-range", simulate.range, "uniform range of missingness coefficients")->capture_default_str();
    s->add_option("--k", simulate.k, "number of variables")->capture_default_str();
    s->add_option("--alpha", simulate.alpha, "test level")->capture_default_str();
    s->add_option("--calibration", simulate.calibration, "reference law for 2 rho (sequential scenarios)")
        ->check(CLI::IsMember({"raw", "rao-scott"}))
        ->capture_default_str();
    s->add_option("--bootstrap", simulate.bootstrap, "bootstrap resamples (bp scenarios)")->capture_default_str();
    s->add_option("--seed", simulate.seed, "master seed");
    s->add_option("--threads", simulate.threads, "worker threads (default: MDAG_GOF_THREADS or 1)");
    s->add_option("--output", simulate.output, "write the CSV here instead of stdout");
    s->add_option("--emit-data", simulate.emit, "also write replication 0 of the first sample size as CSV");

    GraphArgs graph_args;
    auto* gcmd = app.add_subcommand("graph", "audit an m-DAG given as JSON");
    gcmd->require_subcommand(1);
    std::string graph_op;
    const std::pair<const char*, const char*> ops[] = {
        {"dsep", "d-separation query, optionally after fixing indicators"},
        {"classify", "check the graph against seq-mar, seq-mnar and block-parallel"},
        {"structures", "list colluders, criss-cross pairs and colluding paths"},
        {"count-params", "free parameters of the full and observed laws"},
        {"testability", "route by which an independence is checked, if any"},
    };
    for (const auto& [op, about] : ops) {
        auto* sub = gcmd->add_subcommand(op, about);
        sub->add_option("--graph", graph_args.file, "graph JSON")->required();
        sub->add_flag("--json", graph_args.json, "machine-readable output");
        const std::string name = op;
        if (name == "dsep" || name == "testability") {
            sub->add_option("--x", graph_args.x, "comma-separated vertices");
            sub->add_option("--y", graph_args.y, "comma-separated vertices");
            sub->add_option("--given", graph_args.given, "comma-separated vertices");
            sub->add_option("--do", graph_args.intervene, "indicators fixed to 1");
        }
        if (name == "classify") sub->add_option("--order", graph_args.order, "variable order");
        if (name == "count-params") sub->add_option("--cardinalities", graph_args.cards, "per-variable cardinalities");
        sub->callback([&graph_op, name] { graph_op = name; });
    }

    std::string format = "text";
    auto* v = app.add_subcommand("verify-counterexample", "check the exact criss-cross counterexample");
    v->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (t->parsed()) return cmd_test(test);
        if (s->parsed()) return cmd_simulate(simulate);
        if (gcmd->parsed()) return cmd_graph(graph_op, graph_args);
        if (v->parsed()) return cmd_verify(format);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const io::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const est::StructureRefusal& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 70;
    }
    return exit_usage;
}
