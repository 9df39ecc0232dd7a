#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "cyc/cw_oct.hpp"
#include "cyc/cw_sfvs.hpp"
#include "cyc/lowerbound.hpp"
#include "cyc/oracle.hpp"
#include "cyc/random.hpp"
#include "cyc/tw.hpp"

using namespace cyc;

namespace {

int log_level() {
    const char* s = std::getenv("CYC_LOG");
    return s ? std::atoi(s) : 0;
}

void logf(int lvl, const std::string& msg) {
    if (log_level() >= lvl) std::cerr << "[cyc] " << msg << "\n";
}

// FNV-1a over the input texts
std::string digest(std::initializer_list<const std::string*> parts) {
    std::uint64_t h = 1469598103934665603ull;
    for (const std::string* p : parts) {
        for (unsigned char c : *p) h = (h ^ c) * 1099511628211ull;
        h = (h ^ 0xff) * 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Report {
    std::string problem, dig, param;
    Weight value = kInf;
    std::vector<int> del;
    bool witness = false;
    double ms = 0;
    std::string stats;

    void print() const {
        std::cout << "OPT " << weight_str(value) << "\n";
        if (witness)
            for (int v : del) std::cout << "DEL " << v + 1 << "\n";
        std::cout << "c problem " << problem << "\n";
        std::cout << "c digest " << dig << "\n";
        std::cout << "c " << param << "\n";
        std::cout << "c time_ms " << ms << "\n";
        if (!stats.empty()) std::cout << "c " << stats << "\n";
    }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycle-hitting deletion solvers"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "OpenMP threads for the solvers")->check(CLI::PositiveNumber);

    std::string graph_file, td_file, expr_file, problem = "sfvs";
    bool witness = false;

    auto* tw = app.add_subcommand("solve-tw", "solve on a tree decomposition");
    tw->add_option("graph", graph_file)->required();
    tw->add_option("td", td_file)->required();
    tw->add_option("--problem", problem)->check(CLI::IsMember({"sfvs", "ect", "soct", "sect", "oct"}));
    tw->add_flag("--witness", witness);

    auto* cw = app.add_subcommand("solve-cw", "solve on a k-expression");
    cw->add_option("expr", expr_file)->required();
    cw->add_option("--graph", graph_file, "weights, S and terminals (edges must match the expression)");
    cw->add_option("--problem", problem)->check(CLI::IsMember({"sfvs", "nmwc", "oct"}));
    cw->add_flag("--witness", witness);

    int cap = 16;
    auto* orc = app.add_subcommand("oracle", "brute force");
    orc->add_option("graph", graph_file)->required();
    orc->add_option("--problem", problem)->check(CLI::IsMember({"sfvs", "ect", "soct", "sect", "oct", "nmwc"}));
    orc->add_option("--cap", cap, "vertex cap");
    orc->add_flag("--witness", witness);

    std::string cnf_file, out_graph, out_expr, oct_from;
    auto* lb = app.add_subcommand("gen-lb", "SAT to OCT gadget instance");
    lb->add_option("cnf", cnf_file)->required();
    lb->add_option("--out-graph", out_graph);
    lb->add_option("--out-expr", out_expr);
    lb->add_option("--out-oct-from", oct_from, "assignment file; writes and checks the constructed set");

    std::string out_file;
    auto* nz = app.add_subcommand("normalize", "drop redundant and trivial joins");
    nz->add_option("expr", expr_file)->required();
    nz->add_option("-o,--out", out_file);

    std::uint64_t seed = 1;
    int gn = 8, gk = 3;
    std::string kind = "tw";
    auto* gr = app.add_subcommand("gen-random", "random test instance");
    gr->add_option("--seed", seed);
    gr->add_option("--kind", kind)->check(CLI::IsMember({"tw", "cw"}));
    gr->add_option("-n", gn)->check(CLI::NonNegativeNumber);
    gr->add_option("-k", gk)->check(CLI::PositiveNumber);
    gr->add_option("--problem", problem)->check(CLI::IsMember({"sfvs", "ect", "soct", "sect", "oct", "nmwc"}));
    gr->add_option("--out-graph", out_graph)->required();
    gr->add_option("--out-td", td_file);
    gr->add_option("--out-expr", out_expr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    omp_set_num_threads(jobs);
    const bool par = jobs > 1;

    try {
        auto t0 = Clock::now();
        if (*tw) {
            std::string gt = read_file(graph_file), tt = read_file(td_file);
            Multigraph g = parse_graph(gt);
            TreeDecomposition td = parse_td(tt, g);
            auto ntd = nicify(td);
            logf(1, "nice decomposition with " + std::to_string(ntd.nodes.size()) + " nodes");
            auto r = solve_tw(g, ntd, parse_problem(problem), {witness, par});
            Report rep{problem, digest({&gt, &tt}), "width " + std::to_string(td.width()), r.value, r.deleted, witness, ms_since(t0), {}};
            rep.stats = "states " + std::to_string(r.stats.total_states) + " max_table " + std::to_string(r.stats.max_table) + " max_forest " + std::to_string(r.stats.max_forest);
            rep.print();
        } else if (*cw) {
            std::string et = read_file(expr_file), gt;
            CliqueExpression e = parse_kexpr(et);
            LabeledGraph lg = eval_kexpr(e);
            Multigraph g = lg.g;
            if (!graph_file.empty()) {
                gt = read_file(graph_file);
                g = parse_graph(gt);
                if (g.n() != lg.g.n() || sorted_edges(g) != sorted_edges(lg.g))
                    throw StructureError("expression does not evaluate to the edges of " + graph_file);
            }
            std::vector<Weight> w(g.n());
            std::vector<char> s(g.n());
            for (int v = 0; v < g.n(); ++v) w[v] = g.weight(v), s[v] = g.in_s(v);
            Report rep{problem, digest({&et, &gt}), "labels " + std::to_string(e.k), kInf, {}, witness, 0, {}};
            if (problem == "oct") {
                auto r = solve_oct_cw(e, w, {par, witness});
                rep.value = r.value;
                rep.del = r.deleted;
                rep.stats = "table_size " + std::to_string(r.table_size) + " nodes " + std::to_string(r.nodes);
            } else {
                CliqueExpression pe;
                if (problem == "nmwc") {
                    auto ni = transform_nmwc(g, e);
                    pe = prepare_sfvs_expression(ni.e);
                    w = ni.weights;
                    s = ni.s;
                } else {
                    pe = prepare_sfvs_expression(e);
                }
                logf(1, "prepared expression: " + std::to_string(pe.nodes.size()) + " nodes, " + std::to_string(pe.k) + " labels");
                auto r = solve_sfvs_cw(pe, w, s, {witness, par, false});
                rep.value = r.value;
                for (int v : r.deleted)
                    if (v < g.n()) rep.del.push_back(v);
                rep.stats = "states " + std::to_string(r.total_states) + " max_table " + std::to_string(r.max_table) + " max_forest " + std::to_string(r.max_forest);
            }
            rep.ms = ms_since(t0);
            rep.print();
        } else if (*orc) {
            std::string gt = read_file(graph_file);
            Multigraph g = parse_graph(gt);
            auto r = par ? brute_force(g, parse_problem(problem), cap) : brute_force_serial(g, parse_problem(problem), cap);
            Report rep{problem, digest({&gt}), "vertices " + std::to_string(g.n()), r.value, r.witness, witness, ms_since(t0), {}};
            rep.print();
        } else if (*lb) {
            CnfFormula f = parse_dimacs(read_file(cnf_file));
            GadgetInstance I = build_instance(f);
            std::cout << "c vertices " << I.g.n() << " edges " << I.g.m() << "\n";
            std::cout << "c alpha " << I.alpha << "\n";
            if (!out_graph.empty()) write_file(out_graph, write_graph(I.g));
            if (!out_expr.empty()) {
                CliqueExpression e = emit_linear_kexpr(I);
                std::cout << "c labels " << max_label_used(e) << " budget " << I.label_budget() << "\n";
                write_file(out_expr, write_kexpr(e));
            }
            if (!oct_from.empty()) {
                auto tau = parse_assignment(read_file(oct_from), f.n);
                tau.resize(I.phi.n, false);
                auto T = construct_oct_from_assignment(I, tau);
                const bool bip = bipartition(I.g.remove_vertices(T)).has_value();
                std::cout << "c oct_size " << T.size() << "\n";
                std::cout << "c bipartite_after_deletion " << (bip ? "yes" : "no") << "\n";
                for (int v : T) std::cout << "DEL " << v + 1 << "\n";
                if (!bip || static_cast<long long>(T.size()) != I.alpha) throw InternalError("constructed set is not a transversal of size alpha");
            }
        } else if (*nz) {
            NormalizeStats st;
            CliqueExpression e = normalize_kexpr(parse_kexpr(read_file(expr_file)), &st);
            std::string text = write_kexpr(e);
            if (out_file.empty())
                std::cout << text;
            else
                write_file(out_file, text);
            std::cerr << "c removed redundant " << st.removed_redundant << " trivial " << st.removed_trivial << "\n";
        } else if (*gr) {
            Rng rng(seed);
            const Problem p = parse_problem(problem);
            if (kind == "tw") {
                RandomGraphOptions o;
                if (p == Problem::OCT) o.s_prob = 0;
                auto inst = random_ktree_instance(rng, gn, gk, p, o);
                write_file(out_graph, write_graph(inst.g));
                if (!td_file.empty()) write_file(td_file, write_td(inst.td, gn));
            } else {
                CliqueExpression e = random_kexpr(rng, gn, gk);
                Multigraph g = eval_kexpr(e).g;
                std::uniform_int_distribution<int> wd(1, 3), coin(0, 2);
                for (int v = 0; v < g.n(); ++v) {
                    g.set_weight(v, wd(rng));
                    if (p == Problem::NMWC)
                        g.set_terminal(v, coin(rng) == 0);
                    else if (p != Problem::OCT)
                        g.set_s(v, coin(rng) == 0);
                }
                write_file(out_graph, write_graph(g));
                if (!out_expr.empty()) write_file(out_expr, write_kexpr(e));
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const StructureError& e) {
        std::cerr << "invalid structure: " << e.what() << "\n";
        return 3;
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 4;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant failed: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
