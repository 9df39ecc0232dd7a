#include <fstream>
#include <sstream>

#include "cyc/io.hpp"

namespace cyc {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError(msg + " at line " + std::to_string(line));
}

int vertex_arg(std::istringstream& ls, int n, int line) {
    long long v;
    if (!(ls >> v)) fail(line, "missing vertex");
    if (v < 1 || v > n) fail(line, "vertex out of range");
    return static_cast<int>(v - 1);
}

}  // namespace

Multigraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool have_header = false;
    long long declared_m = 0;
    Multigraph g;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            long long n, m;
            if (have_header) fail(line, "duplicate header");
            if (!(ls >> kind >> n >> m) || kind != "cyc" || n < 0 || m < 0) fail(line, "malformed header");
            g = Multigraph(static_cast<int>(n));
            declared_m = m;
            have_header = true;
            continue;
        }
        if (!have_header) fail(line, "malformed header");
        if (tag == "e") {
            int u = vertex_arg(ls, g.n(), line);
            int v = vertex_arg(ls, g.n(), line);
            if (u == v) fail(line, "loop edge");
            g.add_edge(u, v);
        } else if (tag == "s") {
            g.set_s(vertex_arg(ls, g.n(), line));
        } else if (tag == "t") {
            g.set_terminal(vertex_arg(ls, g.n(), line));
        } else if (tag == "w") {
            int v = vertex_arg(ls, g.n(), line);
            std::string w;
            if (!(ls >> w)) fail(line, "missing weight");
            if (w == "inf") {
                g.set_weight(v, kInf);
            } else {
                long long x;
                size_t pos = 0;
                try {
                    x = std::stoll(w, &pos);
                } catch (const std::exception&) {
                    fail(line, "bad weight");
                }
                if (pos != w.size()) fail(line, "bad weight");
                if (x <= 0) fail(line, "weight must be positive");
                g.set_weight(v, x);
            }
        } else {
            fail(line, "unknown line type '" + tag + "'");
        }
    }
    if (!have_header) fail(line, "malformed header");
    if (declared_m != g.m()) fail(line, "edge count does not match header");
    return g;
}

std::string write_graph(const Multigraph& g) {
    std::ostringstream o;
    o << "p cyc " << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : sorted_edges(g)) o << "e " << u + 1 << ' ' << v + 1 << '\n';
    for (int v = 0; v < g.n(); ++v)
        if (g.in_s(v)) o << "s " << v + 1 << '\n';
    for (int v = 0; v < g.n(); ++v)
        if (g.terminal(v)) o << "t " << v + 1 << '\n';
    for (int v = 0; v < g.n(); ++v)
        if (g.weight(v) != 1) o << "w " << v + 1 << ' ' << weight_str(g.weight(v)) << '\n';
    return o.str();
}

}  // namespace cyc
