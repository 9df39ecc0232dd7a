#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cyc(const std::string& args) {
    std::string cmd = std::string(CYC_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string data(const std::string& f) { return std::string(CYC_DATA) + "/" + f; }

std::vector<std::string> lines_with(const std::string& out, const std::string& prefix) {
    std::vector<std::string> r;
    std::istringstream is(out);
    for (std::string l; std::getline(is, l);)
        if (l.rfind(prefix, 0) == 0) r.push_back(l);
    return r;
}

std::string opt(const Run& r) {
    auto l = lines_with(r.out, "OPT ");
    return l.size() == 1 ? l[0].substr(4) : "?";
}

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / ("cyc_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("treewidth solves") {
    CHECK(opt(cyc("solve-tw " + data("c4.gr") + " " + data("c4.td") + " --problem ect")) == "1");
    CHECK(opt(cyc("solve-tw " + data("c5.gr") + " " + data("c5.td") + " --problem ect")) == "0");
    Run r = cyc("solve-tw " + data("k4s.gr") + " " + data("k4s.td") + " --problem sfvs --witness");
    CHECK(r.code == 0);
    CHECK(opt(r) == "2");
    auto del = lines_with(r.out, "DEL ");
    REQUIRE(del.size() == 2);
    CHECK(del[0] != del[1]);
    CHECK_FALSE(lines_with(r.out, "c digest ").empty());
}

TEST_CASE("clique-width solves") {
    CHECK(opt(cyc("solve-cw " + data("triangle.ke") + " --problem oct")) == "1");
    CHECK(opt(cyc("solve-cw " + data("path3.ke") + " --graph " + data("path3_terminals.gr") + " --problem nmwc")) == "1");
    CHECK(opt(cyc("solve-cw " + data("path3_emptyjoin.ke") + " --graph " + data("path3_terminals.gr") + " --problem nmwc")) == "1");
    Run r = cyc("solve-cw " + data("triangle.ke") + " --problem sfvs");
    CHECK(r.code == 0);
    CHECK(opt(r) == "0");
}

TEST_CASE("exit codes") {
    CHECK(cyc("solve-tw " + data("loop.gr") + " " + data("c4.td")).code == 2);
    CHECK(cyc("solve-tw " + data("c4.gr") + " " + data("c4_uncovered.td") + " --problem ect").code == 3);
    CHECK(cyc("solve-tw --bogus").code == 2);
    CHECK(cyc("solve-cw " + data("triangle.ke") + " --graph " + data("c4.gr")).code == 3);
    fs::path d = scratch_dir();
    std::string big = (d / "big.gr").string();
    REQUIRE(cyc("gen-random --seed 3 --kind tw -n 20 -k 2 --problem ect --out-graph " + big).code == 0);
    CHECK(cyc("oracle " + big + " --problem ect").code == 4);
    fs::remove_all(d);
}

TEST_CASE("oracle and solvers agree on generated instances") {
    fs::path d = scratch_dir();
    const std::string g = (d / "g.gr").string(), td = (d / "g.td").string(), ke = (d / "g.ke").string();
    for (std::string p : {"sfvs", "ect", "soct", "sect"})
        for (int seed = 1; seed <= 4; ++seed) {
            REQUIRE(cyc("gen-random --seed " + std::to_string(seed) + " --kind tw -n 10 -k 3 --problem " + p + " --out-graph " + g + " --out-td " + td).code == 0);
            const std::string want = opt(cyc("oracle " + g + " --problem " + p));
            INFO(p, " seed ", seed);
            CHECK(want != "?");
            CHECK(opt(cyc("solve-tw " + g + " " + td + " --problem " + p)) == want);
            CHECK(opt(cyc("--jobs 2 solve-tw " + g + " " + td + " --problem " + p)) == want);
        }
    for (std::string p : {"sfvs", "nmwc", "oct"})
        for (int seed = 1; seed <= 4; ++seed) {
            REQUIRE(cyc("gen-random --seed " + std::to_string(seed) + " --kind cw -n 10 -k 3 --problem " + p + " --out-graph " + g + " --out-expr " + ke).code == 0);
            const std::string want = opt(cyc("oracle " + g + " --problem " + p));
            INFO(p, " seed ", seed);
            CHECK(want != "?");
            CHECK(opt(cyc("solve-cw " + ke + " --graph " + g + " --problem " + p)) == want);
        }
    fs::remove_all(d);
}

TEST_CASE("normalize and gen-lb") {
    fs::path d = scratch_dir();
    const std::string out = (d / "n.ke").string();
    CHECK(cyc("normalize " + data("path3_emptyjoin.ke") + " -o " + out).code == 0);
    CHECK(opt(cyc("solve-cw " + out + " --graph " + data("path3_terminals.gr") + " --problem nmwc")) == "1");
    const std::string cnf = (d / "f.cnf").string(), asg = (d / "f.asg").string();
    FILE* f = std::fopen(cnf.c_str(), "w");
    std::fputs("p cnf 2 2\n1 -2 0\n2 0\n", f);
    std::fclose(f);
    f = std::fopen(asg.c_str(), "w");
    std::fputs("1 2 0\n", f);
    std::fclose(f);
    Run r = cyc("gen-lb " + cnf + " --out-graph " + (d / "lb.gr").string() + " --out-expr " + (d / "lb.ke").string() + " --out-oct-from " + asg);
    CHECK(r.code == 0);
    CHECK_FALSE(lines_with(r.out, "c bipartite_after_deletion yes").empty());
    fs::remove_all(d);
}
