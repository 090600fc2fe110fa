#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "../oracles.hpp"
#include "sparsehit/bench.hpp"
#include "sparsehit/errors.hpp"
#include "sparsehit/generators.hpp"

using namespace sparsehit;
namespace fs = std::filesystem;

namespace {

Graph gen(const char* family, int n, std::map<std::string, double> params = {}, std::uint64_t seed = 1) {
    return generate(GeneratorSpec{family, n, std::move(params), seed});
}

// Segment crossing decided by solving for the parameters in exact rationals.
bool crosses_rational(const Segment& a, const Segment& b) {
    using Q = boost::multiprecision::cpp_rational;
    Q px = a.x1, py = a.y1, rx = Q(a.x2) - a.x1, ry = Q(a.y2) - a.y1;
    Q qx = b.x1, qy = b.y1, sx = Q(b.x2) - b.x1, sy = Q(b.y2) - b.y1;
    Q denom = rx * sy - ry * sx;
    Q wx = qx - px, wy = qy - py;
    if (denom != 0) {
        Q t = (wx * sy - wy * sx) / denom;
        Q u = (wx * ry - wy * rx) / denom;
        return t >= 0 && t <= 1 && u >= 0 && u <= 1;
    }
    if (wx * ry - wy * rx != 0 || wx * sy - wy * sx != 0) return false;  // parallel, not collinear
    // Collinear: project onto the direction of a (or b, if a is a point).
    auto dot = [](Q x1, Q y1, Q x2, Q y2) { return x1 * x2 + y1 * y2; };
    if (rx == 0 && ry == 0) {
        if (sx == 0 && sy == 0) return wx == 0 && wy == 0;
        Q t = dot(-wx, -wy, sx, sy) / dot(sx, sy, sx, sy);
        return t >= 0 && t <= 1;
    }
    Q len = dot(rx, ry, rx, ry);
    Q t0 = dot(wx, wy, rx, ry) / len;
    Q t1 = dot(wx + sx, wy + sy, rx, ry) / len;
    return std::max(t0, t1) >= 0 && std::min(t0, t1) <= 1;
}

struct CliResult {
    int code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(SPARSEHIT_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf;
    while (auto got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
    auto dir = fs::temp_directory_path() / ("sparsehit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string strip_timings(const std::string& line) {
    auto j = nlohmann::json::parse(line);
    j.erase("timings_ms");
    j.erase("total_ms");
    return j.dump();
}

}  // namespace

TEST_CASE("generator examples") {
    auto g = gen("grid", 9, {{"w", 3}, {"h", 3}});
    CHECK(g.order() == 9);
    CHECK(g.size() == 12u);

    auto empty = gen("unit-disk", 30, {{"radius", 0}});
    CHECK(empty.size() == 0u);
    auto full = gen("unit-disk", 30, {{"radius", 2.0}});
    CHECK(full.size() == 30u * 29u / 2);

    auto tri = gen("grid", 16, {{"w", 4}, {"h", 4}, {"diagonals", 1}});
    CHECK(tri.size() == 24u + 9u);

    CHECK(gen("friendship", 0, {{"k", 3}}).order() == 7);
    auto dc = gen("disjoint-cliques", 0, {{"size", 4}, {"count", 5}});
    CHECK(dc.order() == 20);
    CHECK(dc.size() == 30u);
    auto br = gen("bounded-degree-random", 200, {{"degree", 4}}, 3);
    CHECK(br.max_degree() <= 4);
    CHECK(gen("random-tree", 50, {}, 2).size() == 49u);
    CHECK(is_connected(gen("random-tree", 50, {}, 2)));

    CHECK_THROWS_AS(gen("no-such-family", 10), InputError);
    CHECK_THROWS_AS(gen("path", 0), InputError);
    CHECK_THROWS_AS(gen("grid", 0, {{"w", 0}, {"h", 2}}), InputError);
}

TEST_CASE("generators are deterministic by seed") {
    for (const char* f : {"unit-disk", "bounded-degree-random", "segment-intersection", "erdos-renyi", "random-tree"}) {
        auto a = gen(f, 120, {}, 9), b = gen(f, 120, {}, 9), c = gen(f, 120, {}, 10);
        CHECK(a == b);
        CHECK_FALSE(a == c);
    }
}

TEST_CASE("segment crossing matches a rational recheck") {
    std::mt19937_64 rng(21);
    auto pick = [&](std::int64_t range) { return static_cast<std::int64_t>(rng() % (2 * range + 1)) - range; };
    int crossing = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        // Tiny boxes force collinear, touching and degenerate cases; huge ones test overflow.
        std::int64_t range = trial % 2 ? 3 : 1'000'000'000'000LL;
        Segment a{pick(range), pick(range), pick(range), pick(range)};
        Segment b{pick(range), pick(range), pick(range), pick(range)};
        bool expect = crosses_rational(a, b);
        crossing += expect;
        CHECK(segments_intersect(a, b) == expect);
        CHECK(segments_intersect(b, a) == expect);
    }
    CHECK(crossing > 1000);
    CHECK(segments_intersect({0, 0, 4, 0}, {2, 0, 6, 0}));
    CHECK_FALSE(segments_intersect({0, 0, 1, 0}, {2, 0, 3, 0}));
    CHECK(segments_intersect({0, 0, 2, 2}, {2, 2, 3, 0}));
}

TEST_CASE("verify examples") {
    auto k4 = gen("complete", 4);
    auto fs = parse_pattern_list("K3", Mode::Subgraph);
    auto none = verify(k4, fs, VertexSet{});
    CHECK_FALSE(none.valid);
    CHECK(none.surviving == 4);
    VertexSet all{0, 1, 2, 3};
    CHECK(verify(k4, fs, all).valid);

    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = oracle::erdos_renyi(9, 0.4, rng);
        auto sol = exact_branching_solver(g, fs);
        REQUIRE(sol);
        CHECK(verify(g, fs, sol->vertices).valid);
    }
}

TEST_CASE("bench reports") {
    auto fs = parse_pattern_list("K3", Mode::Subgraph);
    std::vector<GeneratorSpec> specs;
    for (int n = 10; n <= 16; ++n) specs.push_back({"erdos-renyi", n, {{"p", 0.5}}, static_cast<std::uint64_t>(n)});
    BenchOptions o;
    o.oracle_max_n = 16;
    o.workers = 3;
    auto reports = bench(specs, fs, Rational(1), o);
    REQUIRE(reports.size() == specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CHECK(reports[i].n == specs[i].n);
        CHECK(reports[i].valid);
        REQUIRE(reports[i].ratio);
        CHECK(*reports[i].ratio == 1.0);
    }

    BenchOptions serial = o;
    serial.workers = 1;
    auto again = bench(specs, fs, Rational(1), serial);
    for (std::size_t i = 0; i < specs.size(); ++i)
        CHECK(strip_timings(to_json(reports[i]).dump()) == strip_timings(to_json(again[i]).dump()));

    // A broken spec is reported and the sweep carries on.
    std::vector<GeneratorSpec> mixed{{"no-such-family", 5, {}, 1}, {"path", 5, {}, 1}};
    BenchOptions plain;
    auto r = bench(mixed, fs, Rational(1), plain);
    REQUIRE(r.size() == 2);
    CHECK_FALSE(r[0].valid);
    CHECK_FALSE(r[0].error.empty());
    CHECK(r[1].valid);
    CHECK(r[1].ratio == 1.0);  // the exact solver proves its own optimum

    // No oracle and no optimality proof: no ratio.
    BenchOptions sep;
    sep.run.solver = "separator";
    auto s = bench({{"path", 9, {}, 1}}, fs, Rational(1), sep);
    CHECK(s[0].valid);
    CHECK_FALSE(s[0].ratio);
    CHECK(to_json(s[0])["ratio"].is_null());

    std::vector<GeneratorSpec> one{{"path", 3, {}, 1}};
    CHECK(bench(one, fs, Rational(1), plain).size() == 1);
}

TEST_CASE("log-log slope fit") {
    std::vector<double> xs, ys;
    for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
        xs.push_back(x);
        ys.push_back(3.0 * std::pow(x, 1.25));
    }
    auto fit = fit_loglog(xs, ys);
    CHECK(fit.points == 4);
    CHECK(fit.slope == doctest::Approx(1.25).epsilon(1e-9));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0).epsilon(1e-9));
    xs.push_back(0);
    ys.push_back(5);
    CHECK(fit_loglog(xs, ys).points == 4);
}

TEST_CASE("spec parsing") {
    std::istringstream array(R"([{"family":"grid","params":{"w":3,"h":4}},{"family":"path","n":7,"seed":5}])");
    auto a = read_specs(array);
    REQUIRE(a.size() == 2);
    CHECK(a[0].family == "grid");
    CHECK(a[0].param("h", 0) == 4);
    CHECK(a[1].n == 7);
    CHECK(a[1].seed == 5);
    CHECK(spec_from_json(to_json(a[1])).describe() == a[1].describe());

    std::istringstream lines("{\"family\":\"cycle\",\"n\":5}\n\n{\"family\":\"complete\",\"n\":4}\n");
    CHECK(read_specs(lines).size() == 2);

    std::istringstream broken("{\"family\": 3}");
    CHECK_THROWS_AS(read_specs(broken), InputError);
}

TEST_CASE("command line") {
    auto dir = scratch();
    auto k4 = (dir / "k4.txt").string();
    write_file(k4, "a b\na c\na d\nb c\nb d\nc d\n");

    auto exact = run_cli("exact --graph " + k4 + " --patterns K3");
    CHECK(exact.code == 0);
    auto j = nlohmann::json::parse(exact.out);
    CHECK(j["size"] == 2);
    CHECK(j["valid"] == true);

    CHECK(run_cli("verify --graph " + k4 + " --patterns K3 --solution a,b").code == 0);
    auto bad = run_cli("verify --graph " + k4 + " --patterns K3 --solution a");
    CHECK(bad.code == 3);
    CHECK(nlohmann::json::parse(bad.out)["surviving"] == 1);

    CHECK(run_cli("solve --graph " + k4 + " --patterns K3 --eps 1 --solver reduction").code == 0);
    CHECK(run_cli("solve --graph " + k4 + " --patterns K3 --eps 1 --solver clique-wrapper").code == 0);
    CHECK(run_cli("solve --graph " + k4 + " --patterns K3 --eps 0 --solver exact").code == 1);
    CHECK(run_cli("solve --graph " + (dir / "missing.txt").string() + " --patterns K3 --eps 1").code == 1);
    CHECK(run_cli("solve --graph " + k4 + " --patterns K3 --eps 1 --budget 1").code == 2);
    CHECK(run_cli("no-such-command").code == 1);

    auto dec = run_cli("decompose --graph " + k4 + " --k 3 --kind clique");
    CHECK(dec.code == 0);
    auto dj = nlohmann::json::parse(dec.out);
    CHECK(dj["v0"].size() == 1);
    CHECK(dj["parts"].size() == 1);

    auto grid = (dir / "grid.txt").string();
    CHECK(run_cli("generate --family grid --param w=3 --param h=3 --output " + grid).code == 0);
    CHECK(read_edge_list_file(grid).size() == 12u);

    auto sweep = (dir / "sweep.json").string();
    write_file(sweep, "{\"family\":\"path\",\"n\":6}\n{\"family\":\"cycle\",\"n\":7}\n");
    auto b = run_cli("bench --sweep " + sweep + " --patterns K2 --eps 1 --oracle-max-n 10");
    CHECK(b.code == 0);
    std::istringstream rows(b.out);
    std::string row;
    int count = 0;
    while (std::getline(rows, row)) {
        auto r = nlohmann::json::parse(row);
        CHECK(r["ratio"] == 1.0);
        ++count;
    }
    CHECK(count == 2);
    fs::remove_all(dir);
}
