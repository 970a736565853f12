#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "slabdtn/svg.hpp"
#include "slabdtn/symbol.hpp"
#include "slabdtn/table.hpp"

namespace fs = std::filesystem;
using namespace slabdtn;

namespace {

std::string cli_path() {
    const char* p = std::getenv("SLABDTN_CLI");
    return p ? p : "";
}

int run_cli(const std::string& args) {
    const int status = std::system((cli_path() + " " + args).c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("slabdtn_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// minimal well-formedness scan: tags balance and the document is one element
bool xml_well_formed(const std::string& doc) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    if (doc.rfind("<?xml", 0) == 0) i = doc.find("?>") + 2;
    while (i < doc.size()) {
        const std::size_t open = doc.find('<', i);
        if (open == std::string::npos) break;
        const std::size_t close = doc.find('>', open);
        if (close == std::string::npos) return false;
        std::string tag = doc.substr(open + 1, close - open - 1);
        i = close + 1;
        if (tag.empty()) return false;
        if (tag[0] == '/') {
            if (stack.empty()) return false;
            if (stack.back() != tag.substr(1)) return false;
            stack.pop_back();
        } else if (tag.back() != '/') {
            const std::size_t sp = tag.find_first_of(" \t\n");
            stack.push_back(sp == std::string::npos ? tag : tag.substr(0, sp));
        }
    }
    return stack.empty();
}

}  // namespace

TEST_CASE("table: CSV write/read round trip is bit exact") {
    Table t;
    t.comments = {"argv: demo"};
    t.columns = {"a", "b"};
    t.append_row({1.0 / 3.0, 2.7182818284590452});
    t.append_row({-1e-300, 6.02214076e23});
    std::stringstream ss;
    write_csv(t, ss);
    const Table back = read_csv(ss);
    REQUIRE(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.rows[i].size(); ++j)
            CHECK(back.rows[i][j] == t.rows[i][j]);
    CHECK(back.comments == t.comments);

    // two-row table -> header + 2 lines
    std::stringstream plain;
    Table small;
    small.columns = {"x"};
    small.append_row({1.0});
    small.append_row({2.0});
    write_csv(small, plain);
    int lines = 0;
    std::string line;
    while (std::getline(plain, line)) ++lines;
    CHECK(lines == 3);
}

TEST_CASE("svg: renders well-formed XML including log axes and guides") {
    Table t;
    t.columns = {"r", "v"};
    for (int i = 1; i <= 16; ++i)
        t.append_row({double(i), 0.5 * i * i});
    PlotSpec spec;
    spec.x_column = "r";
    spec.y_columns = {"v"};
    spec.x_scale = AxisScale::log;
    spec.y_scale = AxisScale::log;
    spec.guides = {{2.0, "slope 2"}};
    spec.title = "demo";
    const std::string doc = render_svg(t, spec);
    CHECK(doc.find("<svg") != std::string::npos);
    CHECK(doc.find("polyline") != std::string::npos);
    CHECK(xml_well_formed(doc));

    Table neg = t;
    neg.rows[0][1] = -1.0;
    CHECK_THROWS_AS(render_svg(neg, spec), std::invalid_argument);
    CHECK_THROWS_AS(render_svg(Table{{}, {"x"}, {}}, spec), std::invalid_argument);
}

TEST_CASE("cli: help and usage errors") {
    REQUIRE_MESSAGE(!cli_path().empty(), "SLABDTN_CLI env var must point at the binary");
    CHECK(run_cli("--help > /dev/null 2>&1") == 0);
    CHECK(run_cli("symbol --help > /dev/null 2>&1") == 0);
    CHECK(run_cli("2> /dev/null") == 2);                       // missing subcommand
    CHECK(run_cli("symbol --s 0.5 2> /dev/null") == 2);        // missing --out
    CHECK(run_cli("symbol --s 1.5 --out /tmp/x.csv 2> /dev/null") == 2);
    CHECK(run_cli("ts-curve --s 0.7 --out /tmp/x.csv 2> /dev/null") == 2);
    CHECK(run_cli("symbol --s 0.5 --frobnicate 1 --out /tmp/x.csv 2> /dev/null") == 2);
}

TEST_CASE("cli: symbol emits tanh at s = 1/2, deterministically") {
    TempDir tmp;
    const std::string out = (tmp.path / "sym.csv").string();
    const std::string args =
        "symbol --s 0.5 --r-min 0 --r-max 10 --points 11 --out " + out;
    REQUIRE(run_cli(args + " > /dev/null") == 0);

    std::ifstream is(out);
    const Table t = read_csv(is);
    CHECK(t.columns ==
          std::vector<std::string>{"r", "s_tilde", "s_full", "ds_tilde"});
    REQUIRE(t.rows.size() == 11);
    const std::size_t rcol = t.column_index("r"), scol = t.column_index("s_tilde");
    for (const auto& row : t.rows)
        CHECK(row[scol] == doctest::Approx(std::tanh(row[rcol])).epsilon(1e-12));

    const std::string first = slurp(out);
    REQUIRE(run_cli(args + " > /dev/null") == 0);
    CHECK(slurp(out) == first);  // identical argv -> byte-identical output
}

TEST_CASE("cli: unwritable output path is a numeric failure (exit 1)") {
    CHECK(run_cli("symbol --s 0.5 --points 4 --out /nonexistent_dir_xyz/a.csv "
                  "2> /dev/null") == 1);
}

TEST_CASE("cli: ts-curve writes CSV and a valid SVG with a slope guide") {
    TempDir tmp;
    const std::string out = (tmp.path / "ts.csv").string();
    const std::string svg = (tmp.path / "ts.svg").string();
    REQUIRE(run_cli("ts-curve --s 0.25 --r-min 0.01 --r-max 1 --points 4 --out " +
                    out + " --plot " + svg + " > /dev/null") == 0);
    std::ifstream is(out);
    const Table t = read_csv(is);
    CHECK(t.columns == std::vector<std::string>{"r", "t_value", "error_estimate",
                                                "evaluations"});
    CHECK(t.rows.size() == 4);
    const std::string doc = slurp(svg);
    CHECK(xml_well_formed(doc));
    CHECK(doc.find("slope 1-2s") != std::string::npos);
}

TEST_CASE("cli: oracle, energy, averaging, limsup-trend, gamma-min smoke") {
    TempDir tmp;
    const std::string d = tmp.path.string();
    CHECK(run_cli("oracle --s 0.5 --r 1 --mesh-sizes 64,256 --out " + d +
                  "/orc.csv > /dev/null") == 0);
    CHECK(run_cli("energy --s 0.3 --epsilon 0.1 --n 256 --out " + d +
                  "/en.csv > /dev/null") == 0);
    CHECK(run_cli("averaging --omegas 0,50 --samples 4097 --out " + d +
                  "/avg.csv > /dev/null") == 0);
    CHECK(run_cli("limsup-trend --s 0.3 --epsilons 0.1,0.01 --n 512 --out " + d +
                  "/lt.csv > /dev/null") == 0);
    CHECK(run_cli("gamma-min --s 0.3 --epsilons 0.1 --n 256 --max-iter 30 --out " +
                  d + "/min.json --field-out " + d + "/field.csv > /dev/null") == 0);

    {
        std::ifstream is(d + "/lt.csv");
        const Table t = read_csv(is);
        REQUIRE(t.rows.size() == 2);
        CHECK(t.rows[0][1] == doctest::Approx(t.rows[1][1]).epsilon(1e-12));
    }
    {
        const std::string json = slurp(d + "/min.json");
        CHECK(json.find("\"s\":") != std::string::npos);
        CHECK(json.find("\"energy_history\":[") != std::string::npos);
        CHECK(json.find("\"converged\":") != std::string::npos);
    }
    {
        std::ifstream is(d + "/en.csv");
        const Table t = read_csv(is);
        REQUIRE(t.rows.size() == 1);
        bool regime_comment = false;
        for (const std::string& c : t.comments)
            if (c.find("regime:") != std::string::npos) regime_comment = true;
        CHECK(regime_comment);
        const double interaction = t.rows[0][t.column_index("interaction")];
        const double total = t.rows[0][t.column_index("total")];
        CHECK(total == doctest::Approx(interaction).epsilon(1e-12));  // indicator
    }
}

TEST_CASE("cli: field round trip through --field-in, history CSV, exp averaging") {
    TempDir tmp;
    const std::string d = tmp.path.string();

    // energy of a saved minimiser field must match the energy of the same
    // field loaded back from CSV
    REQUIRE(run_cli("gamma-min --s 0.3 --epsilons 0.1 --n 256 --max-iter 20 --out " +
                    d + "/t.json --field-out " + d + "/f.csv --history-out " + d +
                    "/h.csv > /dev/null") == 0);
    REQUIRE(run_cli("energy --s 0.3 --epsilon 0.1 --field-in " + d +
                    "/f.csv --out " + d + "/e1.csv > /dev/null") == 0);
    {
        std::ifstream is(d + "/h.csv");
        const Table h = read_csv(is);
        CHECK(h.columns ==
              std::vector<std::string>{"epsilon", "iteration", "energy"});
        REQUIRE(h.rows.size() >= 2);
        const std::size_t ecol = h.column_index("energy");
        for (std::size_t i = 1; i < h.rows.size(); ++i)
            CHECK(h.rows[i][ecol] <= h.rows[i - 1][ecol]);
        // the last trace energy equals the energy of the saved field
        std::ifstream eis(d + "/e1.csv");
        const Table e1 = read_csv(eis);
        CHECK(e1.rows[0][e1.column_index("total")] ==
              doctest::Approx(h.rows.back()[ecol]).epsilon(1e-12));
    }
    CHECK(run_cli("energy --s 0.3 --epsilon 0.1 --field-in " + d +
                  "/missing.csv --out " + d + "/e2.csv 2> /dev/null") == 1);

    REQUIRE(run_cli("averaging --omegas 50,200 --profile exp --samples 32769 --out " +
                    d + "/ax.csv > /dev/null") == 0);
    std::ifstream is(d + "/ax.csv");
    const Table a = read_csv(is);
    REQUIRE(a.rows.size() == 2);
    const std::size_t gcol = a.column_index("gap");
    CHECK(a.rows[1][gcol] < a.rows[0][gcol]);  // gap decays in omega
}
