#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "doctest.h"
#include "keygraph/cli.hpp"

using namespace keygraph;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "keygraph");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "keygraph_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

const std::vector<std::string> kFig4Model = {"--n", "500", "--P", "10000", "--mu", "0.5,0.5", "--alpha", "0.4"};

}  // namespace

TEST_CASE("prob reports gamma above the threshold") {
    std::vector<std::string> args{"prob"};
    args.insert(args.end(), kFig4Model.begin(), kFig4Model.end());
    args.insert(args.end(), {"--K", "30,40", "--k", "8"});
    const Run r = cli(args);
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "side=above"));
    CHECK(contains(r.out, "admissible=true"));
    const auto at = r.out.find("gamma=");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(r.out.substr(at + 6)) > 0.0);
    CHECK(contains(r.out, "p_ij class1 class2"));

    args[args.size() - 3] = "29,39";
    CHECK(contains(cli(args).out, "side=below"));
}

TEST_CASE("threshold solves the design rule") {
    std::vector<std::string> args{"threshold"};
    args.insert(args.end(), kFig4Model.begin(), kFig4Model.end());
    args.insert(args.end(), {"--k", "8", "--offsets", "0,10"});
    const Run r = cli(args);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("K1_min=30\nK=30,40\n", 0) == 0);

    const Run tail = cli({"threshold", "--n", "500", "--P", "10000", "--mu", "0.5,0.5", "--alpha", "0.4", "--k",
                          "8", "--fixed-tail", "60"});
    REQUIRE(tail.code == 0);
    CHECK(contains(tail.out, "K="));
    CHECK(contains(tail.out, ",60\n"));

    const Run none = cli({"threshold", "--n", "100000", "--P", "60", "--mu", "0.5,0.5", "--alpha", "0.0001",
                          "--offsets", "0,10"});
    CHECK(none.code == 0);
    CHECK(contains(none.out, "K1_min=unsatisfiable"));

    CHECK(cli({"threshold", "--n", "500", "--P", "10000", "--mu", "0.5,0.5", "--alpha", "0.4", "--offsets", "0,10",
               "--fixed-tail", "60"})
              .code == 2);
}

TEST_CASE("usage errors exit 2 with help") {
    const Run none = cli({});
    CHECK(none.code == 2);
    const Run bogus = cli({"frobnicate"});
    CHECK(bogus.code == 2);
    const Run missing = cli({"prob", "--n", "500"});
    CHECK(missing.code == 2);
    CHECK(contains(missing.err, "missing required flag --P"));
    CHECK(contains(missing.err, "Usage"));
    const Run bad_number = cli({"prob", "--n", "five", "--P", "10", "--mu", "1", "--K", "2", "--alpha", "0.5"});
    CHECK(bad_number.code == 2);
    CHECK(contains(bad_number.err, "--n"));
    const Run bad_model = cli({"prob", "--n", "50", "--P", "10", "--mu", "1", "--K", "20", "--alpha", "0.5"});
    CHECK(bad_model.code == 2);
    const Run mismatch = cli({"prob", "--n", "50", "--P", "10", "--mu", "0.5,0.5", "--K", "2", "--alpha", "0.5"});
    CHECK(mismatch.code == 2);
    CHECK(contains(mismatch.err, "same number of classes"));
    CHECK(cli({"fig5"}).code == 2);
    CHECK(cli({"run"}).code == 2);
    CHECK(cli({"fig1", "--trials", "-x"}).code == 2);
    const Run help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "fig4"));
}

TEST_CASE("run with a missing spec file exits 1 naming the path") {
    const Run r = cli({"run", "--spec", "missing.json"});
    CHECK(r.code == 1);
    CHECK(contains(r.err, "missing.json"));
}

TEST_CASE("run with an invalid spec exits 1 naming the path") {
    const auto path = scratch("bad.json");
    {
        std::ofstream out(path);
        out << R"({"name": "x", "bogus": 1})";
    }
    const Run r = cli({"run", "--spec", path.string()});
    CHECK(r.code == 1);
    CHECK(contains(r.err, path.string()));
    CHECK(contains(r.err, "bogus"));
}

TEST_CASE("run executes a spec file and honours --seed") {
    const auto path = scratch("spec.json");
    {
        std::ofstream out(path);
        out << R"({"experiments": [{
            "name": "tiny",
            "base": {"n": 40, "P": 100, "mu": [0.5, 0.5], "K": [4, 8], "alpha": 0.6},
            "sweep": {"axis": "alpha", "values": [0.3, 0.6]},
            "trials": 8, "k_list": [1, 2], "master_seed": 5}]})";
    }
    const Run a = cli({"run", "--spec", path.string()});
    REQUIRE(a.code == 0);
    std::istringstream lines(a.out);
    std::string line;
    int rows = 0;
    std::getline(lines, line);
    CHECK(line.rfind("experiment,n,P,alpha,k,", 0) == 0);
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.rfind("tiny,40,100,", 0) == 0);
        CHECK(line.substr(line.rfind(',') + 1) == "5");
    }
    CHECK(rows == 4);
    CHECK(cli({"run", "--spec", path.string(), "--threads", "3"}).out == a.out);

    const Run seeded = cli({"run", "--spec", path.string(), "--seed", "77"});
    REQUIRE(seeded.code == 0);
    CHECK(contains(seeded.out, ",77\n"));

    const Run fewer = cli({"run", "--spec", path.string(), "--trials", "3"});
    REQUIRE(fewer.code == 0);
    std::istringstream fewer_lines(fewer.out);
    std::getline(fewer_lines, line);
    while (std::getline(fewer_lines, line)) {
        std::istringstream fields(line);
        std::string field;
        for (int i = 0; i < 8; ++i) std::getline(fields, field, ',');
        CHECK(field == "3");
    }
    CHECK(cli({"run", "--spec", path.string(), "--trials", "0"}).code == 2);

    const auto prefix = scratch("plot");
    const auto csv = scratch("tiny.csv");
    CHECK(cli({"run", "--spec", path.string(), "--out", csv.string(), "--dat", prefix.string()}).code == 0);
    CHECK(slurp(csv) == a.out);
    CHECK(std::filesystem::exists(scratch("plot_tiny_k1.dat")));
    CHECK(std::filesystem::exists(scratch("plot_tiny_k2.dat")));
}

TEST_CASE("fig4 is byte-identical for a fixed seed and stamps its parameters") {
    const std::vector<std::string> args{"fig4", "--n", "120", "--P", "1500", "--trials", "6", "--seed", "3"};
    const Run a = cli(args);
    REQUIRE(a.code == 0);
    std::vector<std::string> threaded = args;
    threaded.insert(threaded.end(), {"--threads", "2"});
    CHECK(cli(threaded).out == a.out);
    CHECK(contains(a.out, "fig4_k8,120,1500,0.4,1,"));
    CHECK(contains(a.out, ",6,"));
    CHECK(a.out.substr(a.out.size() - 3) == ",3\n");
}

TEST_CASE("KEYGRAPH_SEED is the fallback seed") {
    const std::vector<std::string> args{"sample", "--n", "20", "--P", "50", "--mu", "1", "--K", "4", "--alpha", "0.5"};
    std::vector<std::string> explicit_seed = args;
    explicit_seed.insert(explicit_seed.end(), {"--seed", "99"});
    const std::string expected = cli(explicit_seed).out;
    const std::string unseeded = cli(args).out;

    ::setenv("KEYGRAPH_SEED", "99", 1);
    const std::string from_env = cli(args).out;
    std::vector<std::string> override_seed = args;
    override_seed.insert(override_seed.end(), {"--seed", "0"});
    const std::string overridden = cli(override_seed).out;
    ::setenv("KEYGRAPH_SEED", "junk", 1);
    const Run junk = cli(args);
    ::unsetenv("KEYGRAPH_SEED");

    CHECK(from_env == expected);
    CHECK(overridden == unseeded);
    CHECK(expected != unseeded);
    CHECK(junk.code == 2);
    CHECK(contains(junk.err, "KEYGRAPH_SEED"));
}

TEST_CASE("sample then analyze") {
    const auto dump = scratch("net.txt");
    REQUIRE(cli({"sample", "--n", "8", "--P", "4", "--mu", "1", "--K", "3", "--alpha", "1", "--out", dump.string()})
                .code == 0);
    const Run r = cli({"analyze", dump.string(), "--k", "7"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "edges=28\n"));
    CHECK(contains(r.out, "vertex_connectivity=7\n"));
    CHECK(contains(r.out, "min_vertex_cut=\n"));
    CHECK(contains(r.out, "k_connected=true\n"));

    const Run missing = cli({"analyze", "--in", "/nonexistent/net.txt"});
    CHECK(missing.code == 1);
    CHECK(contains(missing.err, "/nonexistent/net.txt"));
    CHECK(cli({"analyze"}).code == 2);
}

TEST_CASE("installed binary exit codes") {
    const char* bin = std::getenv("KEYGRAPH_BIN");
    if (bin == nullptr) return;
    auto status = [&](const std::string& args) {
        const int raw = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("run --spec missing.json") == 1);
    CHECK(status("prob --n 3") == 2);
    CHECK(status("threshold --n 500 --P 10000 --mu 0.5,0.5 --alpha 0.4 --k 8 --offsets 0,10") == 0);
}
