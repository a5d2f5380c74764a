#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcube/bounds.hpp"
#include "hcube/records.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using hcube::Json;

namespace {

struct Run {
    std::string out;
    int code;
};

/// Runs the CLI with `args`; stderr is discarded unless merge is set.
Run run(const std::string& args, bool merge = false)
{
    const std::string cmd = std::string(HCUBE_CLI_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, got);
    const int status = pclose(pipe);
    return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

fs::path workdir()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("hcube_cli_test_" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write(const std::string& name, const std::string& body)
{
    const auto path = workdir() / name;
    std::ofstream(path) << body;
    return path.string();
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("mvalue")
{
    const auto full = write("full.txt", "2 2\n0 0\n0 1\n1 0\n1 1\n");
    const auto single = write("single.txt", "3 2\n1 2\n");
    const auto four = write("four.txt", "5 1\n0\n1\n2\n3\n");

    auto r = run("mvalue " + full);
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["m"] == 2);
    CHECK(Json::parse(r.out)["witness"]["generators"] == Json::parse("[[0,1],[1,0]]"));
    CHECK(Json::parse(run("mvalue " + single).out)["m"] == 0);
    CHECK(Json::parse(run("mvalue " + four + " --notion VERTEX_INJECTIVE").out)["m"] == 2);
    CHECK(Json::parse(run("mvalue " + four + " --notion INDEPENDENT_GENERATORS").out)["m"] == 1);

    const auto csv = run("--format csv mvalue " + four);
    CHECK(csv.out == "notion,m,witness\nINDEPENDENT_GENERATORS,1,\"INDEPENDENT_GENERATORS m=1 base=(0) gens=[(1)]\"\n");
}

TEST_CASE("mvalue errors and budget")
{
    CHECK(run("mvalue " + write("bad.txt", "2 2\n0 5\n")).code == 2);
    CHECK(run("mvalue " + (workdir() / "missing.txt").string()).code == 2);
    CHECK(run("mvalue " + write("empty.txt", "2 2\n")).code == 2);
    CHECK(run("mvalue " + write("ok.txt", "2 1\n0\n") + " --notion bogus").code == 2);
    CHECK(run("--format xml mvalue " + write("ok2.txt", "2 1\n0\n")).code == 2);

    std::string big = "2 8\n";
    for (int i = 0; i < 256; i += 2) {
        for (int b = 0; b < 8; ++b)
            big += std::to_string((i >> b) & 1) + (b < 7 ? " " : "\n");
    }
    const auto r = run("--budget 5 mvalue " + write("big.txt", big), true);
    CHECK(r.code == 3);
    CHECK(r.out.find("inconclusive") != std::string::npos);
}

TEST_CASE("bound")
{
    const auto r = run("bound -N 2 -n 10 -c 1/2 --eps 1");
    CHECK(r.code == 0);
    const auto row = Json::parse(r.out);
    const auto lib = hcube::bound_row(hcube::BoundParams(2, hcube::Rational(1, 2), 1), 10);
    CHECK(row["iterated_bound"] == lib.iterated);
    CHECK(row["closed_form_bound"] == lib.closed_form->value);
    CHECK(row["alpha"] == "7/3");

    const auto full = Json::parse(run("bound -N 2 -n 10 -c 1 --eps 1").out);
    CHECK(full["closed_form_bound"].is_null());
    CHECK(full["iterated_bound"] == hcube::bound_row(hcube::BoundParams(2, 1, 1), 10).iterated);

    const auto csv = run("--format csv bound -N 2 -n 4 -n 8 -n 16 -c 1/2 --eps 1");
    CHECK(csv.out.rfind("N,n,c,iterated_bound,closed_form_bound,alpha,beta\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 4);
    CHECK(csv.out.find("N,n,c", 1) == std::string::npos);

    CHECK(run("bound -N 2 -n 10 -c 0 --eps 1").code == 2);
    CHECK(run("bound -N 2 -n 10 -c 3/2 --eps 1").code == 2);
    CHECK(run("bound -N 2 -n 10 -c 1/2 --eps -1").code == 2);
}

TEST_CASE("fexact")
{
    const auto r = run("fexact -N 2 -n 3 -c 1");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["f"] == 3);
    CHECK(run("fexact -N 2 -n 5 -c 1").code == 2);
}

TEST_CASE("construct")
{
    const auto out = (workdir() / "sparse.txt").string();
    const auto r = run("construct sparse -n 12 --eps 1/2 --out " + out);
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["status"] == "success");
    CHECK(j["r"] == 6);
    CHECK(j["p"] == "1/64");
    CHECK(j["certificate"]["verified"] == true);
    CHECK(j["chain"]["final_negative"] == true);
    // The written set is the certified one.
    const auto m = Json::parse(run("mvalue " + out).out);
    CHECK(m["m"].get<int>() < 6);

    CHECK(run("construct sparse -n 12 --eps 1/2").out == r.out);

    const auto missed = run("--seed 20240920 construct sparse -n 12 --eps 1/2");
    CHECK(missed.code == 4);
    CHECK(Json::parse(missed.out)["status"] == "size_target_missed");

    const auto none = run("construct dense -n 16 --eps 1/2", true);
    CHECK(none.code == 4);
    CHECK(none.out.find("no integer r") != std::string::npos);

    const auto dense = run("construct dense -n 8 --eps 1");
    CHECK(dense.code == 0);
    CHECK(Json::parse(dense.out)["certificate"]["verified"] == true);

    CHECK(run("--budget 1000 construct dense -n 16 --eps 1").code == 3);
    CHECK(run("construct diagonal -n 8 --eps 1").code == 2);
}

TEST_CASE("toric")
{
    const auto seg = Json::parse(run("toric " + write("seg.txt", "5 1\n0\n2\n")).out);
    CHECK(seg["block_length"] == 4);
    CHECK(seg["k"] == 3);
    CHECK(seg["dmin"] == 2);
    CHECK(seg["relative_distance"] == "1/2");
    CHECK(seg["rate"] == "3/4");
    CHECK(seg["m"] == 1);

    const auto pt = Json::parse(run("toric " + write("pt.txt", "3 1\n0\n")).out);
    CHECK(pt["block_length"] == 2);
    CHECK(pt["k"] == 1);
    CHECK(pt["dmin"] == 2);
    CHECK(pt["relative_distance"] == "1");
    CHECK(pt["rate"] == "1/2");
    CHECK(pt["m"] == 0);

    CHECK(run("--format csv toric " + write("seg2.txt", "5 1\n0\n2\n")).out ==
          "q,n,block_length,k,dmin,relative_distance,rate,m\n5,1,4,3,2,1/2,3/4,1\n");
    CHECK(run("toric " + write("oob.txt", "5 1\n0\n4\n")).code == 2);
    CHECK(run("toric " + write("junk.txt", "five one\n")).code == 2);
    CHECK(run("toric " + write("nonprime.txt", "4 1\n0\n")).code == 2);
}

TEST_CASE("verify")
{
    const auto r = run("verify lemmas --instances 40");
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["passed"] == true);
    for (const auto& c : j["checks"])
        CHECK(c["violations"] == 0);
    CHECK(run("verify nesting --instances 20").code == 0);
    CHECK(run("verify oracle").code == 0);
    CHECK(run("verify monotonicity --instances 30").code == 0);
    CHECK(run("verify everything").code == 2);
}

TEST_CASE("manifests replay byte-identically")
{
    const auto seg = write("seg3.txt", "5 1\n0\n2\n");
    const auto mf = (workdir() / "toric.manifest.json").string();
    const auto r = run("--manifest-out " + mf + " toric " + seg);
    CHECK(r.code == 0);
    const auto manifest = hcube::manifest_from_json(Json::parse(slurp(mf)));
    CHECK(manifest.subcommand == "toric");
    CHECK(manifest.checksum == hcube::fnv1a_hex(r.out));
    CHECK(hcube::manifest_from_json(hcube::manifest_to_json(manifest)) == manifest);

    const auto again = run("replay " + mf);
    CHECK(again.code == 0);
    CHECK(again.out == r.out);

    // A changed input is refused; a wrong checksum is reported.
    write("seg3.txt", "5 1\n0\n3\n");
    CHECK(run("replay " + mf).code == 2);
    write("seg3.txt", "5 1\n0\n2\n");
    auto tampered = Json::parse(slurp(mf));
    tampered["checksum"] = "0000000000000000";
    const auto bad = write("tampered.json", tampered.dump());
    CHECK(run("replay " + bad).code == 1);
    CHECK(run("replay " + write("notjson.json", "{")).code == 2);
}
