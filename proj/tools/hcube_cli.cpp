// hcube: command-line front end. Every subcommand first collects its
// parameters into a JSON object; execution depends only on that object, so a
// manifest replays a run exactly.

#include "hcube/bounds.hpp"
#include "hcube/cube.hpp"
#include "hcube/errors.hpp"
#include "hcube/lll.hpp"
#include "hcube/records.hpp"
#include "hcube/suites.hpp"
#include "hcube/toric.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using hcube::Json;

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kInconclusive = 3, kConstructionFailed = 4 };

struct Outcome {
    std::string text;
    int code = kOk;
};

struct Runtime {
    int threads = 0;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw hcube::InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Reads the input named in params and checks it against the recorded
/// checksum, so a replay cannot silently run on a changed file.
std::string load_input(Json& params)
{
    const std::string body = read_file(params.at("input").get<std::string>());
    const std::string sum = hcube::fnv1a_hex(body);
    if (params.contains("input_checksum")) {
        if (params["input_checksum"].get<std::string>() != sum)
            throw hcube::InputError("input file changed since the manifest was written");
    } else {
        params["input_checksum"] = sum;
    }
    return body;
}

hcube::SearchOptions search_options(const Json& params, const Runtime& rt)
{
    hcube::SearchOptions opts;
    opts.node_budget = params.at("budget").get<std::uint64_t>();
    opts.threads = rt.threads;
    return opts;
}

bool csv(const Json& params)
{
    return params.at("format").get<std::string>() == "csv";
}

std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

Outcome cmd_mvalue(Json& params, const Runtime& rt)
{
    std::istringstream in(load_input(params));
    const hcube::PointSet s = hcube::read_point_set(in);
    const auto notion = hcube::parse_notion(params.at("notion").get<std::string>());
    const auto mv = hcube::m_value(s, notion, search_options(params, rt));
    const std::string canonical = hcube::to_canonical_text(mv.witness, notion);
    if (csv(params))
        return {"notion,m,witness\n" + std::string(hcube::to_string(notion)) + "," + std::to_string(mv.m) + "," +
                csv_quote(canonical) + "\n"};
    Json out{{"notion", std::string(hcube::to_string(notion))},
             {"m", mv.m},
             {"witness", hcube::cube_to_json(mv.witness, notion)},
             {"canonical", canonical}};
    return {out.dump() + "\n"};
}

Outcome cmd_fexact(Json& params, const Runtime& rt)
{
    const int base = params.at("base").get<int>();
    const int dim = params.at("dim").get<int>();
    const hcube::Rational c = hcube::parse_rational(params.at("c").get<std::string>());
    const auto notion = hcube::parse_notion(params.at("notion").get<std::string>());
    const int f = hcube::f_exhaustive(base, dim, c, notion, search_options(params, rt));
    if (csv(params))
        return {"N,n,c,notion,f\n" + std::to_string(base) + "," + std::to_string(dim) + "," + hcube::to_string(c) +
                "," + std::string(hcube::to_string(notion)) + "," + std::to_string(f) + "\n"};
    Json out{{"N", base}, {"n", dim}, {"c", hcube::to_string(c)}, {"notion", std::string(hcube::to_string(notion))},
             {"f", f}};
    return {out.dump() + "\n"};
}

Outcome cmd_bound(Json& params, const Runtime&)
{
    const hcube::BoundParams bp(params.at("base").get<int>(), hcube::parse_rational(params.at("c").get<std::string>()),
                                hcube::parse_rational(params.at("eps").get<std::string>()));
    std::string text;
    if (csv(params))
        text = hcube::bound_csv_header() + "\n";
    for (const auto& n : params.at("dims")) {
        const auto row = hcube::bound_row(bp, n.get<std::int64_t>());
        text += csv(params) ? hcube::bound_csv_row(row) : hcube::bound_row_to_json(row).dump();
        text += "\n";
    }
    if (bp.c == 1)
        std::cerr << "note: closed form needs c < 1 (log c = 0); only the iterated bound is reported\n";
    return {text};
}

void write_set(const Json& params, const std::optional<hcube::PointSet>& set)
{
    const auto path = params.at("out").get<std::string>();
    if (path.empty() || !set)
        return;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw hcube::InputError("cannot write '" + path + "'");
    hcube::write_point_set(out, *set);
}

int construction_exit(hcube::ConstructionStatus status)
{
    switch (status) {
    case hcube::ConstructionStatus::Success:
        return kOk;
    case hcube::ConstructionStatus::Inconclusive:
        return kInconclusive;
    default:
        return kConstructionFailed;
    }
}

Json eq_ep_json(const hcube::EqEpCheck& e)
{
    return Json{{"c_n", hcube::to_string(e.c_n)},
                {"holds", e.holds},
                {"lhs", hcube::format_real(e.lhs)},
                {"rhs", hcube::format_real(e.rhs)},
                {"holds_natural", e.holds_natural},
                {"lhs_natural", hcube::format_real(e.lhs_natural)},
                {"rhs_natural", hcube::format_real(e.rhs_natural)},
                {"lhs_from_r_bound", hcube::format_real(e.lhs_from_r_bound)}};
}

Outcome cmd_construct(Json& params, const Runtime& rt)
{
    const auto mode = params.at("mode").get<std::string>();
    const auto n = params.at("dim").get<std::int64_t>();
    const int base = params.at("base").get<int>();
    const auto eps = hcube::parse_rational(params.at("eps").get<std::string>());
    const auto seed = params.at("seed").get<std::uint64_t>();
    hcube::ConstructionOptions opts;
    opts.notion = hcube::parse_notion(params.at("notion").get<std::string>());
    opts.max_rounds = params.at("max_rounds").get<std::uint64_t>();
    opts.search = search_options(params, rt);

    Json out{{"mode", mode}, {"N", base}, {"n", n}, {"eps", hcube::to_string(eps)}};
    hcube::ConstructionStatus status;
    std::optional<hcube::Certificate> cert;
    if (mode == "dense") {
        auto res = hcube::construct_dense_small_m(n, base, eps, seed, opts);
        status = res.status;
        out["status"] = std::string(hcube::to_string(status));
        out["r"] = res.r ? Json(*res.r) : Json(nullptr);
        out["target_density"] = hcube::to_string(res.target_density);
        out["tolerance"] = hcube::format_real(res.tolerance);
        out["eq_ep"] = res.eq_ep ? eq_ep_json(*res.eq_ep) : Json(nullptr);
        cert = res.certificate;
        write_set(params, res.set);
        if (status == hcube::ConstructionStatus::NoValidR)
            std::cerr << "no integer r lies strictly inside ((1+eps/2) log2 n, (1+eps) log2 n)\n";
        else if (status == hcube::ConstructionStatus::NoValidDensity)
            std::cerr << "the density schedule c_n is 0 at this n\n";
    } else if (mode == "sparse") {
        auto res = hcube::construct_sparse_bounded_m(n, base, eps, seed, opts);
        status = res.status;
        out["status"] = std::string(hcube::to_string(status));
        out["r"] = res.r;
        out["p"] = hcube::to_string(res.p);
        out["chain"] = Json{{"line1", hcube::format_real(res.chain.line1)},
                            {"line2", hcube::format_real(res.chain.line2)},
                            {"line3", hcube::to_string(res.chain.line3)},
                            {"line4", hcube::to_string(res.chain.line4)},
                            {"chain_holds", res.chain.chain_holds},
                            {"final_negative", res.chain.final_negative}};
        out["size_target_met"] = res.size_target_met;
        cert = res.certificate;
        write_set(params, res.set);
        if (status == hcube::ConstructionStatus::NoValidDensity)
            std::cerr << "floor(eps n) = 0 gives inclusion probability 1\n";
    } else {
        throw hcube::InputError("construct mode must be dense or sparse");
    }
    out["certificate"] = cert ? hcube::certificate_to_json(*cert) : Json(nullptr);
    if (status != hcube::ConstructionStatus::Success)
        std::cerr << "construction status: " << hcube::to_string(status) << "\n";
    return {out.dump() + "\n", construction_exit(status)};
}

Outcome cmd_toric(Json& params, const Runtime& rt)
{
    std::istringstream in(load_input(params));
    const auto input = hcube::read_polytope(in);
    const auto stats = hcube::code_stats(input.polytope, input.q, search_options(params, rt), rt.threads);
    if (csv(params))
        return {hcube::code_stats_csv_header() + "\n" + hcube::code_stats_csv_row(stats) + "\n"};
    return {hcube::code_stats_to_json(stats).dump() + "\n"};
}

Outcome cmd_verify(Json& params, const Runtime& rt)
{
    hcube::SuiteConfig config{params.at("seed").get<std::uint64_t>(), params.at("instances").get<std::uint64_t>(),
                              search_options(params, rt)};
    const auto report = hcube::run_suite(params.at("suite").get<std::string>(), config);
    std::string text;
    if (csv(params)) {
        text = "check,checked,skipped,violations\n";
        for (const auto& c : report.checks)
            text += c.name + "," + std::to_string(c.checked) + "," + std::to_string(c.skipped) + "," +
                    std::to_string(c.violations) + "\n";
    } else {
        Json checks = Json::array();
        for (const auto& c : report.checks)
            checks.push_back(
                {{"name", c.name}, {"checked", c.checked}, {"skipped", c.skipped}, {"violations", c.violations}});
        Json out{{"suite", report.suite},
                 {"seed", config.seed},
                 {"instances", config.instances},
                 {"passed", report.passed()},
                 {"checks", std::move(checks)}};
        text = out.dump() + "\n";
    }
    return {text, report.passed() ? kOk : kFailure};
}

Outcome run_command(const std::string& sub, Json& params, const Runtime& rt)
{
    if (sub == "mvalue")
        return cmd_mvalue(params, rt);
    if (sub == "fexact")
        return cmd_fexact(params, rt);
    if (sub == "bound")
        return cmd_bound(params, rt);
    if (sub == "construct")
        return cmd_construct(params, rt);
    if (sub == "toric")
        return cmd_toric(params, rt);
    if (sub == "verify")
        return cmd_verify(params, rt);
    throw hcube::InputError("unknown subcommand '" + sub + "'");
}

int guarded(const std::function<int()>& body)
{
    try {
        return body();
    } catch (const hcube::BudgetExceeded& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const hcube::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const hcube::TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad parameters: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Affine cubes in grids: M(S), density bounds, cube-free constructions, toric codes"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    int threads = 0;
    std::uint64_t budget = hcube::SearchOptions{}.node_budget;
    std::uint64_t seed = hcube::kDefaultSeed;
    std::string manifest_out;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", threads, "Worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--budget", budget, "Search node budget");
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--manifest-out", manifest_out, "Write a run manifest to this file");

    std::string input;
    std::string notion{hcube::to_string(hcube::kDefaultNotion)};
    int base = 2;
    std::int64_t dim = 0;
    std::vector<std::int64_t> dims;
    std::string c_text;
    std::string eps_text;
    std::string mode;
    std::string out_path;
    std::uint64_t max_rounds = hcube::ConstructionOptions{}.max_rounds;
    std::string suite;
    std::uint64_t instances = 1000;
    std::string manifest_in;

    auto* mvalue = app.add_subcommand("mvalue", "Maximal cube dimension M(S) of a point-set file");
    mvalue->add_option("input", input, "Point-set file")->required();
    mvalue->add_option("--notion", notion, "VERTEX_INJECTIVE, INDEPENDENT_GENERATORS or UNIMODULAR");

    auto* fexact = app.add_subcommand("fexact", "Exact f_N(n, c) by exhausting all subsets (N^n <= 16)");
    fexact->add_option("--base,-N", base)->required();
    fexact->add_option("--dim,-n", dim)->required();
    fexact->add_option("--c,-c", c_text)->required();
    fexact->add_option("--notion", notion);

    auto* bound = app.add_subcommand("bound", "Iterated and closed-form lower bounds on f_N(n, c)");
    bound->add_option("--base,-N", base)->required();
    bound->add_option("--dim,-n", dims, "One or more n")->required();
    bound->add_option("--c,-c", c_text)->required();
    bound->add_option("--eps", eps_text)->required();

    auto* construct = app.add_subcommand("construct", "Cube-free set by Moser-Tardos resampling");
    construct->add_option("mode", mode, "dense or sparse")->required()->check(CLI::IsMember({"dense", "sparse"}));
    construct->add_option("--dim,-n", dim)->required();
    construct->add_option("--base,-N", base);
    construct->add_option("--eps", eps_text)->required();
    construct->add_option("--notion", notion);
    construct->add_option("--max-rounds", max_rounds);
    construct->add_option("--out", out_path, "Write the final point set here");

    auto* toric = app.add_subcommand("toric", "Toric code statistics of a polytope file");
    toric->add_option("input", input, "Polytope file")->required();

    auto* verify = app.add_subcommand("verify", "Run a property suite");
    verify->add_option("suite", suite, "lemmas, oracle, nesting, monotonicity or all")->required();
    verify->add_option("--instances", instances, "Randomized instances per check");

    auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare output checksums");
    replay->add_option("manifest", manifest_in)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    const Runtime rt{threads};
    return guarded([&]() -> int {
        if (replay->parsed()) {
            auto manifest = hcube::manifest_from_json(Json::parse(read_file(manifest_in)));
            if (manifest.version != hcube::kToolVersion)
                std::cerr << "warning: manifest written by version " << manifest.version << "\n";
            const Outcome result = run_command(manifest.subcommand, manifest.params, rt);
            std::cout << result.text;
            if (hcube::fnv1a_hex(result.text) != manifest.checksum) {
                std::cerr << "replay mismatch: output checksum differs from the manifest\n";
                return kFailure;
            }
            return result.code;
        }

        std::string sub = app.get_subcommands().front()->get_name();
        Json params{{"format", format}, {"budget", budget}};
        if (sub == "mvalue") {
            params["input"] = input;
            params["notion"] = std::string(hcube::to_string(hcube::parse_notion(notion)));
        } else if (sub == "fexact") {
            params["base"] = base;
            params["dim"] = dim;
            params["c"] = hcube::to_string(hcube::parse_rational(c_text));
            params["notion"] = std::string(hcube::to_string(hcube::parse_notion(notion)));
        } else if (sub == "bound") {
            params["base"] = base;
            params["dims"] = dims;
            params["c"] = hcube::to_string(hcube::parse_rational(c_text));
            params["eps"] = hcube::to_string(hcube::parse_rational(eps_text));
        } else if (sub == "construct") {
            params["mode"] = mode;
            params["dim"] = dim;
            params["base"] = base;
            params["eps"] = hcube::to_string(hcube::parse_rational(eps_text));
            params["seed"] = seed;
            params["notion"] = std::string(hcube::to_string(hcube::parse_notion(notion)));
            params["max_rounds"] = max_rounds;
            params["out"] = out_path;
        } else if (sub == "toric") {
            params["input"] = input;
        } else if (sub == "verify") {
            params["suite"] = suite;
            params["seed"] = seed;
            params["instances"] = instances;
        }

        const Outcome result = run_command(sub, params, rt);
        std::cout << result.text;
        if (!manifest_out.empty()) {
            const hcube::RunManifest manifest{sub, params, seed, std::string(hcube::kToolVersion),
                                              hcube::fnv1a_hex(result.text)};
            std::ofstream mf(manifest_out, std::ios::binary);
            if (!mf)
                throw hcube::InputError("cannot write manifest '" + manifest_out + "'");
            mf << hcube::manifest_to_json(manifest).dump(2) << "\n";
        }
        return result.code;
    });
}
