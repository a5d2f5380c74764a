#include "hcube/records.hpp"

#include "hcube/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace hcube {

Json point_to_json(const Point& p)
{
    Json out = Json::array();
    for (auto c : p)
        out.push_back(c);
    return out;
}

Json cube_to_json(const AffineCube& cube, CubeNotion notion)
{
    Json gens = Json::array();
    for (const auto& g : cube.generators)
        gens.push_back(point_to_json(g));
    return Json{{"notion", std::string(to_string(notion))},
                {"m", cube.dimension()},
                {"base", point_to_json(cube.base)},
                {"generators", std::move(gens)}};
}

Json certificate_to_json(const Certificate& cert)
{
    Json out{{"grid", Json{{"N", cert.grid.base()}, {"n", cert.grid.dim()}}},
             {"r", cert.r},
             {"notion", std::string(to_string(cert.notion))},
             {"p", to_string(cert.p)},
             {"seed", cert.seed},
             {"rounds", cert.rounds},
             {"density_num", numerator(cert.density).str()},
             {"density_den", denominator(cert.density).str()},
             {"cardinality", cert.cardinality},
             {"verified", cert.verified}};
    if (cert.witness)
        out["witness"] = cube_to_json(*cert.witness, cert.notion);
    return out;
}

Json code_stats_to_json(const CodeStats& s)
{
    return Json{{"q", s.q},
                {"n", s.dim},
                {"block_length", s.block_length},
                {"k", s.k},
                {"dmin", s.dmin},
                {"relative_distance", to_string(s.relative_distance)},
                {"rate", to_string(s.rate)},
                {"m", s.m}};
}

std::string format_real(long double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (std::isnan(value))
        return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(value));
    return std::string(buf, res.ptr);
}

Json bound_row_to_json(const BoundRow& row)
{
    Json out{{"N", row.base}, {"n", row.n}, {"c", to_string(row.c)}, {"iterated_bound", row.iterated}};
    if (row.closed_form) {
        out["closed_form_bound"] = row.closed_form->value;
        out["closed_form_raw"] = row.closed_form->raw;
        out["closed_form_exact"] = row.closed_form->exact;
    } else {
        out["closed_form_bound"] = nullptr;
    }
    out["alpha"] = to_string(row.alpha);
    if (row.beta)
        out["beta"] = format_real(*row.beta);
    else
        out["beta"] = nullptr;
    return out;
}

std::string bound_csv_header()
{
    return "N,n,c,iterated_bound,closed_form_bound,alpha,beta";
}

std::string bound_csv_row(const BoundRow& row)
{
    std::string out = std::to_string(row.base) + "," + std::to_string(row.n) + "," + to_string(row.c) + "," +
                      std::to_string(row.iterated) + ",";
    if (row.closed_form)
        out += std::to_string(row.closed_form->value);
    out += "," + to_string(row.alpha) + ",";
    if (row.beta)
        out += format_real(*row.beta);
    return out;
}

std::string code_stats_csv_header()
{
    return "q,n,block_length,k,dmin,relative_distance,rate,m";
}

std::string code_stats_csv_row(const CodeStats& s)
{
    return std::to_string(s.q) + "," + std::to_string(s.dim) + "," + std::to_string(s.block_length) + "," +
           std::to_string(s.k) + "," + std::to_string(s.dmin) + "," + to_string(s.relative_distance) + "," +
           to_string(s.rate) + "," + std::to_string(s.m);
}

std::string fnv1a_hex(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json manifest_to_json(const RunManifest& m)
{
    return Json{{"subcommand", m.subcommand},
                {"params", m.params},
                {"seed", m.seed},
                {"version", m.version},
                {"checksum", m.checksum}};
}

RunManifest manifest_from_json(const Json& json)
{
    try {
        RunManifest m;
        m.subcommand = json.at("subcommand").get<std::string>();
        m.params = json.at("params");
        if (!m.params.is_object())
            throw InputError("manifest params must be an object");
        m.seed = json.at("seed").get<std::uint64_t>();
        m.version = json.at("version").get<std::string>();
        m.checksum = json.at("checksum").get<std::string>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed manifest: ") + e.what());
    }
}

}  // namespace hcube
