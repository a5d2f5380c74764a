#pragma once

// Machine-readable records for witnesses, certificates, code statistics,
// bound rows and run manifests.

#include "hcube/bounds.hpp"
#include "hcube/cube.hpp"
#include "hcube/lll.hpp"
#include "hcube/toric.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace hcube {

using Json = nlohmann::ordered_json;

Json point_to_json(const Point& p);
/// {notion, m, base, generators}
Json cube_to_json(const AffineCube& cube, CubeNotion notion);
Json certificate_to_json(const Certificate& cert);
Json code_stats_to_json(const CodeStats& stats);
Json bound_row_to_json(const BoundRow& row);

/// Columns N, n, c, iterated_bound, closed_form_bound, alpha, beta.
std::string bound_csv_header();
std::string bound_csv_row(const BoundRow& row);

/// block_length, k, dmin, relative_distance, rate, m
std::string code_stats_csv_header();
std::string code_stats_csv_row(const CodeStats& stats);

/// Shortest round-trip decimal text of a long double.
std::string format_real(long double value);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

inline constexpr std::string_view kToolVersion = "1.0.0";

struct RunManifest {
    std::string subcommand;
    /// Every parameter that influences the output, including global flags
    /// except the thread count.
    Json params;
    std::uint64_t seed;
    std::string version{kToolVersion};
    /// fnv1a_hex of the primary output.
    std::string checksum;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

Json manifest_to_json(const RunManifest& manifest);
/// Throws InputError on missing or mistyped fields.
RunManifest manifest_from_json(const Json& json);

}  // namespace hcube
