#pragma once

// JSON and CSV helpers shared by the CLI.

#include <string>
#include <vector>

#include <json.hpp>

#include "infogeo/projective.hpp"
#include "infogeo/simplex.hpp"

namespace infogeo {

using Json = nlohmann::ordered_json;

Json distribution_to_json(const Distribution& p);
Distribution distribution_from_json(const Json& j);

Json tangent_to_json(const TangentVector& v);
TangentVector tangent_from_json(const Json& j);

// Complex vectors serialize as interleaved [re0, im0, re1, im1, ...].
Json complex_vector_to_json(const CVec& z);
CVec complex_vector_from_json(const Json& j);

/// Formats with 17 significant digits (round-trip exact for doubles),
/// '.' decimal separator.
std::string format_double(double x);

/// Writes a CSV file: header row, comma separated, every cell formatted with
/// format_double. Throws IoError on failure.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace infogeo
