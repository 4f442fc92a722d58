#pragma once

// Repo-wide JSON encodings. Complex scalars are [re, im] pairs; matrices are
// {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order. Doubles
// round-trip bit-exactly through the shortest-decimal serializer.

#include <json.hpp>

#include "posmap/analysis.hpp"
#include "posmap/maprep.hpp"
#include "posmap/stateclasses.hpp"

namespace posmap {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& path);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path);

// {"d": n, "repr": "transfer"|"choi"|"aform"|"kraus", "basis": ..., "data": ...}
Json map_to_json(const LinearMap& map);
LinearMap map_from_json(const Json& j, const std::string& path);

Json basis_to_json(const OrthonormalBasis& basis);
OrthonormalBasis basis_from_json(const Json& j, int d, const std::string& path);

Json spectrum_to_json(const SpectrumReport& report);
Json biorth_to_json(const BiorthDecomp& decomp);
Json witness_to_json(const Witness& witness);

Json load_json_file(const std::string& path);  // "-" reads stdin

} // namespace posmap
