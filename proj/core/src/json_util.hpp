#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "sptkit/linalg.hpp"

namespace sptkit::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Matrix as rows of entries; an entry is a number or [re, im]. A bare number or [re, im]
// is read as a 1x1 matrix.
Mat matrix_from_json(const json& j);
ordered_json matrix_to_json(const Mat& m);
ordered_json complex_to_json(cplx z);
ordered_json real_vector_to_json(const RVec& v);

// %.17g for every floating-point number, fixed key order, indent 2 (or compact when indent < 0)
std::string dump17(const ordered_json& j, int indent = 2);

}  // namespace sptkit::detail
