#pragma once

#include <string>

#include <json.hpp>

#include "ctt/tt_tensor.hpp"

namespace ctt {

// Versioned JSON layout: header {version, d, mode_sizes, ranks,
// middle_index}, sparse cores as (x, slice, y) unit triples with their
// side tag, dense cores as row-major arrays, factors as row-major
// matrices. Integer-valued cores survive a round trip bit-exactly.
nlohmann::json tensor_to_json(const TtTensor& t);
TtTensor tensor_from_json(const nlohmann::json& j);

void save_tensor(const std::string& path, const TtTensor& t);
TtTensor load_tensor(const std::string& path);

} // namespace ctt
