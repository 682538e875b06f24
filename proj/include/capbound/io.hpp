#pragma once

#include <string>

#include "json.hpp"

#include "capbound/channel.hpp"

namespace capbound {

using Json = nlohmann::json;

// Matrices are nested rows of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"dim_in", "dim_out", "kraus", optional "family": {"name", "d", "p"}}.
Json channel_to_json(const Channel& ch);
// Validates trace preservation. A family tag that does not reproduce the
// Kraus data is dropped.
Channel channel_from_json(const Json& j);

// {"dim_a", "dim_b", "rho"}.
Json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace capbound
