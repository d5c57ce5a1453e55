#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "bsqf/states.hpp"

namespace bsqf {

/// {"d_a": int, "d_b": int, "re": [[...]], "im": [[...]]}, row-major.
/// Doubles are written in shortest round-trip form, so a write/read cycle
/// reproduces every entry bit for bit.
nlohmann::json state_to_json(const BipartiteState& s);

/// Parses and validates (ParseError on schema problems, validate_density
/// errors otherwise).
BipartiteState state_from_json(const nlohmann::json& doc,
                               bool require_full_rank = false);

void save_state(const BipartiteState& s, const std::filesystem::path& path);
BipartiteState load_state(const std::filesystem::path& path,
                          bool require_full_rank = false);

}  // namespace bsqf
