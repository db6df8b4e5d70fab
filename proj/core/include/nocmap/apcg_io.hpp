#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nocmap/apcg.hpp"

namespace nocmap {

/// Parses the v1 text format: `#` comment lines, one header line
/// `apcg <name> <cores>`, then one arc per line as
/// `<src> <dst> <volume> <bandwidth>`. Throws ApcgParseError with the
/// 1-based line number on the first violation.
Apcg parse_apcg(std::string_view text);

/// Inverse of parse_apcg up to comments and whitespace: the returned
/// text reparses to an equal graph.
std::string write_apcg(const Apcg& apcg);

Apcg load_apcg(const std::filesystem::path& path);
void save_apcg(const Apcg& apcg, const std::filesystem::path& path);

} // namespace nocmap
