#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qkernel/digraph.hpp"

namespace qk {

/// Canonical text form: "n <count>" followed by one "u v" line per arc,
/// arcs sorted lexicographically.
std::string to_text(const Digraph& d);

/// Accepts '#' comment lines and blank lines anywhere. Throws ParseError with
/// line and column on malformed input, including arcs the digraph rejects.
Digraph parse_digraph(std::string_view text);

Digraph read_digraph_file(const std::filesystem::path& path);
void write_digraph_file(const std::filesystem::path& path, const Digraph& d);

}  // namespace qk
