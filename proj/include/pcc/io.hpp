#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcc/graph.hpp"

namespace pcc {

/// Instance text format: optional '#' comment lines, then n, then n rows of n colors.
ColoredBipartiteGraph parse_instance(std::istream& in);
void format_instance(std::ostream& out, const ColoredBipartiteGraph& g);

ColoredBipartiteGraph read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const ColoredBipartiteGraph& g);

/// Vertices as space-separated tokens `x3` / `y0`.
std::string format_walk(const AlternatingWalk& w);
AlternatingWalk parse_walk(const std::string& line, WalkKind kind);

/// One walk per line; '#' lines ignored on input.
void format_walks(std::ostream& out, const std::vector<AlternatingWalk>& walks);
std::vector<AlternatingWalk> parse_walks(std::istream& in, WalkKind kind);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pcc
