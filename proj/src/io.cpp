#include "pcc/io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pcc/errors.hpp"

namespace pcc {
namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return true;
  }
  return false;
}

Vertex parse_vertex(const std::string& token) {
  if (token.size() < 2 || (token[0] != 'x' && token[0] != 'y'))
    throw InvalidInstance("bad vertex token '" + token + "'");
  std::size_t used = 0;
  int index = 0;
  try {
    index = std::stoi(token.substr(1), &used);
  } catch (const std::exception&) {
    throw InvalidInstance("bad vertex token '" + token + "'");
  }
  if (used != token.size() - 1 || index < 0) throw InvalidInstance("bad vertex token '" + token + "'");
  return {token[0] == 'x' ? Side::X : Side::Y, index};
}

}  // namespace

ColoredBipartiteGraph parse_instance(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw InvalidInstance("missing side size");
  int n = 0;
  {
    std::istringstream head(line);
    if (!(head >> n) || n <= 0) throw InvalidInstance("side size must be a positive integer");
    std::string rest;
    if (head >> rest) throw InvalidInstance("unexpected token after side size: " + rest);
  }
  std::vector<Color> colors;
  colors.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (!next_content_line(in, line))
      throw InvalidInstance("expected " + std::to_string(n) + " rows, got " + std::to_string(i));
    std::istringstream row(line);
    long long value = 0;
    int count = 0;
    while (row >> value) {
      if (value < 0 || value > std::numeric_limits<Color>::max())
        throw InvalidInstance("color out of range in row " + std::to_string(i));
      colors.push_back(static_cast<Color>(value));
      ++count;
    }
    if (!row.eof()) throw InvalidInstance("non-integer entry in row " + std::to_string(i));
    if (count != n)
      throw InvalidInstance("row " + std::to_string(i) + " has " + std::to_string(count) +
                            " entries, expected " + std::to_string(n));
  }
  if (next_content_line(in, line)) throw InvalidInstance("trailing content after matrix");
  return ColoredBipartiteGraph(n, std::move(colors));
}

void format_instance(std::ostream& out, const ColoredBipartiteGraph& g) {
  out << g.n() << '\n';
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) out << (j ? " " : "") << g.color(i, j);
    out << '\n';
  }
}

ColoredBipartiteGraph read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_instance(in);
}

void write_instance(const std::filesystem::path& path, const ColoredBipartiteGraph& g) {
  std::ostringstream out;
  format_instance(out, g);
  write_text(path, out.str());
}

std::string format_walk(const AlternatingWalk& w) {
  std::string s;
  for (const auto& v : w.vertices) {
    if (!s.empty()) s += ' ';
    s += to_string(v);
  }
  return s;
}

AlternatingWalk parse_walk(const std::string& line, WalkKind kind) {
  std::istringstream in(line);
  std::vector<Vertex> vs;
  std::string token;
  while (in >> token) vs.push_back(parse_vertex(token));
  return {std::move(vs), kind};
}

void format_walks(std::ostream& out, const std::vector<AlternatingWalk>& walks) {
  for (const auto& w : walks) out << format_walk(w) << '\n';
}

std::vector<AlternatingWalk> parse_walks(std::istream& in, WalkKind kind) {
  std::vector<AlternatingWalk> walks;
  std::string line;
  while (next_content_line(in, line)) walks.push_back(parse_walk(line, kind));
  return walks;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace pcc
