#include "qkernel/digraph_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "qkernel/errors.hpp"

namespace qk {

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split_fields(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_int(const Token& tok, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
    throw ParseError("expected an integer, found '" + std::string(tok.text) + "'", line, tok.column);
  return value;
}

}  // namespace

std::string to_text(const Digraph& d) {
  std::ostringstream os;
  os << "n " << d.order() << '\n';
  for (const Arc& a : d.arcs()) os << a.tail << ' ' << a.head << '\n';
  return os.str();
}

Digraph parse_digraph(std::string_view text) {
  int n = -1;
  std::vector<Arc> arcs;
  std::set<Arc> seen;
  int line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty() || fields.front().text.front() == '#') continue;
    if (n < 0) {
      if (fields.front().text != "n") throw ParseError("expected header 'n <count>'", line_no, fields.front().column);
      if (fields.size() != 2) throw ParseError("header takes exactly one count", line_no, fields.front().column);
      n = parse_int(fields[1], line_no);
      if (n < 0) throw ParseError("vertex count must be non-negative", line_no, fields[1].column);
      continue;
    }
    if (fields.size() != 2) throw ParseError("expected 'u v'", line_no, fields.front().column);
    Arc a{parse_int(fields[0], line_no), parse_int(fields[1], line_no)};
    if (a.tail < 0 || a.tail >= n) throw ParseError("vertex out of range", line_no, fields[0].column);
    if (a.head < 0 || a.head >= n) throw ParseError("vertex out of range", line_no, fields[1].column);
    if (a.tail == a.head) throw ParseError("self-loop", line_no, fields[0].column);
    if (!seen.insert(a).second) throw ParseError("repeated arc", line_no, fields[0].column);
    arcs.push_back(a);
  }
  if (n < 0) throw ParseError("missing header 'n <count>'", line_no + 1, 1);
  return Digraph(n, std::move(arcs));
}

Digraph read_digraph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_digraph(buffer.str());
}

void write_digraph_file(const std::filesystem::path& path, const Digraph& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_text(d);
}

}  // namespace qk
