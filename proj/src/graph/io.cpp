// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "kopt/error.hpp"
#include "kopt/graph.hpp"

namespace kopt {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == ','; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  const std::string_view tok = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return tok;
}

Label parse_label(std::string_view tok, std::size_t line) {
  Label value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer node label, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

LoadResult load_edge_list(std::istream& in) {
  LoadStats stats;
  std::vector<std::pair<Label, Label>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest(line);
    const auto first = rest.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (rest[first] == '#' || rest[first] == '%') {
      ++stats.comment_lines;
      continue;
    }
    const std::string_view a = next_token(rest);
    const std::string_view b = next_token(rest);
    if (b.empty()) throw ParseError(lineno, "expected two node labels");
    raw.emplace_back(parse_label(a, lineno), parse_label(b, lineno));
    ++stats.lines;
  }
  if (raw.empty()) throw ParseError(lineno, "input contains no edges");

  std::vector<Label> labels;
  labels.reserve(2 * raw.size());
  for (const auto& [a, b] : raw) {
    labels.push_back(a);
    labels.push_back(b);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto id_of = [&labels](Label l) {
    return NodeId(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [a, b] : raw) {
    if (a == b) {
      ++stats.self_loops;
      continue;
    }
    edges.emplace_back(id_of(a), id_of(b));
  }
  std::sort(edges.begin(), edges.end());
  const auto tail = std::unique(edges.begin(), edges.end());
  stats.duplicates = std::size_t(edges.end() - tail);
  edges.erase(tail, edges.end());

  const std::size_t n = labels.size();
  return {Graph::from_edges(n, edges, std::move(labels)), stats};
}

LoadResult load_edge_list_file(const std::filesystem::path& path) {
  if (path.extension() == ".gz") {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::string data;
    char buf[1 << 16];
    int got = 0;
    while ((got = gzread(f, buf, sizeof buf)) > 0) data.append(buf, std::size_t(got));
    const bool failed = got < 0;
    gzclose(f);
    if (failed) throw std::runtime_error("gzip read error in " + path.string());
    std::istringstream in(std::move(data));
    return load_edge_list(in);
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

}  // namespace kopt
