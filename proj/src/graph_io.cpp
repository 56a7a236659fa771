#include "spectralham/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace spectralham {

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t to_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  if (g.bipartition()) {
    const auto& sides = *g.bipartition();
    std::size_t s = g.side_count(Side::S);
    bool prefix = true;
    for (std::size_t v = 0; v < sides.size(); ++v) {
      if ((sides[v] == Side::S) != (v < s)) prefix = false;
    }
    // The header can only express S = {0..s-1}.
    if (prefix) os << "#bipartition " << s << "\n";
  }
  os << g.order() << " " << g.size() << "\n";
  for (const Edge& e : g.edges()) os << e.u << " " << e.v << "\n";
  return os.str();
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> bip;
  std::optional<std::size_t> n, m;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      auto toks = tokens(t);
      if (toks.front() == "#bipartition") {
        if (toks.size() != 2) throw ParseError(lineno, "#bipartition takes one argument");
        if (n) throw ParseError(lineno, "#bipartition must precede the 'n m' line");
        bip = to_count(toks[1], lineno, "S-side size");
      }
      continue;
    }
    auto toks = tokens(t);
    if (toks.size() != 2) {
      throw ParseError(lineno, "expected two integers, got " + std::to_string(toks.size()) + " fields");
    }
    if (!n) {
      n = to_count(toks[0], lineno, "vertex count");
      m = to_count(toks[1], lineno, "edge count");
      continue;
    }
    std::size_t u = to_count(toks[0], lineno, "vertex");
    std::size_t v = to_count(toks[1], lineno, "vertex");
    if (u >= *n || v >= *n) {
      throw ParseError(lineno, "vertex out of range 0.." + std::to_string(*n - 1));
    }
    if (u == v) throw ParseError(lineno, "self-loop at vertex " + std::to_string(u));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    edge_lines.push_back(lineno);
  }
  if (!n) throw ParseError(lineno, "missing 'n m' header line");
  if (edges.size() != *m) {
    throw ParseError(lineno, "header announces " + std::to_string(*m) + " edges, found " +
                                 std::to_string(edges.size()));
  }
  std::optional<std::vector<Side>> sides;
  if (bip) {
    if (*bip > *n) throw ParseError(1, "#bipartition size exceeds vertex count");
    std::vector<Side> s(*n, Side::T);
    std::fill_n(s.begin(), *bip, Side::S);
    sides = std::move(s);
  }
  // Rebuild edge by edge so duplicate/bipartition errors name their line.
  std::vector<Bitset> adj(*n, Bitset(*n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (adj[e.u].test(e.v)) {
      throw ParseError(edge_lines[i], "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    adj[e.u].set(e.v);
    adj[e.v].set(e.u);
    if (sides && (*sides)[e.u] == (*sides)[e.v]) {
      throw ParseError(edge_lines[i], "edge does not cross the declared bipartition");
    }
  }
  return Graph::make(*n, edges, std::move(sides));
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_edge_list(in);
}

std::string write_graph6(const Graph& g) {
  std::string out;
  const std::size_t n = g.order();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0;
  int bits = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

Graph parse_graph6(std::string_view text) {
  text = trim(text);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw ParseError(1, "empty graph6 string");
  for (char c : text) {
    if (c < 63 || c > 126) throw ParseError(1, "invalid graph6 character");
  }
  std::size_t pos = 0;
  auto take = [&]() -> std::size_t {
    if (pos >= text.size()) throw ParseError(1, "truncated graph6 string");
    return static_cast<std::size_t>(text[pos++] - 63);
  };
  std::size_t n = take();
  if (n == 63) {
    std::size_t first = take();
    if (first == 63) {
      n = 0;
      for (int i = 0; i < 6; ++i) n = (n << 6) | take();
    } else {
      n = first;
      for (int i = 0; i < 2; ++i) n = (n << 6) | take();
    }
  }
  const std::size_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t need = (nbits + 5) / 6;
  if (text.size() - pos != need) {
    throw ParseError(1, "graph6 body has " + std::to_string(text.size() - pos) +
                            " bytes, expected " + std::to_string(need));
  }
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++bit) {
      std::size_t byte = static_cast<std::size_t>(text[pos + bit / 6] - 63);
      if ((byte >> (5 - bit % 6)) & 1) edges.push_back({i, j});
    }
  }
  return Graph::make(n, edges);
}

Graph parse_graph_text(std::string_view text) {
  std::string_view t = trim(text);
  if (t.starts_with(">>graph6<<")) return parse_graph6(t);
  // A single token with no digits-only structure is graph6.
  auto first_line_end = t.find('\n');
  std::string_view first = trim(t.substr(0, first_line_end));
  bool single_line = first_line_end == std::string_view::npos || trim(t.substr(first_line_end)).empty();
  if (single_line && tokens(first).size() == 1 && !first.starts_with("#")) {
    return parse_graph6(first);
  }
  return parse_edge_list(text);
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str());
}

}  // namespace spectralham
