// Text and JSON forms shared by the CLI, the samples and the tests.
#pragma once

#include "supercrystal/crystal.hpp"
#include "supercrystal/linkage.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace supercrystal {

using json = nlohmann::json;

/// "1,-1,1,7,5" -> {1,-1,1,7,5}.  Whitespace around entries is ignored; an
/// empty string gives an empty list.  Throws std::invalid_argument.
inline std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s += c;
  }
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("not an integer: '" + tok + "'");
    out.push_back(static_cast<Int>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<int> parse_parities(const std::string& text) {
  std::vector<int> out;
  for (Int v : parse_int_list(text)) {
    if (v != 0 && v != 1) throw std::invalid_argument("parities must be 0 or 1, got " + std::to_string(v));
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw std::invalid_argument("empty parity sequence");
  return out;
}

inline std::string format_weight(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

inline std::string format_index_set(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(s[k]);
  }
  return out + "}";
}

inline json context_to_json(const ParityContext& ctx) { return {{"p", ctx.p()}, {"parities", ctx.parities()}}; }

inline ParityContext context_from_json(const json& j) {
  return ParityContext::from_parities(j.at("parities").get<std::vector<int>>(), j.at("p").get<Int>());
}

inline json weight_to_json(const Weight& w) { return w.coeffs; }
inline Weight weight_from_json(const json& j) { return Weight(j.get<std::vector<Int>>()); }

inline json affine_to_json(const AffineWeight& x) {
  if (x.p() == 0) {
    json g = json::object();
    for (auto [r, c] : x.gamma()) g[std::to_string(r)] = c;
    return {{"gamma", g}};
  }
  return {{"delta", x.delta()}, {"lambda", x.lambda()}};
}

inline AffineWeight affine_from_json(const json& j, Int p) {
  AffineWeight x(p);
  if (p == 0) {
    for (auto& [k, v] : j.at("gamma").items()) x.add_gamma(std::stoll(k), v.get<Int>());
    return x;
  }
  auto lam = j.at("lambda").get<std::vector<Int>>();
  if (static_cast<Int>(lam.size()) != p) throw std::invalid_argument("lambda coordinates must have length p");
  x.add_delta(j.at("delta").get<Int>());
  for (Int r = 0; r < p; ++r) x.add_lambda(r, lam[r]);
  return x;
}

/// Human-readable AffineWeight, e.g. "3L0 - L1 - 2L2 - 3d" or "-g1 + g6 + g9".
inline std::string format_affine(const AffineWeight& x) {
  std::vector<std::pair<Int, std::string>> parts;
  if (x.p() == 0) {
    for (auto [r, c] : x.gamma()) parts.push_back({c, "g" + std::to_string(r)});
  } else {
    for (Int r = 0; r < x.p(); ++r) parts.push_back({x.lambda()[r], "L" + std::to_string(r)});
    parts.push_back({x.delta(), "d"});
  }
  std::string s;
  for (auto& [c, name] : parts) {
    if (c == 0) continue;
    Int a = c < 0 ? -c : c;
    if (s.empty()) {
      s += c < 0 ? "-" : "";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (a != 1) s += std::to_string(a);
    s += name;
  }
  return s.empty() ? "0" : s;
}

inline json graph_to_json(const CrystalGraph& g) {
  json nodes = json::array();
  for (const auto& w : g.nodes) nodes.push_back(w.coeffs);
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"r", e.r}, {"dir", std::string(1, e.dir)}});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

inline CrystalGraph graph_from_json(const json& j) {
  CrystalGraph g;
  for (const auto& n : j.at("nodes")) g.nodes.push_back(weight_from_json(n));
  for (const auto& e : j.at("edges")) {
    auto dir = e.at("dir").get<std::string>();
    if (dir != "e" && dir != "f") throw std::invalid_argument("edge direction must be e or f");
    g.edges.push_back({e.at("from").get<std::size_t>(), e.at("to").get<std::size_t>(), e.at("r").get<Int>(), dir[0]});
  }
  return g;
}

/// DOT with nodes in graph order and edges sorted by (from, to, r, dir).
inline std::string graph_to_dot(const CrystalGraph& g) {
  std::ostringstream os;
  os << "digraph crystal {\n";
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    os << "  n" << k << " [label=\"(" << format_weight(g.nodes[k]) << ")\"];\n";
  }
  auto edges = g.edges;
  std::stable_sort(edges.begin(), edges.end(), [](const CrystalEdge& a, const CrystalEdge& b) {
    return std::tie(a.from, a.to, a.r, a.dir) < std::tie(b.from, b.to, b.r, b.dir);
  });
  for (const auto& e : edges) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\"r=" << e.r << "," << e.dir << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline json blocks_to_json(const std::vector<Block>& blocks) {
  json out = json::array();
  for (const auto& b : blocks) {
    json ws = json::array();
    for (const auto& w : b.weights) ws.push_back(w.coeffs);
    out.push_back({{"wt", affine_to_json(b.wt)}, {"weights", ws}});
  }
  return out;
}

}  // namespace supercrystal
