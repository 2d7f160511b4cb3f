#include "afc/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "afc/errors.hpp"

namespace afc {

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line,
                             const std::string& what) {
  throw ConfigError(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

BaseTopology parse_edge_list(std::istream& in, bool weighted,
                             const std::string& name) {
  struct RawEdge {
    long long u, v;
    double w;
    int line;
  };
  std::vector<RawEdge> raw;
  long long min_id = std::numeric_limits<long long>::max();
  long long max_id = std::numeric_limits<long long>::min();

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ss(line);
    long long u, v;
    if (!(ss >> u)) {
      continue;  // blank or comment-only line
    }
    if (!(ss >> v)) {
      parse_fail(name, line_no, "expected two node ids");
    }
    double w = 1.0;
    if (weighted) {
      if (!(ss >> w)) {
        parse_fail(name, line_no, "expected an edge weight");
      }
    }
    std::string extra;
    if (ss >> extra) {
      parse_fail(name, line_no, "unexpected trailing token '" + extra + "'");
    }
    if (u < 0 || v < 0) {
      parse_fail(name, line_no, "node ids must be nonnegative");
    }
    raw.push_back({u, v, w, line_no});
    min_id = std::min({min_id, u, v});
    max_id = std::max({max_id, u, v});
  }
  if (raw.empty()) {
    throw ConfigError(name + ": no edges found");
  }

  const long long offset = min_id >= 1 ? 1 : 0;  // 1-based files shift down
  const int n = static_cast<int>(max_id - offset + 1);
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) {
    edges.push_back({static_cast<NodeId>(e.u - offset),
                     static_cast<NodeId>(e.v - offset), e.w});
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int v = 0; v < n; ++v) {
    labels.push_back(std::to_string(v + offset));
  }
  try {
    return BaseTopology(n, std::move(edges), std::move(labels));
  } catch (const ConfigError& err) {
    throw ConfigError(name + ": " + err.what());
  }
}

namespace {

// Tokens of the GML subset: words, numbers, quoted strings, brackets.
std::vector<std::pair<std::string, int>> gml_tokens(std::istream& in,
                                                    const std::string& name) {
  std::vector<std::pair<std::string, int>> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t i = 0;
    while (i < line.size()) {
      const char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#') {
        break;
      }
      if (c == '[' || c == ']') {
        tokens.emplace_back(std::string(1, c), line_no);
        ++i;
        continue;
      }
      if (c == '"') {
        const auto end = line.find('"', i + 1);
        if (end == std::string::npos) {
          parse_fail(name, line_no, "unterminated string");
        }
        tokens.emplace_back(line.substr(i + 1, end - i - 1), line_no);
        i = end + 1;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != '[' && line[j] != ']' &&
             !std::isspace(static_cast<unsigned char>(line[j]))) {
        ++j;
      }
      tokens.emplace_back(line.substr(i, j - i), line_no);
      i = j;
    }
  }
  return tokens;
}

}  // namespace

BaseTopology parse_gml(std::istream& in, const std::string& name) {
  const auto tokens = gml_tokens(in, name);

  struct GmlNode {
    long long id;
    std::string label;
  };
  struct GmlEdge {
    long long source, target;
    double value;
    int line;
  };
  std::vector<GmlNode> nodes;
  std::vector<GmlEdge> edges;

  std::size_t pos = 0;
  const auto at_end = [&] { return pos >= tokens.size(); };
  const auto peek = [&]() -> const std::string& { return tokens[pos].first; };

  // Skips one value, including a balanced bracketed block.
  const auto skip_value = [&] {
    if (at_end()) {
      return;
    }
    if (peek() == "[") {
      int depth = 0;
      do {
        if (tokens[pos].first == "[") {
          ++depth;
        } else if (tokens[pos].first == "]") {
          --depth;
        }
        ++pos;
      } while (!at_end() && depth > 0);
    } else {
      ++pos;
    }
  };

  std::function<void()> parse_block = [&] {
    // Consumes "key value" pairs until the matching ']'.
    while (!at_end() && peek() != "]") {
      const std::string key = tokens[pos].first;
      const int key_line = tokens[pos].second;
      ++pos;
      if (key == "node" && !at_end() && peek() == "[") {
        ++pos;
        GmlNode node{-1, ""};
        while (!at_end() && peek() != "]") {
          const std::string field = tokens[pos].first;
          const int field_line = tokens[pos].second;
          ++pos;
          if (at_end()) {
            parse_fail(name, field_line, "missing value for '" + field + "'");
          }
          if (field == "id") {
            try {
              node.id = std::stoll(peek());
            } catch (...) {
              parse_fail(name, tokens[pos].second, "bad node id");
            }
            ++pos;
          } else if (field == "label") {
            node.label = peek();
            ++pos;
          } else {
            skip_value();
          }
        }
        if (at_end()) {
          parse_fail(name, key_line, "unterminated node block");
        }
        ++pos;  // ']'
        if (node.id < 0) {
          parse_fail(name, key_line, "node block without id");
        }
        nodes.push_back(std::move(node));
      } else if (key == "edge" && !at_end() && peek() == "[") {
        ++pos;
        GmlEdge edge{-1, -1, 1.0, key_line};
        while (!at_end() && peek() != "]") {
          const std::string field = tokens[pos].first;
          const int field_line = tokens[pos].second;
          ++pos;
          if (at_end()) {
            parse_fail(name, field_line, "missing value for '" + field + "'");
          }
          if (field == "source" || field == "target") {
            long long id = 0;
            try {
              id = std::stoll(peek());
            } catch (...) {
              parse_fail(name, tokens[pos].second, "bad edge endpoint");
            }
            (field == "source" ? edge.source : edge.target) = id;
            ++pos;
          } else if (field == "value" || field == "weight") {
            try {
              edge.value = std::stod(peek());
            } catch (...) {
              parse_fail(name, tokens[pos].second, "bad edge value");
            }
            ++pos;
          } else {
            skip_value();
          }
        }
        if (at_end()) {
          parse_fail(name, key_line, "unterminated edge block");
        }
        ++pos;  // ']'
        if (edge.source < 0 || edge.target < 0) {
          parse_fail(name, key_line, "edge block without source/target");
        }
        edges.push_back(std::move(edge));
      } else if (peek() == "[") {
        ++pos;
        parse_block();
        if (at_end()) {
          parse_fail(name, key_line, "unterminated block");
        }
        ++pos;  // ']'
      } else {
        skip_value();
      }
    }
  };
  parse_block();

  if (nodes.empty()) {
    throw ConfigError(name + ": no node blocks found");
  }

  std::map<long long, NodeId> index_of;
  std::vector<std::string> labels;
  for (const GmlNode& node : nodes) {
    if (index_of.count(node.id)) {
      throw ConfigError(name + ": duplicate node id " +
                        std::to_string(node.id));
    }
    const NodeId idx = static_cast<NodeId>(index_of.size());
    index_of[node.id] = idx;
    labels.push_back(node.label.empty() ? std::to_string(node.id)
                                        : node.label);
  }
  std::vector<Edge> parsed;
  parsed.reserve(edges.size());
  for (const GmlEdge& e : edges) {
    const auto su = index_of.find(e.source);
    const auto sv = index_of.find(e.target);
    if (su == index_of.end() || sv == index_of.end()) {
      parse_fail(name, e.line, "edge references an unknown node");
    }
    parsed.push_back({su->second, sv->second, e.value});
  }
  try {
    return BaseTopology(static_cast<int>(nodes.size()), std::move(parsed),
                        std::move(labels));
  } catch (const ConfigError& err) {
    throw ConfigError(name + ": " + err.what());
  }
}

BaseTopology ingest_graph(const std::filesystem::path& path,
                          GraphFormat format, bool weighted) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path.string());
  }
  return format == GraphFormat::kEdgeList
             ? parse_edge_list(in, weighted, path.filename().string())
             : parse_gml(in, path.filename().string());
}

void write_edge_list(const BaseTopology& base, std::ostream& out) {
  char buf[64];
  for (const Edge& e : base.edges()) {
    std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", e.u, e.v, e.weight);
    out << buf;
  }
}

}  // namespace afc
