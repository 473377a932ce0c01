#include "hyperdist/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hyperdist {

std::string to_json(const Hypergraph& g) {
  std::vector<Edge> edges = g.edges();
  std::sort(edges.begin(), edges.end());
  nlohmann::ordered_json j;
  j["vertex_count"] = g.vertex_count();
  j["edges"] = edges;
  return j.dump() + "\n";
}

namespace {

Hypergraph parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed hypergraph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertex_count") || !j.contains("edges")) {
    throw DomainError("hypergraph JSON needs \"vertex_count\" and \"edges\"");
  }
  try {
    auto n = j.at("vertex_count").get<std::size_t>();
    auto edges = j.at("edges").get<std::vector<Edge>>();
    return Hypergraph(n, std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("hypergraph JSON has the wrong shape: ") + e.what());
  }
}

Hypergraph parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<long long> ids;
    long long id = 0;
    while (fields >> id) ids.push_back(id);
    if (!fields.eof()) throw DomainError("line " + std::to_string(line_no) + ": expected integers");
    for (long long x : ids) {
      if (x < 0) throw DomainError("line " + std::to_string(line_no) + ": negative id");
    }
    if (!n) {
      if (ids.size() != 1) throw DomainError("line " + std::to_string(line_no) + ": expected the vertex count");
      n = static_cast<std::size_t>(ids[0]);
      continue;
    }
    edges.emplace_back(ids.begin(), ids.end());
  }
  if (!n) throw DomainError("empty hypergraph text");
  return Hypergraph(*n, std::move(edges));
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);
  return parse_text(text);
}

Hypergraph read_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_hypergraph(buf.str());
}

void write_hypergraph(const std::filesystem::path& path, const Hypergraph& g) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << to_json(g);
}

}  // namespace hyperdist
