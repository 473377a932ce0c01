#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hyperdist/hypergraph.hpp"

namespace hyperdist {

// Canonical JSON: {"vertex_count": n, "edges": [[ids...], ...]} with each
// edge sorted and the edge list sorted lexicographically. Deterministic
// byte-for-byte for structurally equal graphs.
std::string to_json(const Hypergraph& g);

// Accepts the JSON form above, or plain text: first line the vertex count,
// then one edge per line as whitespace-separated ids. Blank lines and lines
// starting with '#' are skipped.
Hypergraph parse_hypergraph(std::string_view text);

Hypergraph read_hypergraph(const std::filesystem::path& path);
void write_hypergraph(const std::filesystem::path& path, const Hypergraph& g);

}  // namespace hyperdist
