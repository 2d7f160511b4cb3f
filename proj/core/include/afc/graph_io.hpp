#pragma once

#include <filesystem>
#include <iosfwd>

#include "afc/graph.hpp"

namespace afc {

enum class GraphFormat { kEdgeList, kGmlSubset };

// Edge list: one "u v w" line per edge ("u v" in unweighted mode),
// '#' comments, 0- or 1-based ids auto-detected from the minimum id.
// GML subset: node [ id label ] and edge [ source target value ] blocks;
// unknown keys are skipped. Parse errors carry the line number.
BaseTopology ingest_graph(const std::filesystem::path& path,
                          GraphFormat format, bool weighted = true);
BaseTopology parse_edge_list(std::istream& in, bool weighted,
                             const std::string& name = "<stream>");
BaseTopology parse_gml(std::istream& in, const std::string& name = "<stream>");

void write_edge_list(const BaseTopology& base, std::ostream& out);

}  // namespace afc
