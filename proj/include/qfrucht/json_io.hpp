#pragma once

#include <string>

#include <json.hpp>

#include "qfrucht/frucht.hpp"
#include "qfrucht/group.hpp"
#include "qfrucht/irreps.hpp"
#include "qfrucht/qset.hpp"

namespace qfrucht {

using Json = nlohmann::json;

/// Parse JSON text; syntax errors become input_error with line/column.
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// FNV-1a digest of a file's bytes, as hex (used for input provenance in
/// reports).
std::string file_digest(const std::string& path);

// Group JSON: {"name": str, "order": N, "mul": [[int]]} with identity 0.
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

// Irreps JSON: [{"dim": n, "matrices": [{"re": [[..]], "im": [[..]]}...]}].
Json irreps_to_json(const std::vector<Irrep>& irreps);
std::vector<Irrep> irreps_from_json(const Json& j);

// Operator JSON: {"space": {"blocks": [ints]}, "re": [[..]], "im": [[..]]}.
Json linop_to_json(const LinOp& op);
LinOp linop_from_json(const Json& j);

// Projection JSON: {"basis": "lambda"|"block", "re": [..], "im": [..]}.
struct ProjectionInput {
  std::string basis;  // "lambda" or "block"
  Vec values;
};
ProjectionInput projection_from_json(const Json& j);
Json projection_to_json(const Vec& block_coords, const std::string& basis);

// Classical graph JSON: {"n": int, "directed": bool, "adj": [[0/1]]}.
Json classical_graph_to_json(const ClassicalGraph& g);
ClassicalGraph classical_graph_from_json(const Json& j);

std::string classical_graph_to_dot(const ClassicalGraph& g);

Json complex_vector_to_json(const Vec& v);
Vec complex_vector_from_json(const Json& j);

}  // namespace qfrucht
