#pragma once

// JSON serialization of the core types. Every exported document carries
// "kind" and "version" fields; keys keep insertion order.

#include <pcsp/complexes.hpp>
#include <pcsp/equivariant.hpp>
#include <pcsp/matrix.hpp>
#include <pcsp/structures.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace pcsp {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// {"domain_size": k, "relations": [{"name", "arity", "tuples"}]}.
Json to_json(const RelStructure & A);
/// Accepts the plain structure format or an exported document.
RelStructure structure_from_json(const Json & j);

Json to_json(const FunctionTable & f);
FunctionTable function_table_from_json(const Json & j);
Json to_json(const std::vector<FunctionTable> & tables);
std::vector<FunctionTable> function_tables_from_json(const Json & j);

/// {"rows", "cols", "entries": [[i, j, value], ...]} in column order.
Json to_json(const SparseMatrix & m);
SparseMatrix sparse_matrix_from_json(const Json & j);

/// Cells per dimension, boundary matrices as sparse triplets and the action
/// as [target, sign] pairs per dimension.
Json to_json(const CWComplexZ & X);
CWComplexZ cw_complex_from_json(const Json & j);

Json to_json(const EquivariantChainMap & F);
EquivariantChainMap chain_map_from_json(const Json & j);

Json to_json(const AbelianGroup & G);

/// Wraps a body with "kind" and "version".
Json document(const std::string & kind, const Json & body);
/// Throws IoError unless j is a document of the given kind and version.
void expect_document(const Json & j, const std::string & kind);

void write_text_file(const std::filesystem::path & path, const std::string & text);
std::string read_text_file(const std::filesystem::path & path);
void write_json_file(const std::filesystem::path & path, const Json & j);
Json read_json_file(const std::filesystem::path & path);

} // namespace pcsp
