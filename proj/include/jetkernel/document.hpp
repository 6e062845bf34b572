#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "jetkernel/operators.hpp"

namespace jetkernel {

inline constexpr int kSchemaVersion = 1;

/// Serializable operator: an r x r grid of DSL strings.
struct OperatorDocument {
  std::size_t nvars = 1;
  std::size_t r = 1;
  FieldSpec field;
  std::vector<std::vector<std::string>> entries;

  static OperatorDocument from_operator(const MatrixOperator& op);
  MatrixOperator to_operator() const;
};

/// {"schema_version", "nvars", "r", "field", "entries"}. Entries are DSL
/// strings; on input an entry may instead be a term list
/// [{"derivative": [..], "monomial": [..], "value": "num/den"}, ...].
nlohmann::json to_json(const OperatorDocument& doc);
OperatorDocument operator_document_from_json(const nlohmann::json& j);

/// .dop text: optional "nvars: n" and "field: F" header lines, '#' comments,
/// then the operator in DSL row form.
std::string to_dop(const MatrixOperator& op);
MatrixOperator parse_dop(const std::string& text);

/// Reads a .json document or .dop file, picked by extension.
MatrixOperator load_operator(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace jetkernel
