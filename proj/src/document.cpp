#include "jetkernel/document.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <gmpxx.h>

#include "jetkernel/dsl.hpp"
#include "jetkernel/errors.hpp"

namespace jetkernel {

namespace {

MultiIndex index_from_json(const nlohmann::json& j, std::size_t nvars, const char* what) {
  if (!j.is_array() || j.size() != nvars) {
    throw DimensionError(std::string(what) + " must be an array of " + std::to_string(nvars) + " exponents");
  }
  std::vector<std::uint32_t> e;
  for (const auto& v : j) e.push_back(v.get<std::uint32_t>());
  return MultiIndex(std::move(e));
}

ScalarOperator entry_from_terms(const nlohmann::json& terms, std::size_t nvars, const FieldSpec& field) {
  ScalarOperator op(field, nvars);
  for (const auto& t : terms) {
    const MultiIndex d = index_from_json(t.at("derivative"), nvars, "derivative");
    const MultiIndex m = index_from_json(t.at("monomial"), nvars, "monomial");
    const auto& value = t.at("value");
    const Scalar c = value.is_string() ? parse_scalar(field, value.get<std::string>()) : Scalar(field, value.get<long>());
    op.add_term(d, Poly::monomial(field, m, c));
  }
  return op;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

OperatorDocument OperatorDocument::from_operator(const MatrixOperator& op) {
  OperatorDocument doc;
  doc.nvars = op.nvars();
  doc.r = op.rank();
  doc.field = op.field();
  for (std::size_t i = 0; i < op.rank(); ++i) {
    auto& row = doc.entries.emplace_back();
    for (std::size_t j = 0; j < op.rank(); ++j) row.push_back(op.at(i, j).to_string());
  }
  return doc;
}

MatrixOperator OperatorDocument::to_operator() const {
  if (entries.size() != r) throw DimensionError("document has " + std::to_string(entries.size()) + " rows, r = " + std::to_string(r));
  std::vector<std::vector<ScalarOperator>> grid;
  for (const auto& row : entries) {
    if (row.size() != r) throw DimensionError("document row length differs from r");
    auto& out = grid.emplace_back();
    for (const auto& e : row) out.push_back(parse_scalar_operator(e, nvars, field));
  }
  return MatrixOperator::from_entries(grid);
}

nlohmann::json to_json(const OperatorDocument& doc) {
  return {{"schema_version", kSchemaVersion},
          {"nvars", doc.nvars},
          {"r", doc.r},
          {"field", doc.field.name()},
          {"entries", doc.entries}};
}

OperatorDocument operator_document_from_json(const nlohmann::json& j) {
  const int version = j.value("schema_version", kSchemaVersion);
  if (version != kSchemaVersion) throw InvariantError("unsupported schema_version " + std::to_string(version));
  OperatorDocument doc;
  doc.nvars = j.at("nvars").get<std::size_t>();
  doc.r = j.at("r").get<std::size_t>();
  doc.field = j.contains("field") ? parse_field(j.at("field").get<std::string>()) : FieldSpec::rationals();
  for (const auto& row : j.at("entries")) {
    auto& out = doc.entries.emplace_back();
    for (const auto& e : row) {
      out.push_back(e.is_string() ? e.get<std::string>() : entry_from_terms(e, doc.nvars, doc.field).to_string());
    }
  }
  return doc;
}

std::string to_dop(const MatrixOperator& op) {
  return "nvars: " + std::to_string(op.nvars()) + "\nfield: " + op.field().name() + "\n" + format_operator(op);
}

MatrixOperator parse_dop(const std::string& text) {
  std::size_t nvars = 1;
  FieldSpec field = FieldSpec::rationals();
  std::string body;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    const auto colon = t.find(':');
    if (colon != std::string::npos && t.find('[') == std::string::npos) {
      const std::string key = trim(t.substr(0, colon));
      const std::string value = trim(t.substr(colon + 1));
      if (key == "nvars") {
        nvars = std::stoul(value);
      } else if (key == "field") {
        field = parse_field(value);
      } else {
        throw InvariantError("unknown .dop header '" + key + "'");
      }
      continue;
    }
    body += t + "\n";
  }
  return parse_operator(body, nvars, field);
}

MatrixOperator load_operator(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (path.extension() == ".json") return operator_document_from_json(nlohmann::json::parse(text)).to_operator();
  return parse_dop(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace jetkernel
