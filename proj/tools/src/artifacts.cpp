#include "semiaut_tools/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace semiaut::tools {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

namespace {

bool kind_matches(ColumnKind k, const Cell& c) {
  switch (k) {
    case ColumnKind::integer:
      return std::holds_alternative<std::int64_t>(c);
    case ColumnKind::real:
      return std::holds_alternative<double>(c);
    case ColumnKind::text:
      return std::holds_alternative<std::string>(c);
    case ColumnKind::boolean:
      return std::holds_alternative<bool>(c);
  }
  return false;
}

std::string render_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace

CsvTable::CsvTable(std::string name, std::vector<Column> columns) : name_(std::move(name)), columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("table " + name_ + " has no columns");
}

void CsvTable::add(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("table " + name_ + ": row has " + std::to_string(row.size()) + " cells, schema has " +
                                std::to_string(columns_.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!kind_matches(columns_[i].kind, row[i])) {
      throw std::invalid_argument("table " + name_ + ": column " + columns_[i].name + " has the wrong kind");
    }
    if (const auto* d = std::get_if<double>(&row[i]); d && !std::isfinite(*d) && !columns_[i].allow_nonfinite) {
      throw std::invalid_argument("table " + name_ + ": non-finite value in column " + columns_[i].name);
    }
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i].name;
  out += "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + render_cell(r[i]);
    out += "\n";
  }
  return out;
}

bool ClaimSet::check(std::string name, double value, const std::string& relation, double bound) {
  bool ok = false;
  if (relation == "<") {
    ok = value < bound;
  } else if (relation == "<=") {
    ok = value <= bound;
  } else if (relation == ">") {
    ok = value > bound;
  } else if (relation == ">=") {
    ok = value >= bound;
  } else if (relation == "==") {
    ok = value == bound;
  } else {
    throw std::invalid_argument("unknown relation " + relation);
  }
  claims_.push_back({std::move(name), value, relation, bound, ok});
  return ok;
}

bool ClaimSet::all_passed() const { return failures() == 0; }

std::size_t ClaimSet::failures() const {
  std::size_t n = 0;
  for (const auto& c : claims_) n += c.passed ? 0 : 1;
  return n;
}

CsvTable ClaimSet::table() const {
  CsvTable t("claims", {{"claim", ColumnKind::text},
                        {"value", ColumnKind::real, true},
                        {"relation", ColumnKind::text},
                        {"bound", ColumnKind::real, true},
                        {"passed", ColumnKind::boolean}});
  for (const auto& c : claims_) t.add({c.name, c.value, c.relation, c.bound, c.passed});
  return t;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void ArtifactWriter::write(const CsvTable& t) { write_text(t.name() + ".csv", t.render()); }

void ArtifactWriter::write_text(const std::string& file, const std::string& content) {
  std::ofstream out(dir_ / file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir_ / file).string());
  out << content;
  entries_.push_back({file, content.size(), fnv1a64(content)});
}

}  // namespace semiaut::tools
