#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace semiaut::tools {

enum class ColumnKind { integer, real, text, boolean };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::real;
  /// reals must be finite unless this is set
  bool allow_nonfinite = false;
};

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// Declared-schema table; every row is checked against the columns before anything is written.
class CsvTable {
 public:
  CsvTable(std::string name, std::vector<Column> columns);

  /// Throws std::invalid_argument on width or kind mismatch, or a disallowed non-finite real.
  void add(std::vector<Cell> row);
  const std::string& name() const { return name_; }
  const std::vector<Column>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  std::string render() const;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Reals print as %.12e so reruns are byte-identical.
std::string format_real(double v);

struct Claim {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<", "<=", ">", ">=", "=="
  double bound = 0.0;
  bool passed = false;
};

class ClaimSet {
 public:
  /// Records value `relation` bound and returns whether it holds (NaN never passes).
  bool check(std::string name, double value, const std::string& relation, double bound);
  bool require(std::string name, bool ok) { return check(std::move(name), ok ? 1.0 : 0.0, "==", 1.0); }
  const std::vector<Claim>& claims() const { return claims_; }
  bool all_passed() const;
  std::size_t failures() const;
  CsvTable table() const;

 private:
  std::vector<Claim> claims_;
};

/// Writes result files into one output directory and remembers them for the manifest.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  void write(const CsvTable& t);
  void write_text(const std::string& file, const std::string& content);

  struct Entry {
    std::string file;
    std::size_t bytes = 0;
    std::uint64_t fnv1a = 0;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::filesystem::path dir_;
  std::vector<Entry> entries_;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace semiaut::tools
