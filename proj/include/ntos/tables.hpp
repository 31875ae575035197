#ifndef NTOS_TABLES_HPP
#define NTOS_TABLES_HPP

#include <string>
#include <utility>
#include <vector>

namespace ntos {

enum class TableFormat { csv, json };

/// Schema-stable numeric table with an ordered metadata header.
/// Serialization is deterministic: identical artifacts produce byte-identical
/// files; floating values carry 17 significant digits.
struct TableArtifact {
  std::string schema_id;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row has columns.size() values
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::initializer_list<double> values);
  void set_meta(const std::string& key, const std::string& value);
  void set_meta(const std::string& key, double value);
};

// 17-significant-digit formatting used for every floating value emitted.
std::string format_double(double v);

void write_table(const TableArtifact& artifact, TableFormat format,
                 const std::string& path);

std::string render_table(const TableArtifact& artifact, TableFormat format);

// Inverse of the json rendering; exact round trip of values and metadata.
TableArtifact read_table_json(const std::string& path);

}  // namespace ntos

#endif
