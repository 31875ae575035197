#include "ntos/tables.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ntos {

void TableArtifact::add_row(std::initializer_list<double> values) {
  if (values.size() != columns.size()) {
    throw std::invalid_argument("TableArtifact: row width != column count");
  }
  rows.emplace_back(values);
}

void TableArtifact::set_meta(const std::string& key, const std::string& value) {
  metadata.emplace_back(key, value);
}

void TableArtifact::set_meta(const std::string& key, double value) {
  metadata.emplace_back(key, format_double(value));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string render_csv(const TableArtifact& a) {
  std::ostringstream out;
  out << "# schema = " << a.schema_id << '\n';
  for (const auto& [k, v] : a.metadata) out << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < a.columns.size(); ++i) {
    out << (i ? "," : "") << a.columns[i];
  }
  out << '\n';
  for (const auto& row : a.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const TableArtifact& a) {
  nlohmann::ordered_json j;
  j["schema"] = a.schema_id;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : a.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  j["columns"] = a.columns;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < a.columns.size(); ++c) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (const auto& row : a.rows) col.push_back(row[c]);
    data[a.columns[c]] = std::move(col);
  }
  j["data"] = std::move(data);
  return j.dump(2) + "\n";
}

}  // namespace

std::string render_table(const TableArtifact& a, TableFormat format) {
  for (const auto& row : a.rows) {
    if (row.size() != a.columns.size()) {
      throw std::invalid_argument("TableArtifact: ragged rows");
    }
  }
  return format == TableFormat::csv ? render_csv(a) : render_json(a);
}

void write_table(const TableArtifact& a, TableFormat format,
                 const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_table: cannot open " + path);
  f << render_table(a, format);
  if (!f) throw std::runtime_error("write_table: write failed for " + path);
}

TableArtifact read_table_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_table_json: cannot open " + path);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(f);
  TableArtifact a;
  a.schema_id = j.at("schema").get<std::string>();
  for (const auto& [k, v] : j.at("metadata").items()) {
    a.metadata.emplace_back(k, v.get<std::string>());
  }
  a.columns = j.at("columns").get<std::vector<std::string>>();
  const auto& data = j.at("data");
  std::size_t n_rows = a.columns.empty() ? 0 : data.at(a.columns[0]).size();
  a.rows.assign(n_rows, std::vector<double>(a.columns.size()));
  for (std::size_t c = 0; c < a.columns.size(); ++c) {
    const auto& col = data.at(a.columns[c]);
    if (col.size() != n_rows) {
      throw std::runtime_error("read_table_json: ragged columns");
    }
    for (std::size_t r = 0; r < n_rows; ++r) {
      // NaN serializes as null; map it back.
      a.rows[r][c] = col[r].is_null() ? std::nan("") : col[r].get<double>();
    }
  }
  return a;
}

}  // namespace ntos
