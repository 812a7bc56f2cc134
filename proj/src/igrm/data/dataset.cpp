#include "igrm/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace igrm::data {

using nlohmann::json;

int64_t TabularDataset::observed_count() const {
  int64_t k = 0;
  for (uint8_t m : mask) k += m != 0;
  return k;
}

void TabularDataset::validate() const {
  const size_t cells = static_cast<size_t>(n_rows * n_cols());
  require(values.size() == cells, "dataset: ", values.size(), " values for ",
          n_rows, "x", n_cols(), " table");
  require(mask.size() == cells, "dataset: mask size ", mask.size(),
          " does not match ", n_rows, "x", n_cols());
  for (int64_t c = 0; c < n_cols(); ++c) {
    const Column& col = columns[static_cast<size_t>(c)];
    if (col.kind != ColumnKind::discrete) continue;
    for (int64_t r = 0; r < n_rows; ++r) {
      if (!observed(r, c)) continue;
      real v = value_at(r, c);
      int64_t k = static_cast<int64_t>(v);
      require(v == static_cast<real>(k) && k >= 0 &&
                  k < static_cast<int64_t>(col.categories.size()),
              "dataset: cell (", r, ",", col.name, ") holds ", v,
              ", not a valid index into ", col.categories.size(),
              " categories");
    }
  }
  if (ground_truth) {
    require(ground_truth->values.size() == cells &&
                ground_truth->mask.size() == cells,
            "dataset: ground truth shape mismatch");
    for (size_t i = 0; i < cells; ++i)
      if (mask[i])
        require(values[i] == ground_truth->values[i],
                "dataset: observed cell ", i, " disagrees with ground truth");
  }
}

std::vector<Column> load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "schema: cannot open ", path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, "schema ", path, ": ", e.what());
  }
  if (!doc.contains("columns") || !doc["columns"].is_array())
    fail(ErrorCode::parse, "schema ", path, ": missing \"columns\" array");
  std::vector<Column> schema;
  for (const auto& jc : doc["columns"]) {
    Column col;
    if (!jc.contains("name"))
      fail(ErrorCode::parse, "schema ", path, ": column entry without name");
    col.name = jc["name"].get<std::string>();
    std::string kind = jc.value("kind", "continuous");
    if (kind == "continuous") {
      col.kind = ColumnKind::continuous;
    } else if (kind == "discrete") {
      col.kind = ColumnKind::discrete;
      if (!jc.contains("categories") || !jc["categories"].is_array() ||
          jc["categories"].empty())
        fail(ErrorCode::parse, "schema ", path, ": discrete column '",
             col.name, "' needs a non-empty categories list");
      for (const auto& cat : jc["categories"])
        col.categories.push_back(cat.get<std::string>());
    } else {
      fail(ErrorCode::parse, "schema ", path, ": column '", col.name,
           "' has unknown kind '", kind, "'");
    }
    schema.push_back(std::move(col));
  }
  if (schema.empty())
    fail(ErrorCode::parse, "schema ", path, ": no columns defined");
  return schema;
}

void save_schema(const std::vector<Column>& schema, const std::string& path) {
  json cols = json::array();
  for (const auto& c : schema) {
    json jc{{"name", c.name}};
    jc["kind"] = c.kind == ColumnKind::discrete ? "discrete" : "continuous";
    if (c.kind == ColumnKind::discrete) jc["categories"] = c.categories;
    cols.push_back(std::move(jc));
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "schema: cannot write ", path);
  out << json{{"columns", cols}}.dump(2) << "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string join_categories(const Column& col) {
  std::string s;
  for (size_t i = 0; i < col.categories.size(); ++i) {
    if (i) s += ", ";
    s += col.categories[i];
  }
  return s;
}

}  // namespace

TabularDataset load_csv(const std::string& csv_path,
                        const std::vector<Column>& schema) {
  std::ifstream in(csv_path);
  if (!in) fail(ErrorCode::io, "csv: cannot open ", csv_path);
  std::string line;
  if (!std::getline(in, line))
    fail(ErrorCode::parse, csv_path, ": empty file, expected a header row");
  auto header = split_csv_line(line);
  require(header.size() == schema.size(), csv_path, ": header has ",
          header.size(), " columns, schema describes ", schema.size());
  for (size_t c = 0; c < schema.size(); ++c)
    if (header[c] != schema[c].name)
      fail(ErrorCode::parse, csv_path, ": header column ", c + 1, " is '",
           header[c], "', schema expects '", schema[c].name, "'");

  TabularDataset ds;
  ds.columns = schema;
  int64_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    auto fields = split_csv_line(line);
    if (fields.size() != schema.size())
      fail(ErrorCode::parse, csv_path, ":", row + 2, ": ", fields.size(),
           " fields, expected ", schema.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      const Column& col = schema[c];
      const std::string& f = fields[c];
      if (f.empty()) {
        ds.values.push_back(std::numeric_limits<real>::quiet_NaN());
        ds.mask.push_back(0);
        continue;
      }
      if (col.kind == ColumnKind::continuous) {
        try {
          size_t pos = 0;
          real v = std::stod(f, &pos);
          if (pos != f.size()) throw std::invalid_argument(f);
          ds.values.push_back(v);
        } catch (const std::exception&) {
          fail(ErrorCode::parse, csv_path, ":", row + 2, ": column '",
               col.name, "': cannot parse '", f, "' as a number");
        }
      } else {
        auto it = std::find(col.categories.begin(), col.categories.end(), f);
        if (it == col.categories.end())
          fail(ErrorCode::parse, csv_path, ":", row + 2, ": column '",
               col.name, "': unknown category '", f, "' (known: ",
               join_categories(col), ")");
        ds.values.push_back(
            static_cast<real>(it - col.categories.begin()));
      }
      ds.mask.push_back(1);
    }
    ++row;
  }
  ds.n_rows = row;
  require(ds.n_rows > 0, csv_path, ": no data rows");
  ds.validate();
  return ds;
}

TabularDataset load_csv(const std::string& csv_path,
                        const std::string& schema_path) {
  return load_csv(csv_path, load_schema(schema_path));
}

namespace {
std::string format_number(real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
  return buf;
}
}  // namespace

void save_csv(const TabularDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "csv: cannot write ", path);
  for (int64_t c = 0; c < ds.n_cols(); ++c)
    out << (c ? "," : "") << ds.columns[static_cast<size_t>(c)].name;
  out << "\n";
  for (int64_t r = 0; r < ds.n_rows; ++r) {
    for (int64_t c = 0; c < ds.n_cols(); ++c) {
      if (c) out << ",";
      if (!ds.observed(r, c)) continue;
      const Column& col = ds.columns[static_cast<size_t>(c)];
      if (col.kind == ColumnKind::discrete)
        out << col.categories[static_cast<size_t>(ds.value_at(r, c))];
      else
        out << format_number(ds.value_at(r, c));
    }
    out << "\n";
  }
}

void save_mask_csv(const TabularDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "mask: cannot write ", path);
  for (int64_t c = 0; c < ds.n_cols(); ++c)
    out << (c ? "," : "") << ds.columns[static_cast<size_t>(c)].name;
  out << "\n";
  for (int64_t r = 0; r < ds.n_rows; ++r) {
    for (int64_t c = 0; c < ds.n_cols(); ++c)
      out << (c ? "," : "") << (ds.observed(r, c) ? 1 : 0);
    out << "\n";
  }
}

void apply_mask(TabularDataset& ds, const std::vector<uint8_t>& new_mask) {
  require(new_mask.size() == ds.mask.size(), "apply_mask: mask size ",
          new_mask.size(), " does not match dataset");
  if (!ds.ground_truth)
    ds.ground_truth = GroundTruth{ds.values, ds.mask};
  for (size_t i = 0; i < ds.mask.size(); ++i) {
    if (ds.mask[i] && !new_mask[i]) {
      ds.mask[i] = 0;
      ds.values[i] = std::numeric_limits<real>::quiet_NaN();
    }
  }
}

}  // namespace igrm::data
