#include "subsimplex/dataset_io.hpp"

#include "subsimplex/errors.hpp"
#include "subsimplex/simplex_core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace subsimplex {

const MetaColumn* Dataset::find_meta(const std::string& name) const {
  for (const auto& m : metadata) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::vector<std::string> default_part_labels(Eigen::Index parts) {
  std::vector<std::string> labels;
  for (Eigen::Index k = 0; k < parts; ++k) labels.push_back("V" + std::to_string(k + 1));
  return labels;
}

void validate_compositions(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0 || rows.cols() == 0) throw EmptyDataset("no samples");
  for (Eigen::Index s = 0; s < rows.rows(); ++s) {
    try {
      Composition::from(rows.row(s).transpose());
    } catch (const InvalidComposition& e) {
      throw InvalidComposition("row " + std::to_string(s + 1) + ": " + e.what());
    }
  }
}

namespace io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        current += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

Dataset parse_csv(std::istream& in, const std::vector<std::string>& meta_columns, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw ParseError(source + ": missing header row");
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);

  std::vector<bool> is_meta(header.size(), false);
  for (const auto& name : meta_columns) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError(source + ": metadata column '" + name + "' not in header");
    is_meta[static_cast<std::size_t>(it - header.begin())] = true;
  }

  Dataset out;
  std::vector<std::size_t> part_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (is_meta[c]) {
      out.metadata.push_back({header[c], {}});
    } else {
      part_cols.push_back(c);
      out.column_labels.push_back(header[c]);
    }
  }
  if (part_cols.empty()) throw ParseError(source + ": no composition columns");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const std::size_t row_index = rows.size() + 1;
    if (fields.size() != header.size()) {
      std::ostringstream msg;
      msg << source << ": row " << row_index << " (line " << line_no << ") has " << fields.size()
          << " fields, header has " << header.size();
      throw ParseError(msg.str());
    }
    std::vector<double> values;
    std::size_t meta_k = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (is_meta[c]) {
        out.metadata[meta_k++].values.push_back(fields[c]);
        continue;
      }
      const std::string& cell = fields[c];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << source << ": row " << row_index << " (line " << line_no << "), column '" << header[c]
            << "': cannot parse '" << cell << "'";
        throw ParseError(msg.str());
      }
      if (v < 0.0) {
        std::ostringstream msg;
        msg << source << ": row " << row_index << ", column '" << header[c] << "' is negative (" << cell << ")";
        throw NegativeEntry(msg.str());
      }
      values.push_back(v);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw EmptyDataset(source + ": no data rows");

  out.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(part_cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double sum = 0.0;
    for (double v : rows[r]) sum += v;
    if (!(std::abs(sum - 1.0) < kRenormalizeTolerance)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << source << ": row " << r + 1 << " sums to " << sum << ", not 1";
      throw RowSumOutOfTolerance(msg.str());
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c] / sum;
    }
  }
  return out;
}

Dataset ingest_csv(const std::filesystem::path& path, const std::vector<std::string>& meta_columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_csv(in, meta_columns, path.string());
}

int output_precision() {
  const char* env = std::getenv(kPrecisionEnv);
  if (env == nullptr || *env == '\0') return kDefaultPrecision;
  int value = 0;
  const auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), value);
  if (ec != std::errc() || *ptr != '\0' || value < 1 || value > 17) {
    throw ConfigError(std::string(kPrecisionEnv) + " must be an integer in [1, 17]");
  }
  return value;
}

std::string format_double(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

std::string matrix_csv(const Eigen::MatrixXd& values, const std::vector<std::string>& header, int precision,
                       const std::vector<MetaColumn>& leading) {
  std::string out;
  bool first = true;
  for (const auto& m : leading) {
    out += (first ? "" : ",") + quote_if_needed(m.name);
    first = false;
  }
  for (const auto& h : header) {
    out += (first ? "" : ",") + quote_if_needed(h);
    first = false;
  }
  out += '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    first = true;
    for (const auto& m : leading) {
      out += (first ? "" : ",") + quote_if_needed(m.values.at(static_cast<std::size_t>(r)));
      first = false;
    }
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      out += (first ? "" : ",") + format_double(values(r, c), precision);
      first = false;
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

}  // namespace io
}  // namespace subsimplex
