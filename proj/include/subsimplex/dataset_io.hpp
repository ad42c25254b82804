#pragma once

#include "subsimplex/dataset.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace subsimplex::io {

inline constexpr int kDefaultPrecision = 17;
inline constexpr const char* kPrecisionEnv = "SUBSIMPLEX_PRECISION";

/// Reads a CSV whose header names the parts. Columns listed in
/// `meta_columns` are kept as string metadata; every other column must be
/// numeric. Rows within 1e-6 of unit sum are rescaled, others rejected.
Dataset ingest_csv(const std::filesystem::path& path, const std::vector<std::string>& meta_columns = {});
Dataset parse_csv(std::istream& in, const std::vector<std::string>& meta_columns = {},
                  const std::string& source = "<stream>");

/// Significant digits for written floats: SUBSIMPLEX_PRECISION if set, else 17.
int output_precision();
std::string format_double(double value, int precision);

/// Matrix as CSV with a one-line header; optional string columns go first.
std::string matrix_csv(const Eigen::MatrixXd& values, const std::vector<std::string>& header, int precision,
                       const std::vector<MetaColumn>& leading = {});

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace subsimplex::io
