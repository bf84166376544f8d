#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "drbench/core_model.hpp"

namespace drbench {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

/// Parses a full decimal field; throws DataError on junk.
double parse_number(std::string_view field);

/// Writes `m` as CSV: one row per line, comma-separated, no header, '\n' endings.
void write_matrix_csv(std::ostream& os, const Matrix& m);
Matrix read_matrix_csv(const std::filesystem::path& file, Eigen::Index expected_cols = -1);

/// File name of revision/frame t: t0000.csv, t0001.csv, ...
std::string frame_file_name(std::size_t t);

/// Dataset directory: meta.json, labels.csv, t0000.csv ... Throws DataError on
/// missing or malformed files.
void write_dataset(const std::filesystem::path& dir, const DynamicDataset& d);
DynamicDataset read_dataset(const std::filesystem::path& dir);

/// Projection directory: same layout with two columns per frame line and
/// meta.json carrying technique and dataset_name. Labels are copied from
/// the source dataset.
void write_projection(const std::filesystem::path& dir, const ProjectionSequence& p, const DynamicDataset& source);
ProjectionSequence read_projection(const std::filesystem::path& dir);

}  // namespace drbench
