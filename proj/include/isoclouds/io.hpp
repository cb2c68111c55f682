#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "isoclouds/invariants.hpp"
#include "isoclouds/moments.hpp"

namespace isoclouds {

enum class CloudFormat { Csv, Xyz, JsonSet };

/// "csv", "xyz" or "json"/"json-set". Throws InvalidInput otherwise.
CloudFormat parse_format(std::string_view name);

/// Guess from the file extension; anything unknown is treated as CSV.
CloudFormat format_from_path(const std::filesystem::path& path);

struct NamedCloud {
  std::string name;
  PointCloud cloud;
};

/// All clouds share one dimension and names are unique.
struct CloudFile {
  CloudFormat format = CloudFormat::Csv;
  std::vector<NamedCloud> clouds;
};

/// CSV: one point per row, comma-separated; blank lines and '#' lines are
/// skipped. XYZ: one or more frames of a count line, a comment line (used as
/// the cloud name when non-empty) and count rows; a leading non-numeric token
/// is an atom label and ignored. JSON-set: object of name -> array of
/// coordinate arrays. `source` names single-cloud files and prefixes errors.
/// Errors are InputFormat with line numbers where the format has lines.
CloudFile parse_cloud_text(std::string_view text, CloudFormat format, const std::string& source = "cloud");
CloudFile parse_cloud_file(const std::filesystem::path& path, CloudFormat format);
CloudFile parse_cloud_file(const std::filesystem::path& path);

std::string serialize_clouds(const CloudFile& file);

/// Shortest text that reads back to the same double (17 significant digits).
/// Negative zero prints as 0.
std::string format_double(double v);

/// Canonical nested-array text of one form: {"basis":[...],"columns":[[d...,sign,strength],...]}.
std::string serialize_form(const RelativeForm& form);

/// Canonical JSON with sorted keys: dim, entries (basis, columns, count),
/// kind, points, total. Equal distributions give byte-identical text.
std::string serialize_distribution(const WeightedDistribution& dist);
WeightedDistribution parse_distribution(std::string_view json);

/// "name,kind,l,m,n,coords..." without a trailing newline.
std::string moment_csv_row(const std::string& name, const MomentVector& moment);

}  // namespace isoclouds
