#include "isoclouds/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace isoclouds {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

Error format_error(const std::string& source, std::size_t line, const std::string& what) {
  return Error(ErrorKind::InputFormat, source + ":" + std::to_string(line) + ": " + what);
}

bool parse_number(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line, bool whitespace) {
  std::vector<std::string> fields;
  if (whitespace) {
    std::istringstream in(line);
    for (std::string tok; in >> tok;) fields.push_back(tok);
  } else {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return fields;
}

void check_dimension(std::size_t& dim, std::size_t got, const std::string& source, std::size_t line) {
  if (got == 0) throw format_error(source, line, "point has no coordinates");
  if (dim == 0) dim = got;
  if (got != dim) {
    throw format_error(source, line, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(got));
  }
}

CloudFile parse_csv(std::string_view text, const std::string& source) {
  std::vector<std::vector<double>> points;
  std::size_t dim = 0;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line, false);
    std::vector<double> p;
    for (const auto& f : fields) {
      double v = 0.0;
      if (!parse_number(f, v)) throw format_error(source, i + 1, "non-numeric field '" + f + "'");
      p.push_back(v);
    }
    check_dimension(dim, p.size(), source, i + 1);
    points.push_back(std::move(p));
  }
  if (points.empty()) throw Error(ErrorKind::InputFormat, source + ": no points");
  return {CloudFormat::Csv, {{source, PointCloud(dim, points)}}};
}

CloudFile parse_xyz(std::string_view text, const std::string& source) {
  const auto lines = split_lines(text);
  CloudFile file{CloudFormat::Xyz, {}};
  std::size_t dim = 0;
  std::size_t i = 0;
  std::vector<std::string> comments;
  while (i < lines.size()) {
    const std::string header = trim(lines[i]);
    if (header.empty()) {
      ++i;
      continue;
    }
    double count_value = 0.0;
    if (!parse_number(header, count_value) || count_value < 1 || count_value != static_cast<std::size_t>(count_value)) {
      throw format_error(source, i + 1, "expected a positive point count, found '" + header + "'");
    }
    const auto count = static_cast<std::size_t>(count_value);
    if (i + 1 >= lines.size()) throw format_error(source, i + 1, "missing comment line");
    comments.push_back(trim(lines[i + 1]));
    std::vector<std::vector<double>> points;
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t ln = i + 2 + k;
      if (ln >= lines.size()) throw format_error(source, ln + 1, "expected " + std::to_string(count) + " points");
      auto fields = split_fields(lines[ln], true);
      double v = 0.0;
      if (!fields.empty() && !parse_number(fields.front(), v)) fields.erase(fields.begin());  // atom label
      std::vector<double> p;
      for (const auto& f : fields) {
        if (!parse_number(f, v)) throw format_error(source, ln + 1, "non-numeric field '" + f + "'");
        p.push_back(v);
      }
      check_dimension(dim, p.size(), source, ln + 1);
      points.push_back(std::move(p));
    }
    file.clouds.push_back({{}, PointCloud(dim, points)});
    i += 2 + count;
  }
  if (file.clouds.empty()) throw Error(ErrorKind::InputFormat, source + ": no points");

  std::set<std::string> seen;
  bool use_comments = true;
  for (const auto& c : comments) use_comments = use_comments && !c.empty() && seen.insert(c).second;
  for (std::size_t k = 0; k < file.clouds.size(); ++k) {
    if (use_comments) {
      file.clouds[k].name = comments[k];
    } else {
      file.clouds[k].name = file.clouds.size() == 1 ? source : source + "_" + std::to_string(k);
    }
  }
  return file;
}

CloudFile parse_json_set(std::string_view text, const std::string& source) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset to line number.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw format_error(source, line, "invalid JSON");
  }
  if (!doc.is_object() || doc.empty()) {
    throw Error(ErrorKind::InputFormat, source + ": expected a non-empty object of name -> points");
  }
  CloudFile file{CloudFormat::JsonSet, {}};
  std::size_t dim = 0;
  for (const auto& [name, pts] : doc.items()) {
    const std::string where = source + ": cloud '" + name + "'";
    if (!pts.is_array() || pts.empty()) throw Error(ErrorKind::InputFormat, where + ": expected a non-empty array of points");
    std::vector<std::vector<double>> points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto& p = pts[k];
      const std::string at = where + ", point " + std::to_string(k);
      if (!p.is_array()) throw Error(ErrorKind::InputFormat, at + ": expected a coordinate array");
      std::vector<double> coords;
      for (const auto& v : p) {
        if (!v.is_number()) throw Error(ErrorKind::InputFormat, at + ": non-numeric coordinate");
        coords.push_back(v.get<double>());
      }
      if (coords.empty()) throw Error(ErrorKind::InputFormat, at + ": point has no coordinates");
      if (dim == 0) dim = coords.size();
      if (coords.size() != dim) {
        throw Error(ErrorKind::InputFormat, at + ": expected " + std::to_string(dim) + " coordinates, found " +
                                                std::to_string(coords.size()));
      }
      points.push_back(std::move(coords));
    }
    file.clouds.push_back({name, PointCloud(dim, points)});
  }
  return file;
}

int sign_from_json(const nlohmann::json& v) {
  const auto s = v.get<int>();
  if (s < -1 || s > 1) throw Error(ErrorKind::InputFormat, "orientation sign must be -1, 0 or 1");
  return s;
}

}  // namespace

CloudFormat parse_format(std::string_view name) {
  if (name == "csv") return CloudFormat::Csv;
  if (name == "xyz") return CloudFormat::Xyz;
  if (name == "json" || name == "json-set") return CloudFormat::JsonSet;
  throw Error(ErrorKind::InvalidInput, "unknown cloud format '" + std::string(name) + "'");
}

CloudFormat format_from_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".xyz") return CloudFormat::Xyz;
  if (ext == ".json") return CloudFormat::JsonSet;
  return CloudFormat::Csv;
}

CloudFile parse_cloud_text(std::string_view text, CloudFormat format, const std::string& source) {
  if (trim(text).empty()) throw Error(ErrorKind::InputFormat, source + ": empty input");
  switch (format) {
    case CloudFormat::Csv:
      return parse_csv(text, source);
    case CloudFormat::Xyz:
      return parse_xyz(text, source);
    case CloudFormat::JsonSet:
      return parse_json_set(text, source);
  }
  throw Error(ErrorKind::InvalidInput, "unknown cloud format");
}

CloudFile parse_cloud_file(const std::filesystem::path& path, CloudFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InputFormat, path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cloud_text(buf.str(), format, path.stem().string());
}

CloudFile parse_cloud_file(const std::filesystem::path& path) { return parse_cloud_file(path, format_from_path(path)); }

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize_clouds(const CloudFile& file) {
  std::string out;
  auto point_row = [&](const PointCloud& c, std::size_t i, const char* sep) {
    for (std::size_t d = 0; d < c.dim(); ++d) {
      if (d > 0) out += sep;
      out += format_double(c.point(i)(static_cast<Eigen::Index>(d)));
    }
  };
  switch (file.format) {
    case CloudFormat::Csv:
      if (file.clouds.size() != 1) throw Error(ErrorKind::InvalidInput, "CSV holds exactly one cloud");
      for (std::size_t i = 0; i < file.clouds[0].cloud.size(); ++i) {
        point_row(file.clouds[0].cloud, i, ",");
        out += '\n';
      }
      break;
    case CloudFormat::Xyz:
      for (const auto& nc : file.clouds) {
        out += std::to_string(nc.cloud.size()) + '\n' + nc.name + '\n';
        for (std::size_t i = 0; i < nc.cloud.size(); ++i) {
          point_row(nc.cloud, i, " ");
          out += '\n';
        }
      }
      break;
    case CloudFormat::JsonSet: {
      out += "{";
      for (std::size_t k = 0; k < file.clouds.size(); ++k) {
        if (k > 0) out += ",";
        out += nlohmann::json(file.clouds[k].name).dump() + ":[";
        for (std::size_t i = 0; i < file.clouds[k].cloud.size(); ++i) {
          if (i > 0) out += ",";
          out += "[";
          point_row(file.clouds[k].cloud, i, ",");
          out += "]";
        }
        out += "]";
      }
      out += "}\n";
      break;
    }
  }
  return out;
}

std::string serialize_form(const RelativeForm& form) {
  std::string out = "{\"basis\":[";
  for (std::size_t i = 0; i < form.basis.upper().size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(form.basis.upper()[i]);
  }
  out += "],\"columns\":[";
  for (std::size_t c = 0; c < form.columns.size(); ++c) {
    if (c > 0) out += ",";
    out += "[";
    for (double d : form.columns[c].distances) out += format_double(d) + ",";
    out += std::to_string(form.columns[c].sign) + "," + format_double(form.columns[c].strength) + "]";
  }
  out += "]}";
  return out;
}

std::string serialize_distribution(const WeightedDistribution& dist) {
  std::string out = "{\"dim\":" + std::to_string(dist.dim) + ",\"entries\":[";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (i > 0) out += ",";
    std::string form = serialize_form(dist.forms[i]);
    form.pop_back();  // splice the count into the form object
    out += form + ",\"count\":" + std::to_string(dist.counts[i]) + "}";
  }
  out += "],\"kind\":\"";
  out += dist.kind == InvariantKind::Osd ? "osd" : "scd";
  out += "\",\"points\":" + std::to_string(dist.points) + ",\"total\":" + std::to_string(dist.total) + "}\n";
  return out;
}

WeightedDistribution parse_distribution(std::string_view text) {
  WeightedDistribution dist;
  try {
    const auto doc = nlohmann::json::parse(text);
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind != "osd" && kind != "scd") throw Error(ErrorKind::InputFormat, "unknown invariant kind '" + kind + "'");
    dist.kind = kind == "osd" ? InvariantKind::Osd : InvariantKind::Scd;
    dist.dim = doc.at("dim").get<std::size_t>();
    dist.points = doc.at("points").get<std::size_t>();
    dist.total = doc.at("total").get<std::uint64_t>();
    const std::size_t h = dist.dim;  // basis size is n for both kinds
    for (const auto& e : doc.at("entries")) {
      RelativeForm form;
      form.kind = dist.kind;
      const auto upper = e.at("basis").get<std::vector<double>>();
      if (upper.size() != h * (h - 1) / 2) throw Error(ErrorKind::InputFormat, "basis has the wrong number of distances");
      form.basis = DistanceMatrix(h, upper);
      for (const auto& col : e.at("columns")) {
        if (!col.is_array() || col.size() != h + 2) throw Error(ErrorKind::InputFormat, "column has the wrong length");
        Column c;
        for (std::size_t i = 0; i < h; ++i) c.distances.push_back(col[i].get<double>());
        c.sign = sign_from_json(col[h]);
        c.strength = col[h + 1].get<double>();
        form.columns.push_back(std::move(c));
      }
      dist.forms.push_back(std::move(form));
      dist.counts.push_back(e.at("count").get<std::uint64_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InputFormat, std::string("malformed invariant JSON: ") + e.what());
  }
  std::uint64_t sum = 0;
  for (auto c : dist.counts) sum += c;
  if (sum != dist.total) throw Error(ErrorKind::InputFormat, "entry counts do not add up to total");
  return dist;
}

std::string moment_csv_row(const std::string& name, const MomentVector& moment) {
  std::string out = name + (moment.kind == MomentKind::Odm ? ",odm," : ",cdm,") + std::to_string(moment.order) + "," +
                    std::to_string(moment.points) + "," + std::to_string(moment.dim);
  for (double v : moment.coords) out += "," + format_double(v);
  return out;
}

}  // namespace isoclouds
