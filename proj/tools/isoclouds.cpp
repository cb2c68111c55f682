#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoclouds/io.hpp"
#include "isoclouds/metrics.hpp"
#include "isoclouds/moments.hpp"
#include "isoclouds/parallel.hpp"

using namespace isoclouds;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Invariant { Osd, Scd, Odm, Cdm };
enum class Method { Default, Lac, Emd, Linf };

struct Options {
  Invariant invariant = Invariant::Osd;
  Method method = Method::Default;
  Equivalence mode = Equivalence::Rigid;
  std::string anchor = "centroid";
  unsigned order = 1;
  std::string format;
};

Anchor parse_anchor(const std::string& text) {
  if (text == "centroid") return Anchor::centroid();
  std::size_t pos = 0;
  unsigned long k = 0;
  try {
    k = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text.front() == '-') {
    throw UsageError("--anchor must be 'centroid' or a point index, got '" + text + "'");
  }
  return Anchor::at_point(k, true);
}

CloudFile load(const std::string& path, const Options& opt) {
  return opt.format.empty() ? parse_cloud_file(path) : parse_cloud_file(path, parse_format(opt.format));
}

const PointCloud& single(const CloudFile& file, const std::string& path) {
  if (file.clouds.size() != 1) {
    throw UsageError(path + " holds " + std::to_string(file.clouds.size()) + " clouds; dist needs exactly one");
  }
  return file.clouds.front().cloud;
}

bool is_moment(Invariant inv) { return inv == Invariant::Odm || inv == Invariant::Cdm; }

Aggregation aggregation(const Options& opt) {
  if (opt.method == Method::Linf) throw UsageError("--method linf applies to odm/cdm; use lac or emd for osd/scd");
  return opt.method == Method::Lac ? Aggregation::Lac : Aggregation::Emd;
}

// Everything pairwise distances need for one cloud, computed once.
struct Prepared {
  std::size_t points = 0, dim = 0;
  WeightedDistribution dist;
  std::vector<double> moment, mirrored;
};

MomentVector moment_of(const PointCloud& c, Invariant inv, unsigned order, const Anchor& anchor) {
  return inv == Invariant::Odm ? odm(c, order) : cdm(c, order, anchor);
}

Prepared prepare(const PointCloud& c, const Options& opt, Invariant inv) {
  Prepared p{c.size(), c.dim(), {}, {}, {}};
  const Anchor anchor = parse_anchor(opt.anchor);
  switch (inv) {
    case Invariant::Osd:
      p.dist = build_osd(c);
      break;
    case Invariant::Scd:
      p.dist = build_scd(c, anchor);
      break;
    case Invariant::Odm:
    case Invariant::Cdm:
      p.moment = moment_of(c, inv, opt.order, anchor).coords;
      if (opt.mode == Equivalence::Isometry) p.mirrored = moment_of(reflect(c), inv, opt.order, anchor).coords;
      break;
  }
  return p;
}

void check_comparable(const Prepared& a, const Prepared& b) {
  if (a.points != b.points || a.dim != b.dim) {
    throw Error(ErrorKind::Incomparable, "clouds differ in point count or dimension (m = " + std::to_string(a.points) +
                                             " vs " + std::to_string(b.points) + ", n = " + std::to_string(a.dim) +
                                             " vs " + std::to_string(b.dim) + ")");
  }
}

double moment_distance(const Prepared& a, const Prepared& b, Equivalence mode) {
  check_comparable(a, b);
  double d = linf(a.moment, b.moment);
  if (mode == Equivalence::Isometry) d = std::min(d, linf(a.moment, b.mirrored));
  return d;
}

// Only the strength-free prefix; strengths jump when a representative flips.
double prefilter_distance(const Prepared& a, const Prepared& b, MomentKind kind, Equivalence mode) {
  const std::size_t len = distance_coordinates(kind, a.points, a.dim);
  const auto head = [len](const std::vector<double>& v) { return std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(len)); };
  double d = linf(head(a.moment), head(b.moment));
  if (mode == Equivalence::Isometry) d = std::min(d, linf(head(a.moment), head(b.mirrored)));
  return d;
}

double prepared_distance(const Prepared& a, const Prepared& b, const Options& opt) {
  if (is_moment(opt.invariant)) {
    if (opt.method == Method::Lac || opt.method == Method::Emd) {
      throw UsageError("--method lac/emd applies to osd/scd; moments use linf");
    }
    return moment_distance(a, b, opt.mode);
  }
  check_comparable(a, b);
  return distribution_distance(a.dist, b.dist, aggregation(opt), opt.mode);
}

std::vector<Prepared> prepare_all(const CloudFile& file, const Options& opt, Invariant inv) {
  std::vector<Prepared> out(file.clouds.size());
  parallel_for(out.size(), [&](std::size_t i) { out[i] = prepare(file.clouds[i].cloud, opt, inv); });
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorKind::InputFormat, path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void run_compute(const std::string& in, const std::string& out, const Options& opt) {
  const CloudFile file = load(in, opt);
  const Anchor anchor = parse_anchor(opt.anchor);
  Output sink(out);
  if (is_moment(opt.invariant)) {
    for (const auto& nc : file.clouds) sink.stream() << moment_csv_row(nc.name, moment_of(nc.cloud, opt.invariant, opt.order, anchor)) << '\n';
    return;
  }
  std::map<std::string, std::string> by_name;
  for (const auto& nc : file.clouds) {
    const auto dist = opt.invariant == Invariant::Osd ? build_osd(nc.cloud) : build_scd(nc.cloud, anchor);
    std::string text = serialize_distribution(dist);
    text.pop_back();
    by_name[nc.name] = std::move(text);
  }
  std::string json = "{";
  for (const auto& [name, text] : by_name) {
    if (json.size() > 1) json += ",";
    json += nlohmann::json(name).dump() + ":" + text;
  }
  sink.stream() << json << "}\n";
}

void run_dist(const std::string& a, const std::string& b, const Options& opt) {
  const CloudFile fa = load(a, opt), fb = load(b, opt);
  const Prepared pa = prepare(single(fa, a), opt, opt.invariant);
  const Prepared pb = prepare(single(fb, b), opt, opt.invariant);
  std::cout << format_double(prepared_distance(pa, pb, opt)) << '\n';
}

void run_matrix(const std::string& in, const std::string& out, const Options& opt) {
  const CloudFile file = load(in, opt);
  const auto prepared = prepare_all(file, opt, opt.invariant);
  const std::size_t k = prepared.size();
  Matrix d = Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const double v = prepared_distance(prepared[i], prepared[j], opt);
    d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
  });
  Output sink(out);
  auto& os = sink.stream();
  for (const auto& nc : file.clouds) os << ',' << nc.name;
  os << '\n';
  for (std::size_t i = 0; i < k; ++i) {
    os << file.clouds[i].name;
    for (std::size_t j = 0; j < k; ++j) os << ',' << format_double(d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    os << '\n';
  }
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

void run_dedup(const std::string& in, const std::string& out, double threshold, const Options& opt) {
  if (is_moment(opt.invariant)) throw UsageError("dedup works on osd or scd");
  if (!(threshold >= 0)) throw UsageError("--threshold must be non-negative");
  const CloudFile file = load(in, opt);
  const Invariant bound = opt.invariant == Invariant::Osd ? Invariant::Odm : Invariant::Cdm;
  const MomentKind kind = bound == Invariant::Odm ? MomentKind::Odm : MomentKind::Cdm;
  Options exact = opt;
  exact.method = Method::Emd;
  Options lower = opt;
  lower.order = 1;
  const auto full = prepare_all(file, exact, opt.invariant);
  const auto moments = prepare_all(file, lower, bound);

  const std::size_t k = file.clouds.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  std::vector<char> close(pairs.size(), 0);
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const Prepared& a = full[i];
    const Prepared& b = full[j];
    if (a.points != b.points || a.dim != b.dim) return;  // different sizes never merge
    // Distance parts of the first moments bound EMD from below, so a large gap settles the pair.
    if (prefilter_distance(moments[i], moments[j], kind, opt.mode) > threshold) return;
    close[p] = distribution_distance(a.dist, b.dist, Aggregation::Emd, opt.mode) <= threshold;
  });

  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!close[p]) continue;
    const std::size_t ra = find_root(parent, pairs[p].first), rb = find_root(parent, pairs[p].second);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < k; ++i) groups[find_root(parent, i)].push_back(file.clouds[i].name);
  Output sink(out);
  for (const auto& [root, names] : groups) {
    for (std::size_t i = 0; i < names.size(); ++i) sink.stream() << (i ? "," : "") << names[i];
    sink.stream() << '\n';
  }
}

std::vector<unsigned> parse_orders(const std::string& text) {
  std::vector<unsigned> orders;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (tok.empty() || pos != tok.size() || v == 0) throw UsageError("--orders needs positive integers, got '" + tok + "'");
    orders.push_back(static_cast<unsigned>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return orders;
}

void run_moments(const std::string& in, const std::string& out, const std::string& orders_text, const Options& opt) {
  if (!is_moment(opt.invariant)) throw UsageError("moments needs --invariant odm or cdm");
  const auto orders = parse_orders(orders_text);
  const CloudFile file = load(in, opt);
  const Anchor anchor = parse_anchor(opt.anchor);
  Output sink(out);
  for (const auto& nc : file.clouds) {
    // One distribution per cloud serves every order.
    const auto dist = opt.invariant == Invariant::Odm ? build_osd(nc.cloud) : build_scd(nc.cloud, anchor);
    for (unsigned l : orders) sink.stream() << moment_csv_row(nc.name, distribution_moment(dist, l)) << '\n';
  }
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Incomparable:
    case ErrorKind::DimensionMismatch:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometry invariants and distances for finite point clouds"};
  app.require_subcommand(1);

  Options opt;
  const std::map<std::string, Invariant> invariants{
      {"osd", Invariant::Osd}, {"scd", Invariant::Scd}, {"odm", Invariant::Odm}, {"cdm", Invariant::Cdm}};
  const std::map<std::string, Method> methods{{"lac", Method::Lac}, {"emd", Method::Emd}, {"linf", Method::Linf}};
  const std::map<std::string, Equivalence> modes{{"rigid", Equivalence::Rigid}, {"isometry", Equivalence::Isometry}};

  auto add_common = [&](CLI::App* cmd, bool with_method) {
    cmd->add_option("--invariant", opt.invariant, "osd, scd, odm or cdm")
        ->transform(CLI::CheckedTransformer(invariants, CLI::ignore_case))
        ->option_text("osd|scd|odm|cdm");
    if (with_method) {
      cmd->add_option("--method", opt.method, "lac or emd for osd/scd, linf for odm/cdm")
          ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case))
          ->option_text("lac|emd|linf");
    }
    cmd->add_option("--mode", opt.mode, "rigid or isometry")->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->option_text("rigid|isometry");
    cmd->add_option("--anchor", opt.anchor, "SCD origin: centroid or a point index");
    cmd->add_option("--format", opt.format, "csv, xyz or json (default: from the extension)");
  };

  std::string in, out = "-", a, b, orders = "1";
  double threshold = 0.0;

  auto* compute = app.add_subcommand("compute", "Write the invariant of every cloud in a file");
  compute->add_option("--in", in, "input cloud file")->required();
  compute->add_option("--out", out, "output file, - for stdout");
  compute->add_option("--moment", opt.order, "moment order for odm/cdm")->check(CLI::PositiveNumber);
  add_common(compute, false);

  auto* dist = app.add_subcommand("dist", "Distance between two single-cloud files");
  dist->add_option("--a", a, "first cloud file")->required();
  dist->add_option("--b", b, "second cloud file")->required();
  dist->add_option("--moment", opt.order, "moment order for odm/cdm")->check(CLI::PositiveNumber);
  add_common(dist, true);

  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix of all clouds in a file");
  matrix->add_option("--in", in, "input cloud file")->required();
  matrix->add_option("--out", out, "output file, - for stdout");
  matrix->add_option("--moment", opt.order, "moment order for odm/cdm")->check(CLI::PositiveNumber);
  add_common(matrix, true);

  auto* dedup = app.add_subcommand("dedup", "Group clouds whose EMD distance is within a threshold");
  dedup->add_option("--in", in, "input cloud file")->required();
  dedup->add_option("--out", out, "output file, - for stdout");
  dedup->add_option("--threshold", threshold, "largest distance inside a group")->required();
  add_common(dedup, false);

  auto* moments = app.add_subcommand("moments", "Moment vectors as CSV rows");
  moments->add_option("--in", in, "input cloud file")->required();
  moments->add_option("--out", out, "output file, - for stdout");
  moments->add_option("--orders", orders, "comma-separated moment orders");
  add_common(moments, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*compute) run_compute(in, out, opt);
    if (*dist) {
      if (dist->count("--invariant") == 0 && (opt.method == Method::Linf)) opt.invariant = Invariant::Odm;
      run_dist(a, b, opt);
    }
    if (*matrix) run_matrix(in, out, opt);
    if (*dedup) {
      if (dedup->count("--invariant") == 0) opt.invariant = Invariant::Scd;
      run_dedup(in, out, threshold, opt);
    }
    if (*moments) {
      if (moments->count("--invariant") == 0) opt.invariant = Invariant::Odm;
      run_moments(in, out, orders, opt);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return 0;
}
