#include "geokit/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "geokit/error.hpp"

namespace geokit {

namespace {

std::vector<std::string> split(const std::string & line, char sep)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) { out.push_back(field); }
  if (!line.empty() && line.back() == sep) { out.emplace_back(); }
  return out;
}

double parse_real(std::string field)
{
  while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) { field.pop_back(); }
  std::size_t start = 0;
  while (start < field.size() && field[start] == ' ') { ++start; }
  double v         = 0;
  const char * b   = field.data() + start;
  const char * e   = field.data() + field.size();
  if (start < field.size() && *b == '+') { ++b; }
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) { throw DomainError("not a real number: '" + field + "'"); }
  return v;
}

std::vector<std::vector<double>> read_rows(std::istream & is, std::vector<std::string> & header)
{
  std::string line;
  if (!std::getline(is, line)) { throw DomainError("CSV: missing header"); }
  header = split(line, ',');
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") { continue; }
    auto row = parse_reals(line);
    if (row.size() != header.size()) {
      throw DomainError("CSV: row " + std::to_string(rows.size() + 1) + " has " + std::to_string(row.size())
                        + " fields, header has " + std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_number(double v)
{
  std::string s = fmt::format("{}", v);
  if (s.find_first_of(".en") == std::string::npos) { s += ".0"; }
  return s;
}

std::vector<double> parse_reals(const std::string & text)
{
  std::vector<double> out;
  for (const auto & f : split(text, ',')) { out.push_back(parse_real(f)); }
  if (out.empty()) { throw DomainError("expected a comma-separated list of reals"); }
  return out;
}

std::vector<std::string> curve_header(std::size_t dim)
{
  std::vector<std::string> h{"s"};
  for (std::size_t j = 0; j < dim / 2; ++j) {
    h.push_back(fmt::format("x{}", j + 1));
    h.push_back(fmt::format("y{}", j + 1));
  }
  if (dim % 2 == 1) { h.emplace_back("t"); }
  return h;
}

void write_csv(std::ostream & os, const std::vector<std::string> & header,
               const std::vector<std::vector<double>> & rows)
{
  for (std::size_t i = 0; i < header.size(); ++i) { os << (i ? "," : "") << header[i]; }
  os << '\n';
  for (const auto & row : rows) {
    if (row.size() != header.size()) { throw DomainError("write_csv: row width differs from header"); }
    for (std::size_t i = 0; i < row.size(); ++i) { os << (i ? "," : "") << format_number(row[i]); }
    os << '\n';
  }
}

void write_curve_csv(std::ostream & os, const SampledCurve & curve, const std::vector<std::string> & header)
{
  std::vector<std::vector<double>> rows;
  rows.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::vector<double> row{curve.params()[i]};
    row.insert(row.end(), curve.point(i).begin(), curve.point(i).end());
    rows.push_back(std::move(row));
  }
  write_csv(os, header, rows);
}

SampledCurve read_curve_csv(std::istream & is, bool closed)
{
  std::vector<std::string> header;
  const auto rows = read_rows(is, header);
  if (header.size() < 2) { throw DomainError("curve CSV needs a parameter column and coordinates"); }
  std::vector<double> params;
  std::vector<std::vector<double>> pts;
  for (const auto & row : rows) {
    params.push_back(row[0]);
    pts.emplace_back(row.begin() + 1, row.end());
  }
  return SampledCurve(std::move(params), std::move(pts), closed);
}

void write_grid_csv(std::ostream & os, const GridMap & g)
{
  for (int a = 0; a < g.m(); ++a) { os << (a ? "," : "") << 'i' << a + 1; }
  for (int c = 0; c < g.k(); ++c) { os << ",val" << c + 1; }
  os << '\n';
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    if (!g.present(node)) { continue; }
    const auto idx = g.multi_index(node);
    for (int a = 0; a < g.m(); ++a) { os << (a ? "," : "") << idx[a]; }
    for (double v : g.value(node)) { os << ',' << format_number(v); }
    os << '\n';
  }
}

std::string grid_sidecar_json(const GridMap & g)
{
  nlohmann::ordered_json j;
  j["m"]                = g.m();
  j["k"]                = g.k();
  j["h"]                = g.h();
  j["exclusion_radius"] = g.exclusion_radius();
  j["codomain"]         = to_string(g.codomain());
  j["domain"]           = g.is_box() ? "box" : "ball";
  j["origin"]           = g.origin();
  j["extent"]           = g.extent();
  return j.dump(2) + "\n";
}

GridMap read_grid_map(std::istream & csv, const std::string & sidecar_json)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(sidecar_json);
  } catch (const nlohmann::json::exception & e) {
    throw DomainError(std::string("grid sidecar: ") + e.what());
  }
  for (const char * key : {"m", "k", "h", "exclusion_radius", "codomain", "origin", "extent"}) {
    if (!j.contains(key)) { throw DomainError(std::string("grid sidecar: missing key '") + key + "'"); }
  }
  const int m = j["m"].get<int>();
  const int k = j["k"].get<int>();
  GridMap g(m, k, j["h"].get<double>(), j["exclusion_radius"].get<double>(),
            codomain_from_string(j["codomain"].get<std::string>()), j["origin"].get<std::vector<double>>(),
            j["extent"].get<std::vector<int>>(), j.value("domain", "box") == "box");

  std::vector<std::string> header;
  const auto rows = read_rows(csv, header);
  if (header.size() != static_cast<std::size_t>(m + k)) { throw DomainError("grid CSV: width differs from m + k"); }
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (const auto & row : rows) {
    for (int a = 0; a < m; ++a) { idx[a] = static_cast<int>(row[a]); }
    g.set_value(g.linear_index(idx), std::span<const double>(row).subspan(static_cast<std::size_t>(m)));
  }
  return g;
}

}  // namespace geokit
