#include "dcmap/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dcmap {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

std::string shortest(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) parse_error("bad number '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) parse_error("bad integer '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

std::string lattice_to_json(const ConformalLattice& lat) {
  json values = json::array();
  for (int n = 0; n <= lat.size(); ++n) {
    json row = json::array();
    for (int m = 0; m <= lat.size(); ++m) {
      const ExtendedComplex& v = lat.at(n, m);
      if (v.is_infinite()) {
        row.push_back("inf");
      } else {
        row.push_back(json::array({v.re(), v.im()}));
      }
    }
    values.push_back(std::move(row));
  }
  json doc = {{"kind", to_string(lat.kind())}, {"c", lat.c()}, {"size", lat.size()}, {"values", values}};
  return doc.dump() + "\n";
}

ConformalLattice lattice_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_error("lattice document must be an object");
  for (const char* key : {"kind", "c", "size", "values"}) {
    if (!doc.contains(key)) parse_error(std::string("missing key '") + key + "'");
  }
  if (!doc["kind"].is_string()) parse_error("'kind' must be a string");
  if (!doc["c"].is_number()) parse_error("'c' must be a number");
  if (!doc["size"].is_number_integer()) parse_error("'size' must be an integer");
  MapKind kind;
  try {
    kind = parse_map_kind(doc["kind"].get<std::string>());
  } catch (const Error& e) {
    parse_error(e.what());
  }
  const double c = doc["c"].get<double>();
  const auto size = doc["size"].get<long long>();
  if (size < 0 || size > 100000) parse_error("'size' out of range");
  const json& values = doc["values"];
  const auto rows = static_cast<std::size_t>(size) + 1;
  if (!values.is_array() || values.size() != rows) parse_error("'values' must have size + 1 rows");
  std::vector<ExtendedComplex> flat;
  flat.reserve(rows * rows);
  for (std::size_t n = 0; n < rows; ++n) {
    const json& row = values[n];
    if (!row.is_array() || row.size() != rows) {
      parse_error("row " + std::to_string(n) + " must have size + 1 entries");
    }
    for (std::size_t m = 0; m < rows; ++m) {
      const json& v = row[m];
      if (v.is_string() && v.get<std::string>() == "inf") {
        flat.push_back(ExtendedComplex::infinity());
      } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        flat.emplace_back(complex(v[0].get<double>(), v[1].get<double>()));
      } else {
        parse_error("bad value at (" + std::to_string(n) + "," + std::to_string(m) + ")");
      }
    }
  }
  return ConformalLattice(kind, c, static_cast<int>(size), std::move(flat));
}

std::string radii_to_csv(const RadiusField& field) {
  std::string out = "N,M,R\n";
  for (const auto& z : field.labels()) {
    out += std::to_string(z.N) + "," + std::to_string(z.M) + "," + shortest(field.at(z)) + "\n";
  }
  return out;
}

RadiusField radii_from_csv(std::string_view text, double c, int lattice_size) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "N,M,R") parse_error("radii CSV must start with the header N,M,R");
  RadiusField field(c, lattice_size);
  LabelGrid probe(lattice_size);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto cells = split(lines[k], ',');
    if (cells.size() != 3) parse_error("radii CSV line " + std::to_string(k + 1) + " needs three fields");
    const SublatticeLabel z{parse_int(cells[0]), parse_int(cells[1])};
    if (!probe.in_range(z)) parse_error("label outside the lattice on line " + std::to_string(k + 1));
    field.set(z, parse_double(cells[2]));
  }
  return field;
}

std::string painleve_to_csv(const PainleveSolution& sol) {
  std::string out = "n,alpha,residual\n";
  for (int n = 0; n <= sol.steps(); ++n) {
    out += std::to_string(n) + "," + shortest(sol.alpha(n)) + ",";
    if (n >= 1 && n <= sol.steps() - 1) out += shortest(dpii_residual(sol, n));
    out += "\n";
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + path.string());
}

}  // namespace dcmap
