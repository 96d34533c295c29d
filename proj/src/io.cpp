#include "ribopt/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "ribopt/error.hpp"

namespace ribopt {

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

double parse_number(const std::string& token, int line) {
  try {
    return parse_real(token);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const double num = parse_real(text.substr(0, slash));
    const double den = parse_real(text.substr(slash + 1));
    if (den == 0.0) throw InvalidInput("division by zero in '" + text + "'");
    return num / den;
  }
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
    const std::string factor = text.substr(0, text.size() - 2);
    if (factor.empty()) return std::numbers::pi;
    if (factor == "-") return -std::numbers::pi;
    if (factor.back() == '*') return parse_real(factor.substr(0, factor.size() - 1)) * std::numbers::pi;
    return parse_real(factor) * std::numbers::pi;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + text + "'");
  }
}

Domain read_domain(std::istream& in) {
  std::optional<Polygon> outer;
  std::vector<Polygon> holes;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip_comment(raw);
    if (s.empty()) continue;
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'outer:' or 'hole:'", line);
    const std::string tag = s.substr(0, colon);
    std::istringstream rest(s.substr(colon + 1));
    std::vector<double> coords;
    std::string tok;
    while (rest >> tok) coords.push_back(parse_number(tok, line));
    if (coords.size() % 2 != 0 || coords.size() < 6) {
      throw ParseError("polygon needs at least three coordinate pairs", line);
    }
    Polygon poly;
    for (std::size_t i = 0; i < coords.size(); i += 2) poly.push_back({coords[i], coords[i + 1]});
    if (tag == "outer") {
      if (outer) throw ParseError("duplicate outer polygon", line);
      outer = std::move(poly);
    } else if (tag == "hole") {
      holes.push_back(std::move(poly));
    } else {
      throw ParseError("unknown tag '" + tag + "'", line);
    }
  }
  if (!outer) throw ParseError("domain file has no outer polygon", 0);
  return Domain(std::move(*outer), std::move(holes));
}

Domain read_domain_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_domain(in);
}

void write_domain(std::ostream& out, const Domain& domain) {
  out << std::setprecision(17);
  auto emit = [&](const char* tag, const Polygon& poly) {
    out << tag << ':';
    for (const Vec2& v : poly) out << ' ' << v.x << ' ' << v.y;
    out << '\n';
  };
  emit("outer", domain.outer());
  for (const auto& h : domain.holes()) emit("hole", h);
}

SigmaNetwork read_sigma(std::istream& in) {
  std::vector<Vec2> vertices;
  std::vector<Edge> edges;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip_comment(raw);
    if (s.empty()) continue;
    std::istringstream fields(s);
    std::string tag, a, b, extra;
    fields >> tag >> a >> b;
    if (b.empty() || (fields >> extra)) throw ParseError("expected 'v x y' or 'e i j'", line);
    if (tag == "v") {
      if (!edges.empty()) throw ParseError("vertex after edges", line);
      vertices.push_back({parse_number(a, line), parse_number(b, line)});
    } else if (tag == "e") {
      try {
        std::size_t ua = 0, ub = 0;
        const int i = std::stoi(a, &ua);
        const int j = std::stoi(b, &ub);
        if (ua != a.size() || ub != b.size()) throw std::invalid_argument(s);
        const int n = static_cast<int>(vertices.size());
        if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range(s);
        edges.emplace_back(i, j);
      } catch (const std::exception&) {
        throw ParseError("bad edge indices", line);
      }
    } else {
      throw ParseError("unknown tag '" + tag + "'", line);
    }
  }
  try {
    return SigmaNetwork(std::move(vertices), std::move(edges));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), 0);
  }
}

SigmaNetwork read_sigma_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_sigma(in);
}

void write_sigma(std::ostream& out, const SigmaNetwork& sigma) {
  out << std::setprecision(17);
  for (const Vec2& v : sigma.vertices()) out << "v " << v.x << ' ' << v.y << '\n';
  for (const auto& [i, j] : sigma.edges()) out << "e " << i << ' ' << j << '\n';
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip_comment(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value", line);
    std::string key = strip_comment(s.substr(0, eq));
    std::string value = strip_comment(s.substr(eq + 1));
    cfg.values_[key] = value;
    cfg.lines_[key] = line;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse(in);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
  lines_.erase(key);
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  const auto line = lines_.find(key);
  try {
    return parse_real(*v);
  } catch (const InvalidInput& e) {
    throw ParseError(key + ": " + e.what(), line == lines_.end() ? 0 : line->second);
  }
}

long KeyValueConfig::get_int(const std::string& key, long fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  if (v != std::floor(v)) {
    const auto line = lines_.find(key);
    throw ParseError(key + ": expected an integer", line == lines_.end() ? 0 : line->second);
  }
  return static_cast<long>(v);
}

std::vector<double> KeyValueConfig::get_list(const std::string& key,
                                             const std::vector<double>& fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  const auto line = lines_.find(key);
  std::vector<double> out;
  std::istringstream list(*v);
  std::string item;
  while (std::getline(list, item, ',')) {
    item = strip_comment(item);
    if (item.empty()) continue;
    try {
      out.push_back(parse_real(item));
    } catch (const InvalidInput& e) {
      throw ParseError(key + ": " + e.what(), line == lines_.end() ? 0 : line->second);
    }
  }
  return out;
}

void write_raster(std::ostream& out, int rows, int cols, double h, Vec2 origin,
                  const std::vector<double>& values) {
  if (values.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InvalidInput("raster size does not match rows*cols");
  }
  out << std::setprecision(17) << rows << ' ' << cols << ' ' << h << ' ' << origin.x << ' '
      << origin.y << '\n';
  out << std::setprecision(12);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c > 0) out << ' ';
      out << values[static_cast<std::size_t>(r) * cols + c];
    }
    out << '\n';
  }
}

}  // namespace ribopt
