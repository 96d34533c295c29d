#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ribopt/domain.hpp"
#include "ribopt/sigma_network.hpp"

namespace ribopt {

// Domain file: one `outer: x0 y0 x1 y1 ...` line and any number of
// `hole: ...` lines. Blank lines and `#` comments are ignored.
Domain read_domain(std::istream& in);
Domain read_domain_file(const std::string& path);
void write_domain(std::ostream& out, const Domain& domain);

// Sigma file: `v <x> <y>` lines followed by `e <i> <j>` lines.
SigmaNetwork read_sigma(std::istream& in);
SigmaNetwork read_sigma_file(const std::string& path);
void write_sigma(std::ostream& out, const SigmaNetwork& sigma);

// Flat `key=value` configuration, one entry per line, `#` comments.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_file(const std::string& path);

  // Later assignments win; used for command-line overrides.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  // Comma separated list of reals; accepts fractions like 1/32.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

// Parses a real, accepting `a/b` fractions, `pi` multiples (`pi/4`) and `inf`.
double parse_real(const std::string& text);

// Raster text: header `rows cols h x0 y0`, then one line per grid row
// (increasing y), values in increasing x.
void write_raster(std::ostream& out, int rows, int cols, double h, Vec2 origin,
                  const std::vector<double>& values);

}  // namespace ribopt
