#include "swlab/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swlab {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + v);
  }
  if (pos != v.size()) {
    throw std::invalid_argument("config: bad number for " + key + ": " + v);
  }
  return x;
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  Config c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value: " + t);
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config: empty key at line " +
                                  std::to_string(lineno));
    }
    c.kv_[key] = val;
  }
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::str(const std::string& key, const std::string& def) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

double Config::num(const std::string& key, double def) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? def : parse_double(key, it->second);
}

int Config::integer(const std::string& key, int def) const {
  const double v = num(key, static_cast<double>(def));
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw std::invalid_argument("config: " + key + " must be an integer");
  }
  return i;
}

std::int64_t Config::integer64(const std::string& key, std::int64_t def) const {
  const double v = num(key, static_cast<double>(def));
  const std::int64_t i = static_cast<std::int64_t>(v);
  if (static_cast<double>(i) != v) {
    throw std::invalid_argument("config: " + key + " must be an integer");
  }
  return i;
}

std::string Config::manifest() const {
  std::ostringstream os;
  for (const auto& [k, v] : kv_) os << k << '=' << v << '\n';
  return os.str();
}

double resolve_strip_width(const std::string& spec, int N) {
  if (N < 1) throw std::invalid_argument("strip width: N must be >= 1");
  if (spec.rfind("auto", 0) == 0) {
    double p = 0.75;
    if (spec.size() > 4) {
      // accept auto:N^-p
      if (spec.compare(4, 4, ":N^-") != 0) {
        throw std::invalid_argument("strip width: bad rule: " + spec);
      }
      p = parse_double("strip width exponent", spec.substr(8));
      if (!(p > 0.0)) {
        throw std::invalid_argument("strip width: exponent must be positive");
      }
    }
    return std::pow(static_cast<double>(N), -p);
  }
  const double a = parse_double("strip width", spec);
  if (!(a > 0.0)) throw std::invalid_argument("strip width must be positive");
  return a;
}

BetaSpec parse_beta_spec(const std::string& spec) {
  BetaSpec b;
  if (spec.rfind("critical", 0) != 0) {
    b.relative = false;
    b.absolute = parse_double("beta", spec);
    return b;
  }
  b.relative = true;
  std::string rest = spec.substr(8);
  if (rest.empty()) return b;
  const char sign = rest[0];
  if (sign != '+' && sign != '-') {
    throw std::invalid_argument("beta: expected +/- after 'critical': " + spec);
  }
  rest = rest.substr(1);
  const auto slash = rest.find('/');
  std::string mag = rest;
  if (slash != std::string::npos) {
    const std::string denom = rest.substr(slash + 1);
    if (denom != "sqrtN") {
      throw std::invalid_argument("beta: unknown denominator: " + spec);
    }
    b.over_sqrt_n = true;
    mag = rest.substr(0, slash);
  }
  b.offset = parse_double("beta offset", mag);
  if (sign == '-') b.offset = -b.offset;
  return b;
}

double resolve_beta(const BetaSpec& spec, double beta_c_strip, int N) {
  if (!spec.relative) return spec.absolute;
  double off = spec.offset;
  if (spec.over_sqrt_n) {
    if (N < 1) throw std::invalid_argument("beta: sqrtN needs N >= 1");
    off /= std::sqrt(static_cast<double>(N));
  }
  return beta_c_strip + off;
}

}  // namespace swlab
