#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace swlab {

// Flat key=value configuration ('#' comments, blank lines ignored). CLI
// flags are merged on top via set(); manifest() echoes the effective sorted
// set so every run records its inputs.
class Config {
 public:
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string str(const std::string& key, const std::string& def) const;
  double num(const std::string& key, double def) const;
  int integer(const std::string& key, int def) const;
  std::int64_t integer64(const std::string& key, std::int64_t def) const;

  std::string manifest() const;

 private:
  std::map<std::string, std::string> kv_;
};

// Strip-width rule: a plain number, or "auto" (= N^{-3/4}), or "auto:N^-p"
// for a custom exponent p > 0.
double resolve_strip_width(const std::string& spec, int N);

// Pinning-strength grammar: a plain number, or "critical" with an optional
// +/- offset, optionally divided by sqrt(N):
//   critical   critical+0.3   critical-0.1   critical+1.5/sqrtN
struct BetaSpec {
  bool relative = false;
  double absolute = 0.0;
  double offset = 0.0;
  bool over_sqrt_n = false;
};
BetaSpec parse_beta_spec(const std::string& spec);
double resolve_beta(const BetaSpec& spec, double beta_c_strip, int N);

}  // namespace swlab
