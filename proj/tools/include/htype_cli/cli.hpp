#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace htype::cli {

enum ExitCode : int { ok = 0, verification_failure = 1, usage_error = 2 };

struct RunConfig {
  std::string group = "heisenberg:1";
  double transform_tol = 1e-10;
  double quad_tol = 1e-8;
  std::uint64_t seed = 20050601;
  int validation_samples = 100;
  std::string out_dir;  // empty: write to stdout

  /// Throws std::invalid_argument on nonpositive tolerances or samples.
  void check() const;
  std::string to_json() const;
};

/// Merges a JSON config file into `cfg`. Keys: group (shorthand string or
/// descriptor object), transform_tol, quad_tol, seed, validation_samples,
/// out_dir. Unknown keys are rejected.
void merge_config_file(RunConfig& cfg, const std::string& path);

/// "nu=0.5,1,2;l=0:5;mu=0,0.5,1". Lists are comma separated; l also takes
/// an inclusive range lo:hi.
struct SpectrumGrid {
  std::vector<double> nus;
  std::vector<int> ls;
  std::vector<double> mus;
};
SpectrumGrid parse_grid(std::string_view text);

std::vector<double> parse_list(std::string_view text);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

/// Shortest round-trip representation.
std::string num(double v);

/// Runs `htype <args...>`; args excludes the program name. Output goes to
/// `out` unless an output directory is configured.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace htype::cli
