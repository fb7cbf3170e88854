#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace birkhoff {

struct FigureCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FigureResult {
  std::string id;
  std::string path;
  std::vector<FigureCheck> checks;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

struct FigureOptions {
  int bits = 48;
  std::int64_t orbit_length = 500;            // figure 1.2
  std::vector<std::int64_t> bestiary_n;       // figure C.1; empty means the default list
};

/// "1.1", "1.2", "2.1", "4.2", "B.1", "C.1".
const std::vector<std::string>& figure_ids();

/// Denominators and neighbours of 1001 for the e − 2 bestiary.
std::vector<std::int64_t> default_bestiary_n();

/// Writes <outdir>/figure_<id>.svg and runs the checks embedded in the figure.
/// Throws PreconditionError for an unknown id and IoError when writing fails.
FigureResult emit_figure(const std::string& id, const std::string& outdir, const FigureOptions& options = {});

}  // namespace birkhoff
