#pragma once

#include <string>
#include <vector>

namespace cahnlab {

struct SelftestCheck {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  bool passed() const;
};

/// Fast paths against brute-force references on small grids: transforms,
/// Parseval, spectral convolution, the B_eps bilinear form and interaction
/// energy, and serial-versus-OpenMP kernel agreement.
SelftestReport run_selftest(unsigned long long seed = 7);

}  // namespace cahnlab
