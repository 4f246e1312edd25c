#include "cahnlab/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cahnlab/error.hpp"

namespace cahnlab {

std::string_view to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::constant: return "constant";
    case InitialKind::single_mode: return "single_mode";
    case InitialKind::tanh_interface: return "tanh_interface";
    case InitialKind::spinodal_noise: return "spinodal_noise";
  }
  return "unknown";
}

InitialKind initial_kind_from_string(std::string_view name) {
  if (name == "constant") return InitialKind::constant;
  if (name == "single_mode") return InitialKind::single_mode;
  if (name == "tanh_interface") return InitialKind::tanh_interface;
  if (name == "spinodal_noise") return InitialKind::spinodal_noise;
  throw PreconditionError("unknown initial kind '" + std::string(name) + "'");
}

void InitialSpec::validate(const TorusGrid& grid) const {
  if (!std::isfinite(mean) || !std::isfinite(amplitude)) throw PreconditionError("initial data must be finite");
  if (kind == InitialKind::single_mode && (mode < 1 || 2 * mode >= grid.n_per_axis()))
    throw PreconditionError("init.mode must lie in [1, n/2)");
  if (kind == InitialKind::spinodal_noise && (band < 1 || 2 * band >= grid.n_per_axis()))
    throw PreconditionError("init.band must lie in [1, n/2)");
  if (kind == InitialKind::tanh_interface && !(width > 0.0)) throw PreconditionError("init.width must be positive");
}

Field single_mode(GridPtr grid, double mean, double amplitude, int mode) {
  const double k = 2.0 * std::numbers::pi * mode / grid->side_length();
  const int d = grid->dim();
  return Field::from_function(grid, [&](const Vec3& x) {
    double v = 1.0;
    for (int j = 0; j < d; ++j) v *= std::cos(k * x[j]);
    return mean + amplitude * v;
  });
}

Field tanh_interface(GridPtr grid, double mean, double amplitude, double width) {
  const double L = grid->side_length();
  return Field::from_function(grid, [&](const Vec3& x) {
    const double w = std::sqrt(2.0) * width;
    const double phi = 0.5 * (std::tanh((x[0] - 0.25 * L) / w) - std::tanh((x[0] - 0.75 * L) / w));
    return mean + amplitude * (2.0 * phi - 1.0);
  });
}

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Field spinodal_noise(GridPtr grid, double mean, double amplitude, int band, std::uint64_t seed) {
  const int d = grid->dim();
  const double k0 = 2.0 * std::numbers::pi / grid->side_length();
  struct Mode {
    std::array<int, 3> m;
    double a, b;
  };
  std::vector<Mode> modes;
  std::mt19937_64 rng(seed);
  const int lo1 = -band, lo2 = d >= 2 ? -band : 0, lo3 = d >= 3 ? -band : 0;
  const int hi2 = d >= 2 ? band : 0, hi3 = d >= 3 ? band : 0;
  double power = 0.0;
  for (int m1 = lo1; m1 <= band; ++m1)
    for (int m2 = lo2; m2 <= hi2; ++m2)
      for (int m3 = lo3; m3 <= hi3; ++m3) {
        const bool leading = m1 > 0 || (m1 == 0 && (m2 > 0 || (m2 == 0 && m3 > 0)));
        if (!leading) continue;
        const double a = 2.0 * unit_uniform(rng) - 1.0;
        const double b = 2.0 * unit_uniform(rng) - 1.0;
        modes.push_back({{m1, m2, m3}, a, b});
        power += 0.5 * (a * a + b * b);
      }
  const double scale = amplitude / std::sqrt(power);
  return Field::from_function(grid, [&](const Vec3& x) {
    double g = 0.0;
    for (const auto& md : modes) {
      const double phase = k0 * (md.m[0] * x[0] + md.m[1] * x[1] + md.m[2] * x[2]);
      g += md.a * std::cos(phase) + md.b * std::sin(phase);
    }
    return mean + scale * g;
  });
}

Field make_initial(GridPtr grid, const InitialSpec& spec) {
  spec.validate(*grid);
  switch (spec.kind) {
    case InitialKind::constant: return Field::constant(grid, spec.mean);
    case InitialKind::single_mode: return single_mode(grid, spec.mean, spec.amplitude, spec.mode);
    case InitialKind::tanh_interface: return tanh_interface(grid, spec.mean, spec.amplitude, spec.width);
    case InitialKind::spinodal_noise: return spinodal_noise(grid, spec.mean, spec.amplitude, spec.band, spec.seed);
  }
  throw PreconditionError("unknown initial kind");
}

}  // namespace cahnlab
