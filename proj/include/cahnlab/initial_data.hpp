#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "cahnlab/grid.hpp"

namespace cahnlab {

enum class InitialKind { constant, single_mode, tanh_interface, spinodal_noise };

std::string_view to_string(InitialKind kind);
InitialKind initial_kind_from_string(std::string_view name);

struct InitialSpec {
  InitialKind kind = InitialKind::single_mode;
  double mean = 0.5;
  double amplitude = 0.1;
  int mode = 1;          ///< single_mode: integer frequency per axis
  int band = 4;          ///< spinodal_noise: max |m_j| of the random modes
  double width = 0.05;   ///< tanh_interface: interface width
  std::uint64_t seed = 1;

  void validate(const TorusGrid& grid) const;
};

/// mean + amplitude prod_j cos(2 pi m x_j / L).
Field single_mode(GridPtr grid, double mean, double amplitude, int mode = 1);

/// Slab of the phase 1 around x_1 = L/2 with two tanh interfaces, rescaled to
/// mean + amplitude (2 phi - 1) where phi runs from 0 to 1.
Field tanh_interface(GridPtr grid, double mean, double amplitude, double width);

/// mean + amplitude * g / rms(g), where g is a random trigonometric polynomial
/// with all modes 0 < |m|_inf <= band. Coefficients are drawn in a fixed
/// frequency order, so the function does not depend on the resolution.
Field spinodal_noise(GridPtr grid, double mean, double amplitude, int band, std::uint64_t seed);

Field make_initial(GridPtr grid, const InitialSpec& spec);

}  // namespace cahnlab
