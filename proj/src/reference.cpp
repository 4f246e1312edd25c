#include "cahnlab/reference.hpp"

#include <cmath>

namespace cahnlab::reference {

namespace {

// Cell index of x_i - x_j.
std::size_t difference_cell(const TorusGrid& g, std::size_t i, std::size_t j) {
  const auto a = g.cell_multi_index(i);
  const auto b = g.cell_multi_index(j);
  const int n = g.n_per_axis();
  std::array<int, 3> d{0, 0, 0};
  for (int k = 0; k < g.dim(); ++k) d[k] = ((a[k] - b[k]) % n + n) % n;
  return g.cell_index(d);
}

}  // namespace

Field direct_convolution(const ScaledKernel& K, const Field& f) {
  const TorusGrid& g = f.grid();
  require_same_grid(g, K.grid());
  Field out(f.shared_grid());
  auto v = out.mutable_values();
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) s += K.samples()[difference_cell(g, i, j)] * f.values()[j];
    v[i] = g.cell_volume() * s;
  }
  return out;
}

double direct_bilinear_form(const ScaledKernel& K, const Field& f, const Field& h) {
  const TorusGrid& g = f.grid();
  require_same_grid(g, K.grid());
  require_same_grid(g, h.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      s += K.samples()[difference_cell(g, i, j)] * (f.values()[i] - f.values()[j]) * (h.values()[i] - h.values()[j]);
  return 0.5 * g.cell_volume() * g.cell_volume() * s;
}

double direct_interaction_energy(const ScaledKernel& K, const Field& f) {
  return 0.5 * direct_bilinear_form(K, f, f);
}

std::vector<Complex> direct_dft(const Field& f) {
  const TorusGrid& g = f.grid();
  std::vector<Complex> out(g.spectral_size());
  const auto k = g.wavevectors();
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Vec3 x = g.cell_position(j);
      acc += f.values()[j] * std::polar(1.0, -(k[s][0] * x[0] + k[s][1] * x[1] + k[s][2] * x[2]));
    }
    out[s] = acc;
  }
  return out;
}

}  // namespace cahnlab::reference
