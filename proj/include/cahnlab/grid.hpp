#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace cahnlab {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Uniform periodic grid on the flat torus [0, L)^d with real-to-complex
/// spectral machinery.
///
/// Spectral arrays use the half-complex r2c layout: row-major over
/// n x ... x n x (n/2 + 1). Forward transforms are unnormalized
/// (f_hat = sum_j f_j exp(-i k.x_j)); inverse transforms divide by the cell
/// count, so the Fourier-series coefficient of mode k is f_hat / size().
/// Unused trailing axes of Vec3 quantities are zero.
class TorusGrid {
 public:
  /// Throws PreconditionError unless dim in {1,2,3}, n_per_axis even and >= 8,
  /// side_length > 0.
  static std::shared_ptr<const TorusGrid> make(int dim, int n_per_axis, double side_length = 1.0);

  ~TorusGrid();
  TorusGrid(const TorusGrid&) = delete;
  TorusGrid& operator=(const TorusGrid&) = delete;

  int dim() const noexcept { return dim_; }
  int n_per_axis() const noexcept { return n_; }
  double side_length() const noexcept { return side_length_; }
  double spacing() const noexcept { return spacing_; }
  double volume() const noexcept { return volume_; }
  double cell_volume() const noexcept { return cell_volume_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t spectral_size() const noexcept { return spectral_size_; }

  /// Integer frequencies in FFT order for a full axis; the Nyquist entry is +n/2.
  std::span<const int> axis_frequencies() const noexcept { return axis_frequencies_; }
  /// Angular wavenumbers 2 pi m / L matching axis_frequencies().
  std::vector<double> axis_wavenumbers() const;

  /// |k|^2 per spectral index, Nyquist components included (even-order operators).
  std::span<const double> k_squared() const noexcept { return k_squared_; }
  /// |k|^2 with Nyquist components zeroed (first-order derivatives).
  std::span<const double> gradient_k_squared() const noexcept { return gradient_k_squared_; }
  /// Hermitian multiplicity (1 or 2) of each half-spectrum entry.
  std::span<const double> multiplicity() const noexcept { return multiplicity_; }
  /// 1 / (1 + |k|^2): weights of the (H^1)* norm.
  std::span<const double> dual_weights() const noexcept { return dual_weights_; }
  /// 1 / |k|^2 with the k = 0 entry set to 0.
  std::span<const double> inverse_k_squared() const noexcept { return inverse_k_squared_; }
  /// Full wavevector per spectral index (Nyquist kept as +pi n / L).
  std::span<const Vec3> wavevectors() const noexcept { return wavevectors_; }

  /// Signed frequency per axis of a spectral index; Nyquist reported as +n/2.
  std::array<int, 3> spectral_frequency(std::size_t spectral_index) const;
  bool is_nyquist(int frequency) const noexcept { return frequency == n_ / 2; }

  std::array<int, 3> cell_multi_index(std::size_t cell) const;
  std::size_t cell_index(const std::array<int, 3>& multi_index) const;
  /// x_i = i h per axis.
  Vec3 cell_position(std::size_t cell) const;
  /// Offset of the cell from the origin, wrapped to [-L/2, L/2) per axis.
  Vec3 minimal_offset(std::size_t cell) const;

  void forward(std::span<const double> values, std::span<Complex> coefficients) const;
  /// Normalized inverse; `coefficients` is left untouched.
  void inverse(std::span<const Complex> coefficients, std::span<double> values) const;

  bool same_shape(const TorusGrid& other) const noexcept;

 private:
  TorusGrid(int dim, int n, double side_length);

  struct Plans;

  int dim_;
  int n_;
  double side_length_;
  double spacing_;
  double volume_;
  double cell_volume_;
  std::size_t size_;
  std::size_t spectral_size_;
  std::vector<int> axis_frequencies_;
  std::vector<double> k_squared_;
  std::vector<double> gradient_k_squared_;
  std::vector<double> multiplicity_;
  std::vector<double> dual_weights_;
  std::vector<double> inverse_k_squared_;
  std::vector<Vec3> wavevectors_;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const TorusGrid>;

/// Real grid function with a lazily computed spectral representation.
class Field {
 public:
  explicit Field(GridPtr grid);
  Field(GridPtr grid, std::vector<double> values);

  static Field constant(GridPtr grid, double value);
  static Field from_spectral(GridPtr grid, std::vector<Complex> coefficients);
  template <class Fn>
  static Field from_function(GridPtr grid, Fn&& fn) {
    Field f(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) f.values_[i] = fn(grid->cell_position(i));
    return f;
  }

  const TorusGrid& grid() const noexcept { return *grid_; }
  const GridPtr& shared_grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  /// Mutable access; invalidates the spectral cache.
  std::span<double> mutable_values() noexcept {
    spectral_valid_ = false;
    return values_;
  }
  std::span<const Complex> spectral() const;
  bool spectral_valid() const noexcept { return spectral_valid_; }

  /// Replace the state by spectral coefficients (values recomputed, cache kept).
  void assign_spectral(std::vector<Complex> coefficients);

  bool all_finite() const noexcept;
  double min() const;
  double max() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
  mutable std::vector<Complex> spectral_;
  mutable bool spectral_valid_ = false;
};

void require_same_grid(const TorusGrid& a, const TorusGrid& b);

double mean(const Field& f);
/// (h^d sum f_i^2)^(1/2), summed in real space.
double norm_L2(const Field& f);
/// ||grad f||_{L2} from the spectral gradient (Nyquist zeroed).
double gradient_norm_L2(const Field& f);
double norm_H1(const Field& f);
/// (|Omega| sum_k |c_k|^2 / (1 + |k|^2))^(1/2); the k = 0 term enters with weight 1.
double norm_H1_dual(const Field& f);
/// Homogeneous dual norm ||(-Delta)^(-1/2) f||_{L2}; the k = 0 mode is ignored.
double norm_Hminus1(const Field& f);

/// |Omega| sum_k symbol(k) |c_k|^2 = <A f, f> for the diagonal operator A.
double spectral_quadratic_form(const Field& f, std::span<const double> symbol);
/// Spectral sum with the Fourier coefficients of two fields: <A f, g>.
double spectral_bilinear_form(const Field& f, const Field& g, std::span<const double> symbol);

Field apply_symbol(const Field& f, std::span<const double> symbol);
Field laplacian(const Field& f);
/// Solves -Delta g = f with mean(g) = 0. Requires |mean(f)| <= 1e-10 ||f||_{L2}.
Field inverse_laplacian(const Field& f);
Field partial_derivative(const Field& f, int axis);

/// L2 inner product h^d sum f_i g_i.
double inner_product(const Field& f, const Field& g);

}  // namespace cahnlab
