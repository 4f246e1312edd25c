#include "cahnlab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "cahnlab/error.hpp"
#include "cahnlab/kernels.hpp"

namespace cahnlab {

namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct TorusGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

std::shared_ptr<const TorusGrid> TorusGrid::make(int dim, int n_per_axis, double side_length) {
  if (dim < 1 || dim > 3) throw PreconditionError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (n_per_axis % 2 != 0) throw PreconditionError("n_per_axis must be even, got " + std::to_string(n_per_axis));
  if (n_per_axis < 8) throw PreconditionError("n_per_axis must be >= 8, got " + std::to_string(n_per_axis));
  if (!(side_length > 0.0) || !std::isfinite(side_length))
    throw PreconditionError("side_length must be positive and finite");
  return std::shared_ptr<const TorusGrid>(new TorusGrid(dim, n_per_axis, side_length));
}

TorusGrid::TorusGrid(int dim, int n, double side_length)
    : dim_(dim),
      n_(n),
      side_length_(side_length),
      spacing_(side_length / n),
      volume_(std::pow(side_length, dim)),
      cell_volume_(std::pow(side_length / n, dim)),
      plans_(std::make_unique<Plans>()) {
  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(n);
  spectral_size_ = size_ / n * (n / 2 + 1);

  axis_frequencies_.resize(n);
  for (int i = 0; i < n; ++i) axis_frequencies_[i] = i <= n / 2 ? i : i - n;

  const double unit = 2.0 * std::numbers::pi / side_length;
  k_squared_.resize(spectral_size_);
  gradient_k_squared_.resize(spectral_size_);
  multiplicity_.resize(spectral_size_);
  dual_weights_.resize(spectral_size_);
  inverse_k_squared_.resize(spectral_size_);
  wavevectors_.resize(spectral_size_);
  for (std::size_t s = 0; s < spectral_size_; ++s) {
    const auto m = spectral_frequency(s);
    double k2 = 0.0, g2 = 0.0;
    Vec3 kv{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
      const double k = unit * m[a];
      kv[a] = k;
      k2 += k * k;
      if (!is_nyquist(m[a])) g2 += k * k;
    }
    k_squared_[s] = k2;
    gradient_k_squared_[s] = g2;
    dual_weights_[s] = 1.0 / (1.0 + k2);
    inverse_k_squared_[s] = k2 > 0.0 ? 1.0 / k2 : 0.0;
    wavevectors_[s] = kv;
    const int last = m[dim - 1];
    multiplicity_[s] = (last == 0 || last == n / 2) ? 1.0 : 2.0;
  }

  std::vector<double> real(size_);
  std::vector<Complex> spec(spectral_size_);
  int dims[3] = {n, n, n};
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->forward =
      fftw_plan_dft_r2c(dim, dims, real.data(), reinterpret_cast<fftw_complex*>(spec.data()), flags);
  plans_->inverse =
      fftw_plan_dft_c2r(dim, dims, reinterpret_cast<fftw_complex*>(spec.data()), real.data(), flags);
}

TorusGrid::~TorusGrid() {
  std::lock_guard lock(planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->inverse) fftw_destroy_plan(plans_->inverse);
}

std::vector<double> TorusGrid::axis_wavenumbers() const {
  std::vector<double> k(n_);
  const double unit = 2.0 * std::numbers::pi / side_length_;
  for (int i = 0; i < n_; ++i) k[i] = unit * axis_frequencies_[i];
  return k;
}

std::array<int, 3> TorusGrid::spectral_frequency(std::size_t s) const {
  std::array<int, 3> m{0, 0, 0};
  const std::size_t half = static_cast<std::size_t>(n_ / 2 + 1);
  m[dim_ - 1] = static_cast<int>(s % half);
  s /= half;
  for (int a = dim_ - 2; a >= 0; --a) {
    m[a] = axis_frequencies_[s % n_];
    s /= n_;
  }
  return m;
}

std::array<int, 3> TorusGrid::cell_multi_index(std::size_t cell) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(cell % n_);
    cell /= n_;
  }
  return idx;
}

std::size_t TorusGrid::cell_index(const std::array<int, 3>& multi_index) const {
  std::size_t cell = 0;
  for (int a = 0; a < dim_; ++a) {
    const int i = ((multi_index[a] % n_) + n_) % n_;
    cell = cell * n_ + static_cast<std::size_t>(i);
  }
  return cell;
}

Vec3 TorusGrid::cell_position(std::size_t cell) const {
  const auto idx = cell_multi_index(cell);
  Vec3 x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = idx[a] * spacing_;
  return x;
}

Vec3 TorusGrid::minimal_offset(std::size_t cell) const {
  const auto idx = cell_multi_index(cell);
  Vec3 z{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) z[a] = (idx[a] < n_ / 2 ? idx[a] : idx[a] - n_) * spacing_;
  return z;
}

void TorusGrid::forward(std::span<const double> values, std::span<Complex> coefficients) const {
  if (values.size() != size_ || coefficients.size() != spectral_size_)
    throw PreconditionError("forward transform: array size mismatch");
  // r2c does not modify its input.
  fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(coefficients.data()));
}

void TorusGrid::inverse(std::span<const Complex> coefficients, std::span<double> values) const {
  if (values.size() != size_ || coefficients.size() != spectral_size_)
    throw PreconditionError("inverse transform: array size mismatch");
  // c2r destroys its input, so work on a scratch copy.
  thread_local std::vector<Complex> scratch;
  scratch.assign(coefficients.begin(), coefficients.end());
  fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex*>(scratch.data()), values.data());
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& v : values) v *= scale;
}

bool TorusGrid::same_shape(const TorusGrid& other) const noexcept {
  return dim_ == other.dim_ && n_ == other.n_ && side_length_ == other.side_length_;
}

// ---------------------------------------------------------------------------

Field::Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

Field::Field(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) throw PreconditionError("field size does not match grid");
}

Field Field::constant(GridPtr grid, double value) {
  Field f(std::move(grid));
  std::fill(f.values_.begin(), f.values_.end(), value);
  return f;
}

Field Field::from_spectral(GridPtr grid, std::vector<Complex> coefficients) {
  Field f(std::move(grid));
  f.assign_spectral(std::move(coefficients));
  return f;
}

std::span<const Complex> Field::spectral() const {
  if (!spectral_valid_) {
    spectral_.resize(grid_->spectral_size());
    grid_->forward(values_, spectral_);
    spectral_valid_ = true;
  }
  return spectral_;
}

void Field::assign_spectral(std::vector<Complex> coefficients) {
  if (coefficients.size() != grid_->spectral_size()) throw PreconditionError("spectral size does not match grid");
  spectral_ = std::move(coefficients);
  grid_->inverse(spectral_, values_);
  spectral_valid_ = true;
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

Field& Field::operator+=(const Field& other) {
  require_same_grid(*grid_, other.grid());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  spectral_valid_ = false;
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*grid_, other.grid());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  spectral_valid_ = false;
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& v : values_) v *= s;
  spectral_valid_ = false;
  return *this;
}

// ---------------------------------------------------------------------------

void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (&a != &b && !a.same_shape(b)) throw PreconditionError("grid mismatch");
}

double mean(const Field& f) { return kernels::sum(f.values()) / static_cast<double>(f.size()); }

double norm_L2(const Field& f) { return std::sqrt(f.grid().cell_volume() * kernels::sum_of_squares(f.values())); }

double inner_product(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid());
  return f.grid().cell_volume() * kernels::dot(f.values(), g.values());
}

namespace {

// |Omega| / N^2 converts sums of |f_hat|^2 into |Omega| sum |c_k|^2.
double parseval_scale(const TorusGrid& g) {
  const double n = static_cast<double>(g.size());
  return g.volume() / (n * n);
}

}  // namespace

double spectral_quadratic_form(const Field& f, std::span<const double> symbol) {
  const auto& g = f.grid();
  if (symbol.size() != g.spectral_size()) throw PreconditionError("symbol size does not match grid");
  return parseval_scale(g) * kernels::spectral_weighted_sum(f.spectral(), symbol, g.multiplicity());
}

double spectral_bilinear_form(const Field& f, const Field& h, std::span<const double> symbol) {
  require_same_grid(f.grid(), h.grid());
  const auto& g = f.grid();
  if (symbol.size() != g.spectral_size()) throw PreconditionError("symbol size does not match grid");
  return parseval_scale(g) * kernels::spectral_weighted_dot(f.spectral(), h.spectral(), symbol, g.multiplicity());
}

double gradient_norm_L2(const Field& f) {
  return std::sqrt(spectral_quadratic_form(f, f.grid().gradient_k_squared()));
}

double norm_H1(const Field& f) {
  const double l2 = norm_L2(f);
  const double grad = gradient_norm_L2(f);
  return std::sqrt(l2 * l2 + grad * grad);
}

double norm_H1_dual(const Field& f) { return std::sqrt(spectral_quadratic_form(f, f.grid().dual_weights())); }

double norm_Hminus1(const Field& f) { return std::sqrt(spectral_quadratic_form(f, f.grid().inverse_k_squared())); }

Field apply_symbol(const Field& f, std::span<const double> symbol) {
  const auto& g = f.grid();
  if (symbol.size() != g.spectral_size()) throw PreconditionError("symbol size does not match grid");
  std::vector<Complex> c(f.spectral().begin(), f.spectral().end());
  kernels::multiply_symbol(c, symbol);
  return Field::from_spectral(f.shared_grid(), std::move(c));
}

Field laplacian(const Field& f) {
  std::vector<double> minus_k2(f.grid().k_squared().begin(), f.grid().k_squared().end());
  for (auto& v : minus_k2) v = -v;
  return apply_symbol(f, minus_k2);
}

Field inverse_laplacian(const Field& f) {
  const double m = mean(f);
  if (std::abs(m) > 1e-10 * norm_L2(f) + 1e-300)
    throw PreconditionError("inverse_laplacian: input must have zero mean (mean = " + std::to_string(m) + ")");
  return apply_symbol(f, f.grid().inverse_k_squared());
}

Field partial_derivative(const Field& f, int axis) {
  const auto& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw PreconditionError("partial_derivative: axis out of range");
  std::vector<Complex> c(f.spectral().begin(), f.spectral().end());
  const double unit = 2.0 * std::numbers::pi / g.side_length();
  for (std::size_t s = 0; s < c.size(); ++s) {
    const int m = g.spectral_frequency(s)[axis];
    const double k = g.is_nyquist(m) ? 0.0 : unit * m;
    c[s] *= Complex(0.0, k);
  }
  return Field::from_spectral(f.shared_grid(), std::move(c));
}

}  // namespace cahnlab
