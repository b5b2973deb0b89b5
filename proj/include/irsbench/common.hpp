/**
 * @file common.hpp
 * @brief Shared aliases, error types and deterministic random streams.
 */
#pragma once

#include <armadillo>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace irsbench {

using cx = std::complex<double>;
using arma::cx_mat;
using arma::cx_vec;
using arma::mat;
using arma::uvec;
using arma::vec;

inline constexpr cx imag_unit{0.0, 1.0};

/// Dimension or container-size mismatch between related objects.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter value or malformed configuration file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PilotKind { random, walsh };
enum class CodebookKind { canonical, dft, hadamard };

std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent stream seed from a base seed and up to three tags.
/// Identical inputs always give the identical seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

/// Deterministic random source used for channel, pilot and noise draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  double gaussian() { return normal_(eng_); }
  double uniform() { return unif_(eng_); }  // [0, 1)
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = 1.
  cx gaussian_cx() {
    static const double s = 1.0 / std::sqrt(2.0);
    return {s * gaussian(), s * gaussian()};
  }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

/// Matrix of iid unit-variance circularly-symmetric complex Gaussians,
/// filled in column-major order.
cx_mat randn_cx(arma::uword rows, arma::uword cols, Rng& rng);

/// Element-wise e^{j phase}.
cx_vec unit_modulus(const vec& phases);

std::string to_string(PilotKind kind);
std::string to_string(CodebookKind kind);

}  // namespace irsbench
