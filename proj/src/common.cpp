#include "irsbench/common.hpp"

namespace irsbench {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  std::uint64_t s = splitmix64(base ^ 0x6a09e667f3bcc909ULL);
  s = splitmix64(s ^ splitmix64(a));
  s = splitmix64(s ^ splitmix64(b + 0xbb67ae8584caa73bULL));
  s = splitmix64(s ^ splitmix64(c + 0x3c6ef372fe94f82bULL));
  return s;
}

cx_mat randn_cx(arma::uword rows, arma::uword cols, Rng& rng) {
  cx_mat out(rows, cols, arma::fill::none);
  for (arma::uword i = 0; i < out.n_elem; ++i) {
    out(i) = rng.gaussian_cx();
  }
  return out;
}

cx_vec unit_modulus(const vec& phases) {
  cx_vec w(phases.n_elem, arma::fill::none);
  for (arma::uword i = 0; i < phases.n_elem; ++i) {
    w(i) = std::polar(1.0, phases(i));
  }
  return w;
}

std::string to_string(PilotKind kind) {
  return kind == PilotKind::random ? "random" : "walsh";
}

std::string to_string(CodebookKind kind) {
  switch (kind) {
    case CodebookKind::canonical:
      return "canonical";
    case CodebookKind::dft:
      return "dft";
    case CodebookKind::hadamard:
      return "hadamard";
  }
  return "?";
}

}  // namespace irsbench
