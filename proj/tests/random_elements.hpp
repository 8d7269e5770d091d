#pragma once

#include <random>

#include "brumer/group_ring.hpp"

namespace fixtures {

inline brumer::QGElement random_integral(const brumer::GroupPtr& g, std::mt19937_64& rng, long height,
                                         double density = 1.0) {
  std::uniform_int_distribution<long> coeff(-height, height);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  brumer::QGElement x(g, brumer::Cyclotomic(0));
  for (std::size_t i = 0; i < g->order(); ++i)
    if (keep(rng) < density) x[i] = brumer::Cyclotomic(coeff(rng));
  return x;
}

inline brumer::QGMatrix random_matrix(const brumer::GroupPtr& g, std::mt19937_64& rng, std::size_t n, long height,
                                      double density = 1.0) {
  brumer::QGMatrix m(n, n, brumer::QGElement(g, brumer::Cyclotomic(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_integral(g, rng, height, density);
  return m;
}

// A matrix whose last row repeats the first (singular in every component).
inline brumer::QGMatrix random_singular(const brumer::GroupPtr& g, std::mt19937_64& rng, std::size_t n, long height) {
  brumer::QGMatrix m = random_matrix(g, rng, n, height);
  if (n == 1) {
    m(0, 0) = m(0, 0) * (brumer::QGElement::scalar(g, brumer::Cyclotomic(0), brumer::Cyclotomic(1)) -
                         brumer::QGElement::basis(g, brumer::Cyclotomic(0), brumer::Cyclotomic(1),
                                                  g->generator_indices().empty() ? 0 : g->generator_indices()[0]));
    return m;
  }
  for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j);
  return m;
}

inline brumer::Integer random_residue(std::mt19937_64& rng, const brumer::Integer& modulus) {
  brumer::Integer x = 0;
  for (int i = 0; i < 3; ++i) {
    x <<= 64;
    x += brumer::Integer(std::to_string(rng()));
  }
  return x % modulus;
}

// Uniform entries in Z/p^k[G].
inline brumer::ZpGMatrix random_zp_matrix(const brumer::GroupPtr& g, const brumer::ZModRing* ring, std::size_t rows,
                                          std::size_t cols, std::mt19937_64& rng) {
  brumer::ZpGMatrix m(rows, cols, brumer::ZpGElement(g, brumer::ZMod(ring, 0)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t x = 0; x < g->order(); ++x) m(i, j)[x] = brumer::ZMod(ring, random_residue(rng, ring->modulus()));
  return m;
}

// Small integer entries, reduced into Z/p^k[G].
inline brumer::ZpGMatrix random_small_zp_matrix(const brumer::GroupPtr& g, const brumer::ZModRing* ring,
                                                std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                                                long height) {
  return brumer::reduce(
      [&] {
        brumer::QGMatrix m(rows, cols, brumer::QGElement(g, brumer::Cyclotomic(0)));
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_integral(g, rng, height);
        return m;
      }(),
      ring);
}

inline brumer::ZpGMatrix reduce_precision(const brumer::ZpGMatrix& m, const brumer::ZModRing* ring) {
  brumer::ZpGMatrix r(m.rows(), m.cols(), brumer::ZpGElement(m.group(), brumer::ZMod(ring, 0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t x = 0; x < m.group()->order(); ++x) r(i, j)[x] = m(i, j)[x].reduce(ring->exponent());
  return r;
}

}  // namespace fixtures
