#pragma once

// Random inputs with known answers, shared by the unit tests and the
// acceptance binary.

#include <random>
#include <vector>

#include "iwastat/iwasawa.hpp"

namespace gen {

using iwastat::BigInt;
using iwastat::CharPoly;
using iwastat::u64;

inline BigInt uniform(std::mt19937_64& rng, long lo, long hi) {
  return BigInt(std::uniform_int_distribution<long>(lo, hi)(rng));
}

// Monic of degree d with every lower coefficient divisible by p.
inline std::vector<BigInt> distinguished(std::mt19937_64& rng, u64 p, int d) {
  std::vector<BigInt> c(d + 1);
  for (int i = 0; i < d; ++i) c[i] = uniform(rng, -50, 50) * BigInt(p);
  c[d] = 1;
  return c;
}

// Constant term prime to p; higher terms arbitrary.
inline std::vector<BigInt> unit(std::mt19937_64& rng, u64 p, int d) {
  std::vector<BigInt> c(d + 1);
  do {
    c[0] = uniform(rng, -500, 500);
  } while (c[0] % BigInt(p) == 0);
  for (int i = 1; i <= d; ++i) c[i] = uniform(rng, -500, 500);
  return c;
}

inline std::vector<BigInt> times(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
  std::vector<BigInt> out(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  }
  return out;
}

struct Prepared {
  CharPoly f;
  int mu;
  int lambda;
};

// p^m h(T) u(T) with h distinguished of degree lambda and u a unit.
inline Prepared weierstrass_product(std::mt19937_64& rng) {
  static const u64 primes[] = {3, 5, 7, 11, 13, 37, 101};
  const u64 p = primes[rng() % 7];
  const int m = static_cast<int>(rng() % 4);
  const int lambda = static_cast<int>(rng() % 6);
  auto c = times(distinguished(rng, p, lambda), unit(rng, p, static_cast<int>(rng() % 5)));
  BigInt pm = 1;
  for (int i = 0; i < m; ++i) pm *= p;
  for (auto& x : c) x *= pm;
  return {CharPoly(p, c), m, lambda};
}

// T^r g(T) with g(0) != 0; g(0) is a p-adic unit about half of the time, and
// lower coefficients of g are sometimes divisible by p so that lambda can
// exceed r.
struct Shaped {
  CharPoly f;
  int r;
};

inline Shaped vanishing_shape(std::mt19937_64& rng) {
  static const u64 primes[] = {3, 5, 7, 11};
  const u64 p = primes[rng() % 4];
  const int r = static_cast<int>(rng() % 5);
  const int d = static_cast<int>(rng() % 5);
  std::vector<BigInt> g(d + 1);
  for (int i = 0; i <= d; ++i) {
    g[i] = uniform(rng, -60, 60);
    if (rng() % 2) g[i] *= p;
  }
  if (g[0] == 0) g[0] = rng() % 2 ? BigInt(p) : BigInt(1);
  std::vector<BigInt> c(r, BigInt(0));
  c.insert(c.end(), g.begin(), g.end());
  return {CharPoly(p, c), r};
}

}  // namespace gen
