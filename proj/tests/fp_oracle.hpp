#pragma once

// Finite-field oracle for the number of rank-one slices of a 3x3x3 integer
// tensor along the first axis. Over F_p the count agrees with the count over
// C for all but finitely many p when every rank-one point is rational; an
// infinite locus shows up as roughly p points.

#include <array>
#include <random>
#include <vector>

#include "webcat/fiber.hpp"

namespace fp_oracle {

using Int3 = std::array<std::array<std::array<long, 3>, 3>, 3>;
using webcat::Rational;
using webcat::Tensor3;

inline long mod(long a, long p) { return ((a % p) + p) % p; }

inline long power(long b, long e, long p) {
  long r = 1;
  b = mod(b, p);
  for (; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

inline Int3 to_int(const Tensor3<Rational>& t) {
  Int3 a{};
  for (const auto& [idx, v] : t.entries()) a[idx[0]][idx[1]][idx[2]] = v.get_num().get_si();
  return a;
}

// slice entry (i,j) at the point a: Σ_h t_hij a_h
inline std::array<std::array<long, 3>, 3> slice_mod(const Int3& t, const std::array<long, 3>& a, long p) {
  std::array<std::array<long, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long s = 0;
      for (int h = 0; h < 3; ++h) s += t[h][i][j] * a[h];
      m[i][j] = mod(s, p);
    }
  return m;
}

inline bool rank_one(const std::array<std::array<long, 3>, 3>& m, long p) {
  bool nonzero = false;
  for (const auto& r : m)
    for (long e : r) nonzero = nonzero || e != 0;
  if (!nonzero) return false;
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = j + 1; l < 3; ++l)
          if (mod(m[i][j] * m[k][l] - m[i][l] * m[k][j], p) != 0) return false;
  return true;
}

inline long brute_force_count(const Int3& t, long p) {
  long n = 0;
  auto test = [&](long a0, long a1, long a2) { n += rank_one(slice_mod(t, {a0, a1, a2}, p), p) ? 1 : 0; };
  for (long s = 0; s < p; ++s)
    for (long u = 0; u < p; ++u) test(1, s, u);
  for (long u = 0; u < p; ++u) test(0, 1, u);
  test(0, 0, 1);
  return n;
}

// Polynomials in t mod p, low to high.
using PPoly = std::vector<long>;

inline void trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly pgcd(PPoly a, PPoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const long inv = power(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      const long f = a.back() * inv % p;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - f * b[i], p);
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// Roots of a polynomial of degree <= 2 mod p (p = 3 mod 4).
inline std::vector<long> roots_mod(const PPoly& g, long p) {
  if (g.size() == 2) return {mod(-g[0] * power(g[1], p - 2, p), p)};
  if (g.size() != 3) return {};
  const long a = g[2], b = g[1], c = g[0];
  const long d = mod(b * b - 4 * a * c, p);
  const long inv2a = power(2 * a, p - 2, p);
  if (d == 0) return {mod(-b * inv2a, p)};
  if (power(d, (p - 1) / 2, p) != 1) return {};
  const long r = power(d, (p + 1) / 4, p);
  return {mod((-b + r) * inv2a, p), mod((-b - r) * inv2a, p)};
}

// On each line a = (1, s, t) the 2x2 minors are quadratics in t; their common
// roots are the rank-one points. The line a0 = 0 is checked point by point.
inline long line_count(const Int3& t, long p) {
  long n = 0;
  for (long s = 0; s < p; ++s) {
    std::array<std::array<long, 3>, 3> c0{}, c1{};  // slice = c0 + t c1
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        c0[i][j] = mod(t[0][i][j] + s * t[1][i][j], p);
        c1[i][j] = mod(t[2][i][j], p);
      }
    PPoly g;
    for (int i = 0; i < 3; ++i)
      for (int k = i + 1; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
          for (int l = j + 1; l < 3; ++l) {
            const PPoly m{mod(c0[i][j] * c0[k][l] - c0[i][l] * c0[k][j], p),
                          mod(c0[i][j] * c1[k][l] + c1[i][j] * c0[k][l] - c0[i][l] * c1[k][j] - c1[i][l] * c0[k][j], p),
                          mod(c1[i][j] * c1[k][l] - c1[i][l] * c1[k][j], p)};
            g = pgcd(g, m, p);
          }
    if (g.empty()) {  // rank <= 1 on the whole line
      for (long u = 0; u < p; ++u) n += rank_one(slice_mod(t, {1, s, u}, p), p) ? 1 : 0;
      continue;
    }
    for (long r : roots_mod(g, p)) n += rank_one(slice_mod(t, {1, s, r}, p), p) ? 1 : 0;
  }
  for (long u = 0; u < p; ++u) n += rank_one(slice_mod(t, {0, 1, u}, p), p) ? 1 : 0;
  n += rank_one(slice_mod(t, {0, 0, 1}, p), p) ? 1 : 0;
  return n;
}

// Random tensor with 5 to 9 entries ±1 at random positions.
inline Tensor3<Rational> random_sparse(std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(0, 2), sign(0, 1), size(5, 9);
  Tensor3<Rational> t(3, 3, 3);
  const int n = size(rng);
  for (int i = 0; i < n; ++i)
    t.set(static_cast<std::size_t>(idx(rng)), static_cast<std::size_t>(idx(rng)), static_cast<std::size_t>(idx(rng)),
          sign(rng) ? 1 : -1);
  return t;
}

}  // namespace fp_oracle
