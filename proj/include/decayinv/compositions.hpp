#pragma once

// Ordered compositions k = k_1 + ... + k_m with k_j >= 1, and multinomial
// coefficients k! / (k_1! ... k_m!).

#include <cstdint>
#include <numeric>
#include <vector>

#include "decayinv/errors.hpp"

namespace decayinv {

struct Composition {
  std::vector<int> parts;

  int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  int size() const { return static_cast<int>(parts.size()); }
  friend bool operator==(const Composition&, const Composition&) = default;
};

/// Calls f(parts) for every composition of k into m positive parts in
/// lexicographic order. No calls when m > k or m < 1.
template <class F>
void for_each_composition(int k, int m, F&& f) {
  if (k < 1 || m < 1 || m > k) return;
  std::vector<int> parts(static_cast<std::size_t>(m), 1);
  parts.back() = k - m + 1;
  while (true) {
    f(static_cast<const std::vector<int>&>(parts));
    // next in lexicographic order: rightmost position (not last) whose tail can give up a unit
    int i = m - 2;
    while (i >= 0) {
      int tail = 0;
      for (int j = i + 1; j < m; ++j) tail += parts[static_cast<std::size_t>(j)];
      if (tail > m - 1 - i) {
        ++parts[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j) parts[static_cast<std::size_t>(j)] = 1;
        parts.back() = tail - 1 - (m - 2 - i);
        break;
      }
      --i;
    }
    if (i < 0) return;
  }
}

inline std::vector<Composition> compositions(int k, int m) {
  std::vector<Composition> out;
  for_each_composition(k, m, [&](const std::vector<int>& p) { out.push_back(Composition{p}); });
  return out;
}

/// k! / (k_1! ... k_m!) in exact unsigned arithmetic, built as a product of
/// binomials so intermediates stay as small as the result allows.
inline std::uint64_t multinomial(int k, const Composition& c) {
  if (c.total() != k) throw ParameterError("multinomial: parts do not sum to k");
  std::uint64_t out = 1;
  int acc = 0;
  for (int part : c.parts) {
    if (part < 0) throw ParameterError("multinomial: negative part");
    // multiply by binom(acc + part, part)
    std::uint64_t b = 1;
    for (int i = 1; i <= part; ++i) {
      const std::uint64_t num = static_cast<std::uint64_t>(acc + i);
      const std::uint64_t g = std::gcd(b, static_cast<std::uint64_t>(i));
      const std::uint64_t bi = b / g, den = static_cast<std::uint64_t>(i) / g;
      // b * num / i is an integer; den divides num after cancelling gcd(b, i)
      if (num % den != 0) throw RangeError("multinomial: internal divisibility failure", 0.0);
      const std::uint64_t n2 = num / den;
      if (n2 != 0 && bi > UINT64_MAX / n2) throw RangeError("multinomial: overflow", 0.0);
      b = bi * n2;
    }
    if (b != 0 && out > UINT64_MAX / b) throw RangeError("multinomial: overflow", 0.0);
    out *= b;
    acc += part;
  }
  return out;
}

}  // namespace decayinv
