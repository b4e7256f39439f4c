#pragma once

// Brute-force full contraction of a product of Cartesian factors, each
// given by an index string: contract({{"ij", a}, {"ij", b}}) = a_ij b_ij.
// Used as an oracle independent of the library's contraction kernels.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cars/tensor.hpp"

namespace oracle {

struct Factor {
  std::string indices;
  std::span<const double> values;  // row-major, 3^rank entries
};

inline const std::array<double, 27>& levi_civita_table() {
  static const std::array<double, 27> table = [] {
    std::array<double, 27> t{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) t[9 * i + 3 * j + k] = cars::levi_civita(i, j, k);
    return t;
  }();
  return table;
}

inline double contract(const std::vector<Factor>& factors) {
  std::string letters;
  for (const Factor& f : factors)
    for (char ch : f.indices)
      if (letters.find(ch) == std::string::npos) letters.push_back(ch);
  std::size_t total = 1;
  for (std::size_t n = 0; n < letters.size(); ++n) total *= 3;

  long double sum = 0.0L;
  std::vector<std::size_t> value(128, 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (char ch : letters) {
      value[static_cast<unsigned char>(ch)] = c % 3;
      c /= 3;
    }
    long double term = 1.0L;
    for (const Factor& f : factors) {
      std::size_t offset = 0;
      for (char ch : f.indices) offset = 3 * offset + value[static_cast<unsigned char>(ch)];
      term *= f.values[offset];
      if (term == 0.0L) break;
    }
    sum += term;
  }
  return static_cast<double>(sum);
}

/// The printed index strings for the second, third and fourth factor of
/// each invariant; the first factor's string is returned separately.
struct Pattern {
  const char* first;
  const char* b2;
  const char* a3;
  const char* b4;
};

inline constexpr std::array<Pattern, 10> kAlphaPatterns{{
    {"ii", "jj", "kk", "ll"}, {"ii", "jj", "kl", "kl"}, {"ii", "jk", "jl", "kl"},
    {"ii", "jk", "ll", "jk"}, {"ij", "ij", "kl", "kl"}, {"ij", "ik", "jk", "ll"},
    {"ij", "ik", "jl", "kl"}, {"ij", "ik", "kl", "jl"}, {"ij", "kk", "ij", "ll"},
    {"ij", "kl", "ij", "kl"},
}};

inline constexpr std::array<Pattern, 14> kGPrimePatterns{{
    {"ii", "jj", "kk", "ll"}, {"ii", "jj", "kl", "kl"}, {"ii", "jk", "jl", "kl"},
    {"ii", "jk", "ll", "jk"}, {"ij", "ij", "kk", "ll"}, {"ij", "ij", "kl", "kl"},
    {"ij", "ik", "jk", "ll"}, {"ij", "ik", "jl", "kl"}, {"ij", "ik", "kl", "jl"},
    {"ij", "ik", "ll", "jk"}, {"ij", "jk", "ik", "ll"}, {"ij", "jk", "il", "kl"},
    {"ij", "kk", "ij", "ll"}, {"ij", "kl", "ij", "kl"},
}};

// [A]_5..14: eps_mni A_{m,nj} followed by the [G']_5..14 alpha strings.
inline double alpha_invariant(int i, const cars::SymRank2& a34, const cars::SymRank2& a12) {
  const Pattern& p = kAlphaPatterns[static_cast<std::size_t>(i - 1)];
  return contract({{p.first, a34.data()}, {p.b2, a12.data()}, {p.a3, a34.data()}, {p.b4, a12.data()}});
}

inline double gprime_invariant(int i, const cars::Rank2& g, const cars::SymRank2& a34,
                               const cars::SymRank2& a12) {
  const Pattern& p = kGPrimePatterns[static_cast<std::size_t>(i - 1)];
  return contract({{p.first, g.data()}, {p.b2, a12.data()}, {p.a3, a34.data()}, {p.b4, a12.data()}});
}

inline double aquad_invariant(int i, const cars::Rank3SymLast& a, const cars::SymRank2& a34,
                              const cars::SymRank2& a12) {
  const Pattern& p = kGPrimePatterns[static_cast<std::size_t>(i - 1)];
  return contract({{"mni", levi_civita_table()},
                   {"mnj", a.data()},
                   {p.b2, a12.data()},
                   {p.a3, a34.data()},
                   {p.b4, a12.data()}});
}

}  // namespace oracle
