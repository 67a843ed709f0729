#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace twdnnf {

/// Dense set over a fixed universe (vertices, edges or variables).
using Bitset = boost::dynamic_bitset<>;

/// A total assignment to the edge variables of a graph: bit e holds x_e.
using Assignment = Bitset;

/// Desk-scale assignment packed into a machine word (bit e holds x_e).
/// Only used where the variable count is capped well below 64.
using Model = std::uint64_t;

/// Sorted, duplicate-free list of desk-scale models.
using ModelSet = std::vector<Model>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<int> members(const Bitset& set) {
  std::vector<int> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != Bitset::npos; i = set.find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

inline Bitset make_set(std::size_t universe, const std::vector<int>& elements) {
  Bitset set(universe);
  for (int e : elements) set.set(static_cast<std::size_t>(e));
  return set;
}

inline Model to_model(const Bitset& assignment) {
  if (assignment.size() > 64) throw Error("assignment does not fit a 64-bit model");
  Model m = 0;
  for (auto i = assignment.find_first(); i != Bitset::npos; i = assignment.find_next(i))
    m |= Model{1} << i;
  return m;
}

inline Assignment to_assignment(Model model, std::size_t variables) {
  Assignment a(variables);
  for (std::size_t i = 0; i < variables; ++i)
    if ((model >> i) & 1U) a.set(i);
  return a;
}

inline Model mask_of(const Bitset& set) { return to_model(set); }

inline int parity(Model m) { return std::popcount(m) & 1; }

/// Lexicographic order on bit strings written x_0 x_1 x_2 ... (x_0 most significant).
inline bool lex_less(Model a, Model b) {
  const Model diff = a ^ b;
  if (diff == 0) return false;
  const int first = std::countr_zero(diff);
  return ((a >> first) & 1U) == 0;
}

/// "x_0 x_1 ... x_{n-1}" as a string of 0/1 characters.
inline std::string bit_string(Model m, int variables) {
  std::string s(static_cast<std::size_t>(variables), '0');
  for (int i = 0; i < variables; ++i)
    if ((m >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

inline std::uint64_t pow2(int exponent) {
  if (exponent < 0 || exponent >= 64) throw Error("2^" + std::to_string(exponent) + " out of range");
  return std::uint64_t{1} << exponent;
}

}  // namespace twdnnf
