#pragma once

// Shared helpers for the contract-family harnesses: exhaustive and random
// generation of normalized contracts over a small atom pool, and path
// universes for bounded-language comparisons.

#include <random>
#include <set>
#include <vector>

#include "apc/contract.hpp"

namespace apc_test {

using apc::AccessPath;
using apc::Contract;
using apc::Property;

inline std::vector<Contract> atom_pool_ab() {
  return {
      Contract::empty_set(),
      Contract::epsilon(),
      Contract::lit(apc::Literal::blank()),
      Contract::lit(apc::Literal::universe()),
      Contract::lit(apc::Literal::exact("a")),
      Contract::lit(apc::Literal::exact("b")),
  };
}

/// Every normalized contract of AST size ≤ max_size buildable from the
/// atoms (smart constructors normalize, so results are deduplicated normal
/// forms whose size may be below the raw shape size).
inline std::vector<Contract> all_contracts(size_t max_size,
                                           const std::vector<Contract>& atoms) {
  // by_size[n] = contracts built from raw shapes of size n.
  std::vector<std::set<Contract>> by_size(max_size + 1);
  std::set<Contract> seen;
  for (Contract a : atoms)
    if (by_size[1].insert(a).second) seen.insert(a);
  for (size_t n = 2; n <= max_size; ++n) {
    for (Contract c : by_size[n - 1]) by_size[n].insert(Contract::star(c));
    for (size_t i = 1; i + 2 <= n; ++i) {
      size_t j = n - 1 - i;  // 1 + i + j = n
      for (Contract l : by_size[i])
        for (Contract r : by_size[j]) {
          by_size[n].insert(Contract::alt(l, r));
          by_size[n].insert(Contract::both(l, r));
          by_size[n].insert(Contract::concat(l, r));
        }
    }
    for (Contract c : by_size[n]) seen.insert(c);
  }
  std::vector<Contract> out;
  for (Contract c : seen)
    if (c.size() <= max_size) out.push_back(c);
  return out;
}

inline Contract random_contract(std::mt19937_64& rng, size_t budget,
                                const std::vector<Contract>& atoms) {
  if (budget <= 1) return atoms[rng() % atoms.size()];
  switch (rng() % 5) {
    case 0:
      return atoms[rng() % atoms.size()];
    case 1:
      return Contract::star(random_contract(rng, budget - 1, atoms));
    case 2: {
      size_t l = 1 + rng() % (budget - 1);
      return Contract::alt(random_contract(rng, l, atoms),
                           random_contract(rng, budget - 1 - l ? budget - 1 - l : 1, atoms));
    }
    case 3: {
      size_t l = 1 + rng() % (budget - 1);
      return Contract::both(random_contract(rng, l, atoms),
                            random_contract(rng, budget - 1 - l ? budget - 1 - l : 1, atoms));
    }
    default: {
      size_t l = 1 + rng() % (budget - 1);
      return Contract::concat(random_contract(rng, l, atoms),
                              random_contract(rng, budget - 1 - l ? budget - 1 - l : 1, atoms));
    }
  }
}

/// All real-property paths (no ι) over the alphabet, lengths 0..max_len.
inline std::vector<AccessPath> real_paths(const std::vector<Property>& alphabet,
                                          size_t max_len) {
  std::vector<AccessPath> out{AccessPath{}};
  size_t begin = 0;
  for (size_t len = 1; len <= max_len; ++len) {
    size_t end = out.size();
    for (size_t i = begin; i < end; ++i)
      for (const auto& p : alphabet) {
        AccessPath next = out[i];
        next.push_back(p);
        out.push_back(std::move(next));
      }
    begin = end;
  }
  return out;
}

/// L(c) restricted to real-property paths of length ≤ max_len.
inline std::set<AccessPath> bounded_real_language(
    Contract c, const std::vector<Property>& alphabet, size_t max_len) {
  std::set<AccessPath> out;
  for (const auto& p :
       apc::enumerate_language(c, alphabet, max_len, 5000000)) {
    bool real = true;
    for (const auto& prop : p)
      if (prop.is_blank()) real = false;
    if (real) out.insert(p);
  }
  return out;
}

inline std::vector<Property> alphabet_ab() {
  return {Property::name("a"), Property::name("b")};
}

}  // namespace apc_test
