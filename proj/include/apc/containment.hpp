#pragma once

#include <vector>

#include "apc/contract.hpp"

namespace apc {

/// first(C): literal cover of the possible first properties of L(C);
/// conjunctions contribute pairwise ⊓ products. Literals whose language is
/// provably empty are filtered out. Deterministically ordered.
std::vector<Literal> first_literals(Contract c);

/// δ_c C, the derivative by a whole contract literal. Approximation:
/// L(δ_c C) ⊆ ⋂_{p ∈ L(c)} L(∂_p C), with equality for c ∈ first(C).
Contract lit_derive(Contract c, Literal l);

/// Syntactic language predicates; each returning true soundly implies the
/// property, none is complete.
bool bl(Contract c);   // L(C) = {ι}
bool emp(Contract c);  // L(C) = {}
bool ind(Contract c);  // L(C) = 𝒜
bool unv(Contract c);  // L(C) = 𝒜*

/// Γ ⊢ C ⊑ C′. Rule order: prove axioms (identity, empty/universal edge,
/// nullable-ε), disprove axioms, context deletion, then conjunctive
/// unfolding over first(lhs). Sound: true implies L(lhs) ⊆ L(rhs) on
/// real-property paths; may answer false on true containments. Terminates
/// on every input (context membership plus a depth budget of 256 unfolds;
/// exceeding the budget yields the conservative false).
bool contains(Contract lhs, Contract rhs);

/// ⌊C⌋: bottom-up containment-based simplification. Preserves the language
/// (real-property paths) and never grows the AST.
Contract reduce(Contract c);

}  // namespace apc
