#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "apc/char_regex.hpp"
#include "apc/property.hpp"

namespace apc {

struct ContractParseError : std::runtime_error {
  ContractParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg), position(pos) {}
  size_t position;
};

struct LanguageOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LiteralKind : uint8_t { Blank, Universe, Regex, NegRegex };

/// Interned contract literal: @ (the blank property ι), ? (every property
/// name), a character-level regex, or a negated regex.
class Literal {
public:
  static Literal blank();
  static Literal universe();
  static Literal regex(CharRegex matcher, std::string display);
  static Literal neg_regex(CharRegex matcher, std::string display);
  /// Exact-match literal for a bare property name.
  static Literal exact(std::string_view name);

  LiteralKind kind() const;
  CharRegex matcher() const;  // Regex/NegRegex only
  std::string display() const;

  /// Membership of a property in L(literal).
  bool matches(const Property& p) const;

  /// True implies L(literal) = {} (conservative).
  bool empty_language() const;

  uint32_t id() const { return id_; }
  friend bool operator==(Literal a, Literal b) { return a.id_ == b.id_; }
  friend bool operator<(Literal a, Literal b) { return a.id_ < b.id_; }

private:
  friend class ContractPool;
  explicit Literal(uint32_t id) : id_(id) {}
  uint32_t id_;
};

/// L(a ⊓ b) = L(a) ∩ L(b). Intersection with ? is the identity; @ meets
/// anything non-blank in the empty-language literal.
Literal intersect(Literal a, Literal b);

/// True implies L(a) ⊆ L(b) (conservative).
bool literal_subset(Literal a, Literal b);

/// c ⊑_R r: true implies L(c) ⊆ L(r) (conservative).
bool literal_contains(Literal c, CharRegex r);

enum class ContractKind : uint8_t {
  EmptySet,
  Epsilon,
  Lit,
  Star,
  Or,
  And,
  Concat
};

/// Interned access permission contract. Every value is normalized: the
/// constructors rewrite with the unit/idempotence rules (ε* ⇒ ε, ε.C ⇒ C,
/// @.C ⇒ @, ∅.C ⇒ ∅, ∅+C ⇒ C, @+C ⇒ C, C+C ⇒ C, ∅&C ⇒ ∅, @&C ⇒ @,
/// C&C ⇒ C) applied modulo commutativity, flatten + deduplicate +/& chains
/// (rebuilt left-associative), and right-associate concatenations. Interned
/// structural equality is id equality; all shared tables are mutex-guarded,
/// so contracts may be built and queried from several threads.
class Contract {
public:
  Contract() = default;  // the empty-set contract

  static Contract empty_set();
  static Contract epsilon();
  static Contract lit(Literal l);
  static Contract star(Contract c);
  static Contract alt(Contract a, Contract b);     // C + C'
  static Contract both(Contract a, Contract b);    // C & C'
  static Contract concat(Contract a, Contract b);  // C . C'

  ContractKind kind() const;
  Contract left() const;   // Star/Or/And/Concat
  Contract right() const;  // Or/And/Concat
  Literal literal() const;
  size_t size() const;  // AST node count

  uint32_t id() const { return id_; }

  /// Rebuilds a handle from an interned id previously obtained via id().
  static Contract from_id(uint32_t id) { return Contract(id); }

  friend bool operator==(Contract a, Contract b) { return a.id_ == b.id_; }
  friend bool operator<(Contract a, Contract b) { return a.id_ < b.id_; }

private:
  friend class ContractPool;
  explicit Contract(uint32_t id) : id_(id) {}
  uint32_t id_ = 0;
};

/// Parses the contract grammar: `*` binds tightest, then `.` (right
/// associative), then `&`, then `+`. Atoms are @, ?, e (for ε), bare
/// identifiers (exact-match), /regex/, !regex and parenthesized contracts.
Contract parse_contract(std::string_view src);

/// Minimal-parenthesis rendering; parse ∘ to_string is the identity.
std::string to_string(Contract c);

/// ν(C): whether ε ∈ L(C).
bool nullable(Contract c);

/// ∂_p C, memoized; L(∂_p C) = p⁻¹ L(C).
Contract derive(Contract c, const Property& p);

/// Left fold of derive over the path; derive(c, ε) = c.
Contract derive(Contract c, const AccessPath& path);

/// L(∂_P C) ≠ ∅, decided by the emp predicate (containment module).
bool is_readable(Contract c, const AccessPath& path);

/// ν(∂_P C).
bool is_writeable(Contract c, const AccessPath& path);

/// Test oracle for L(C): structural recursion on the language equations,
/// restricted to paths over alphabet ∪ {ι} of length ≤ max_len. Independent
/// of the derivative machinery. Throws LanguageOverflowError beyond cap.
std::set<AccessPath> enumerate_language(Contract c,
                                        const std::vector<Property>& alphabet,
                                        size_t max_len, size_t cap = 2000000);

}  // namespace apc
