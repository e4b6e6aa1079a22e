#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apc {

struct RegexParseError : std::runtime_error {
  RegexParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg), position(pos) {}
  size_t position;
};

/// Byte-level regular expression closed under intersection and complement,
/// hash-consed into a process-wide pool. Matching, containment and
/// emptiness all run on Brzozowski derivatives over byte equivalence
/// classes; the exploration budget makes containment and the language
/// predicates conservative (a false answer proves nothing).
///
/// Values are immutable ids into the pool; the pool serializes all access
/// with a mutex, so CharRegex may be used from several threads.
class CharRegex {
public:
  /// Parses the slash-delimited body syntax used inside contract literals:
  /// literals, '.', classes, negated classes, '|', '(...)', postfix '*+?',
  /// and '^'/'$' at the ends. Unanchored sides match under substring
  /// semantics (as if padded with an implicit ".*").
  static CharRegex parse(std::string_view body);

  /// Regex matching exactly the given word (anchored on both sides).
  static CharRegex exact(std::string_view word);

  /// Regex with the empty language.
  static CharRegex never();

  static CharRegex intersect(CharRegex a, CharRegex b);
  static CharRegex complement(CharRegex a);

  bool matches(std::string_view text) const;

  /// True implies L(*this) is a subset of L(other).
  bool contains(CharRegex other) const;

  /// True implies the language is empty.
  bool empty_language() const;

  /// True implies the language is all byte strings.
  bool universal_language() const;

  uint32_t id() const { return id_; }

  /// Rebuilds a handle from a pool id previously obtained via id().
  static CharRegex from_id(uint32_t id) { return CharRegex(id); }

  friend bool operator==(CharRegex a, CharRegex b) { return a.id_ == b.id_; }

private:
  explicit CharRegex(uint32_t id) : id_(id) {}
  uint32_t id_;
};

}  // namespace apc
