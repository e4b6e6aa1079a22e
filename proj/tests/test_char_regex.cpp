#include "apc/char_regex.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"

using namespace apc;

namespace {

// Independent oracle: naive backtracking matcher over a tiny regex AST,
// built from the same source syntax but evaluated by brute force.
struct NaiveRegex {
  enum class K { Char, Any, Class, Seq, Alt, Star, Eps };
  K k = K::Eps;
  char c = 0;
  std::string cls;
  bool neg = false;
  std::vector<NaiveRegex> kids;
};

bool naive_match_at(const NaiveRegex& r, const std::string& s, size_t pos,
                    const std::function<bool(size_t)>& k);

struct NaiveParser {
  std::string_view s;
  size_t i = 0;
  bool anchor_start = false, anchor_end = false;

  NaiveRegex parse() {
    if (i < s.size() && s[i] == '^') {
      anchor_start = true;
      ++i;
    }
    if (!s.empty() && s.back() == '$') {
      anchor_end = true;
      s.remove_suffix(1);
    }
    return alt();
  }
  NaiveRegex alt() {
    NaiveRegex out;
    out.k = NaiveRegex::K::Alt;
    out.kids.push_back(seq());
    while (i < s.size() && s[i] == '|') {
      ++i;
      out.kids.push_back(seq());
    }
    return out.kids.size() == 1 ? out.kids[0] : out;
  }
  NaiveRegex seq() {
    NaiveRegex out;
    out.k = NaiveRegex::K::Seq;
    while (i < s.size() && s[i] != '|' && s[i] != ')')
      out.kids.push_back(post());
    return out;
  }
  NaiveRegex post() {
    NaiveRegex a = atom();
    while (i < s.size() && (s[i] == '*' || s[i] == '+' || s[i] == '?')) {
      char op = s[i++];
      NaiveRegex r;
      if (op == '*') {
        r.k = NaiveRegex::K::Star;
        r.kids.push_back(a);
      } else if (op == '+') {
        r.k = NaiveRegex::K::Seq;
        NaiveRegex st;
        st.k = NaiveRegex::K::Star;
        st.kids.push_back(a);
        r.kids.push_back(a);
        r.kids.push_back(st);
      } else {
        r.k = NaiveRegex::K::Alt;
        r.kids.push_back(a);
        r.kids.push_back(NaiveRegex{});  // ε branch
      }
      a = r;
    }
    return a;
  }
  NaiveRegex atom() {
    char c = s[i];
    if (c == '(') {
      ++i;
      NaiveRegex r = alt();
      ++i;  // ')'
      return r;
    }
    if (c == '[') {
      NaiveRegex r;
      r.k = NaiveRegex::K::Class;
      ++i;
      if (s[i] == '^') {
        r.neg = true;
        ++i;
      }
      while (s[i] != ']') {
        if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] != ']') {
          for (char d = s[i]; d <= s[i + 2]; ++d) r.cls += d;
          i += 3;
        } else {
          r.cls += s[i++];
        }
      }
      ++i;
      return r;
    }
    if (c == '.') {
      ++i;
      NaiveRegex r;
      r.k = NaiveRegex::K::Any;
      return r;
    }
    ++i;
    NaiveRegex r;
    r.k = NaiveRegex::K::Char;
    r.c = c;
    return r;
  }
};

bool naive_match_at(const NaiveRegex& r, const std::string& s, size_t pos,
                    const std::function<bool(size_t)>& k) {
  switch (r.k) {
    case NaiveRegex::K::Eps:
      return k(pos);
    case NaiveRegex::K::Char:
      return pos < s.size() && s[pos] == r.c && k(pos + 1);
    case NaiveRegex::K::Any:
      return pos < s.size() && k(pos + 1);
    case NaiveRegex::K::Class: {
      if (pos >= s.size()) return false;
      bool in = r.cls.find(s[pos]) != std::string::npos;
      return in != r.neg && k(pos + 1);
    }
    case NaiveRegex::K::Seq: {
      std::function<bool(size_t)> cont = k;
      for (size_t idx = r.kids.size(); idx-- > 0;) {
        const NaiveRegex* kid = &r.kids[idx];
        std::function<bool(size_t)> next = cont;
        cont = [kid, next, &s](size_t p) {
          return naive_match_at(*kid, s, p, next);
        };
      }
      return cont(pos);
    }
    case NaiveRegex::K::Alt: {
      for (const auto& kid : r.kids)
        if (naive_match_at(kid, s, pos, k)) return true;
      return false;
    }
    case NaiveRegex::K::Star: {
      if (k(pos)) return true;
      std::function<bool(size_t, size_t)> go = [&](size_t p, size_t fuel) {
        if (fuel == 0) return false;
        return naive_match_at(r.kids[0], s, p, [&](size_t q) {
          if (q == p) return false;  // no progress
          return k(q) || go(q, fuel - 1);
        });
      };
      return go(pos, s.size() + 1);
    }
  }
  return false;
}

// Substring semantics: unanchored ends may skip arbitrary prefix/suffix.
bool naive_match(std::string_view body, const std::string& s) {
  NaiveParser p{body};
  NaiveRegex r = p.parse();
  size_t from_hi = p.anchor_start ? 0 : s.size();
  for (size_t from = 0; from <= from_hi; ++from) {
    bool ok = naive_match_at(r, s, from, [&](size_t end) {
      return p.anchor_end ? end == s.size() : true;
    });
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("paper examples for the match predicate") {
  CharRegex get = CharRegex::parse("^get.+");
  CHECK(get.matches("getName"));
  CHECK_FALSE(get.matches("next"));
  CHECK_FALSE(get.matches("get"));  // .+ needs at least one more character
  CHECK(CharRegex::exact("a").matches("a"));
  CHECK_FALSE(CharRegex::exact("a").matches("ab"));
}

TEST_CASE("substring semantics and anchors") {
  CHECK(CharRegex::parse("get").matches("widget"));  // unanchored both sides
  CHECK_FALSE(CharRegex::parse("^get").matches("widget"));
  CHECK(CharRegex::parse("^a").matches("aba"));
  CHECK(CharRegex::parse("a$").matches("aba"));
  CHECK_FALSE(CharRegex::parse("a$").matches("ab"));
  CHECK(CharRegex::parse("^[ab]$").matches("a"));
  CHECK_FALSE(CharRegex::parse("^[ab]$").matches("c"));
  CHECK(CharRegex::parse("^$").matches(""));
  CHECK_FALSE(CharRegex::parse("^$").matches("x"));
}

TEST_CASE("intersection behaves as conjunction of matches") {
  CharRegex a = CharRegex::parse("^a");
  CharRegex b = CharRegex::parse("a$");
  CharRegex both = CharRegex::intersect(a, b);
  CHECK(both.matches("aba"));
  CHECK_FALSE(both.matches("ab"));
  CHECK(both.matches("a"));
}

TEST_CASE("emptiness and universality") {
  CHECK(CharRegex::never().empty_language());
  CHECK(CharRegex::intersect(CharRegex::parse("^a$"), CharRegex::parse("^b$"))
            .empty_language());
  CHECK_FALSE(CharRegex::parse("^a$").empty_language());
  CHECK(CharRegex::parse("").universal_language());  // unanchored empty body
  CHECK_FALSE(CharRegex::parse("^a").universal_language());
  CHECK(CharRegex::complement(CharRegex::never()).universal_language());
  CHECK(CharRegex::parse("^[]$").empty_language());
}

TEST_CASE("containment on byte languages") {
  CHECK(CharRegex::exact("a").contains(CharRegex::parse("^[ab]$")));
  CHECK_FALSE(CharRegex::parse("^[ab]$").contains(CharRegex::exact("a")));
  CHECK(CharRegex::exact("a").contains(CharRegex::exact("a")));
  CHECK(CharRegex::parse("^ab*$").contains(CharRegex::parse("^a.*$")));
  CHECK_FALSE(CharRegex::parse("^a.*$").contains(CharRegex::parse("^ab*$")));
  CHECK(CharRegex::parse("^a*$").contains(CharRegex::parse("^a*b*$")));
}

TEST_CASE("derivative matcher agrees with the backtracking oracle") {
  const std::vector<std::string> bodies = {
      "^get.+", "get",      "^a",     "a$",   "^[ab]*$", "^(a|b)+$",
      "^a.c$",  "^[^ab]$",  "a|b|ge", "^.?$", "^(ab)*$", "^a+b?$",
      "next",   "^[a-e]+$", "^e$",
  };
  const std::string alphabet = "abget";
  std::mt19937_64 rng(20130901);
  std::vector<std::string> samples = {""};
  for (int len = 1; len <= 4; ++len)
    for (int k = 0; k < 60; ++k) {
      std::string s;
      for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
      samples.push_back(s);
    }
  for (const auto& body : bodies) {
    CharRegex r = CharRegex::parse(body);
    for (const auto& s : samples) {
      CAPTURE(body);
      CAPTURE(s);
      CHECK(r.matches(s) == naive_match(body, s));
    }
  }
}

TEST_CASE("containment soundness by sampling") {
  const std::vector<std::string> bodies = {
      "^a", "a$", "^[ab]+$", "^a[ab]*$", "^(a|b)*$", "ge", "^get.+", "^.*$"};
  const std::string alphabet = "abget";
  std::mt19937_64 rng(42);
  std::vector<std::string> samples;
  for (int k = 0; k < 10000; ++k) {
    std::string s;
    size_t len = rng() % 5;
    for (size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    samples.push_back(std::move(s));
  }
  for (const auto& ba : bodies)
    for (const auto& bb : bodies) {
      CharRegex a = CharRegex::parse(ba), b = CharRegex::parse(bb);
      if (!a.contains(b)) continue;
      for (const auto& s : samples) {
        CAPTURE(ba);
        CAPTURE(bb);
        REQUIRE(!(a.matches(s) && !b.matches(s)));
      }
    }
}
