#include "apc/char_regex.hpp"

#include <algorithm>
#include <bitset>
#include <cassert>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace apc {
namespace {

using Id = uint32_t;
using ByteSet = std::bitset<256>;

enum class Kind : uint8_t { Never, Eps, Class, Seq, Alt, Star, And, Not };

struct Node {
  Kind kind;
  ByteSet bytes;             // Class only
  std::vector<Id> kids;      // Seq: [head, tail]; Alt/And: sorted; Star/Not: [kid]
  bool nullable;
};

// Exploration budget shared by containment and the language predicates.
constexpr size_t kStateBudget = 10000;

class Pool {
public:
  static Pool& get() {
    static Pool p;
    return p;
  }

  Id never_id, eps_id, any_id, universal_id;

  Id cls(const ByteSet& s) {
    if (s.none()) return never_id;
    Node n;
    n.kind = Kind::Class;
    n.bytes = s;
    n.nullable = false;
    return intern(std::move(n));
  }

  Id seq(Id a, Id b) {
    if (a == never_id || b == never_id) return never_id;
    if (a == eps_id) return b;
    if (b == eps_id) return a;
    if (node(a).kind == Kind::Seq) {
      Id al = node(a).kids[0], ar = node(a).kids[1];
      return seq(al, seq(ar, b));
    }
    Node n;
    n.kind = Kind::Seq;
    n.kids = {a, b};
    n.nullable = node(a).nullable && node(b).nullable;
    return intern(std::move(n));
  }

  Id alt(std::vector<Id> xs) {
    std::vector<Id> flat;
    ByteSet merged;
    bool have_class = false;
    auto push = [&](auto&& self, Id x) -> void {
      const Node& nx = node(x);
      if (nx.kind == Kind::Never) return;
      if (nx.kind == Kind::Alt) {
        for (Id k : nx.kids) self(self, k);
        return;
      }
      if (nx.kind == Kind::Class) {
        merged |= nx.bytes;
        have_class = true;
        return;
      }
      flat.push_back(x);
    };
    for (Id x : xs) push(push, x);
    if (have_class) flat.push_back(cls(merged));
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return never_id;
    if (flat.size() == 1) return flat[0];
    Node n;
    n.kind = Kind::Alt;
    n.kids = std::move(flat);
    n.nullable = false;
    for (Id k : n.kids) n.nullable = n.nullable || node(k).nullable;
    return intern(std::move(n));
  }

  Id star(Id a) {
    const Node& na = node(a);
    if (na.kind == Kind::Star) return a;
    if (a == eps_id || a == never_id) return eps_id;
    Node n;
    n.kind = Kind::Star;
    n.kids = {a};
    n.nullable = true;
    return intern(std::move(n));
  }

  Id and_(std::vector<Id> xs) {
    std::vector<Id> flat;
    ByteSet merged;
    merged.set();
    bool have_class = false, have_eps = false;
    auto push = [&](auto&& self, Id x) -> void {
      const Node& nx = node(x);
      if (nx.kind == Kind::And) {
        for (Id k : nx.kids) self(self, k);
        return;
      }
      if (nx.kind == Kind::Class) {
        merged &= nx.bytes;
        have_class = true;
        return;
      }
      if (x == eps_id) {
        have_eps = true;
        return;
      }
      if (x == universal_id) return;  // identity of intersection
      flat.push_back(x);
    };
    for (Id x : xs) push(push, x);
    if (have_eps) {
      // L(ε & X) is {""} when X is nullable and empty otherwise.
      if (have_class) return never_id;
      for (Id k : flat)
        if (!node(k).nullable) return never_id;
      return eps_id;
    }
    if (have_class) {
      Id c = cls(merged);
      if (c == never_id) return never_id;
      flat.push_back(c);
    }
    for (Id k : flat)
      if (k == never_id) return never_id;
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return universal_id;
    if (flat.size() == 1) return flat[0];
    Node n;
    n.kind = Kind::And;
    n.kids = std::move(flat);
    n.nullable = true;
    for (Id k : n.kids) n.nullable = n.nullable && node(k).nullable;
    return intern(std::move(n));
  }

  Id not_(Id a) {
    const Node& na = node(a);
    if (na.kind == Kind::Not) return na.kids[0];
    if (a == never_id) return universal_id;
    if (a == universal_id) return never_id;
    Node n;
    n.kind = Kind::Not;
    n.kids = {a};
    n.nullable = !na.nullable;
    return intern(std::move(n));
  }

  const Node& node(Id i) const { return nodes_[i]; }

  Id deriv(Id r, uint8_t b) {
    uint64_t key = (uint64_t(r) << 8) | b;
    if (auto it = deriv_memo_.find(key); it != deriv_memo_.end())
      return it->second;
    const Node n = node(r);
    Id d = never_id;
    switch (n.kind) {
      case Kind::Never:
      case Kind::Eps:
        d = never_id;
        break;
      case Kind::Class:
        d = n.bytes.test(b) ? eps_id : never_id;
        break;
      case Kind::Seq: {
        Id head = n.kids[0], tail = n.kids[1];
        Id left = seq(deriv(head, b), tail);
        d = node(head).nullable ? alt({left, deriv(tail, b)}) : left;
        break;
      }
      case Kind::Alt: {
        std::vector<Id> ds;
        for (Id k : n.kids) ds.push_back(deriv(k, b));
        d = alt(std::move(ds));
        break;
      }
      case Kind::Star:
        d = seq(deriv(n.kids[0], b), r);
        break;
      case Kind::And: {
        std::vector<Id> ds;
        for (Id k : n.kids) ds.push_back(deriv(k, b));
        d = and_(std::move(ds));
        break;
      }
      case Kind::Not:
        d = not_(deriv(n.kids[0], b));
        break;
    }
    deriv_memo_.emplace(key, d);
    return d;
  }

  // Approximate derivative classes: bytes within one class all lead to the
  // same derivative of r.
  std::vector<ByteSet> classes(Id r) {
    const Node& n = node(r);
    switch (n.kind) {
      case Kind::Never:
      case Kind::Eps: {
        ByteSet all;
        all.set();
        return {all};
      }
      case Kind::Class: {
        std::vector<ByteSet> out;
        if (n.bytes.any()) out.push_back(n.bytes);
        ByteSet rest = ~n.bytes;
        if (rest.any()) out.push_back(rest);
        return out;
      }
      case Kind::Seq: {
        auto a = classes(n.kids[0]);
        if (!node(n.kids[0]).nullable) return a;
        return refine(a, classes(n.kids[1]));
      }
      case Kind::Alt:
      case Kind::And: {
        auto acc = classes(n.kids[0]);
        for (size_t i = 1; i < n.kids.size(); ++i)
          acc = refine(acc, classes(n.kids[i]));
        return acc;
      }
      case Kind::Star:
      case Kind::Not:
        return classes(n.kids[0]);
    }
    return {};
  }

  static std::vector<ByteSet> refine(const std::vector<ByteSet>& a,
                                     const std::vector<ByteSet>& b) {
    std::vector<ByteSet> out;
    for (const auto& x : a)
      for (const auto& y : b) {
        ByteSet z = x & y;
        if (z.any()) out.push_back(z);
      }
    return out;
  }

  std::mutex mutex;

private:
  Pool() {
    Node never;
    never.kind = Kind::Never;
    never.nullable = false;
    never_id = intern(std::move(never));
    Node eps;
    eps.kind = Kind::Eps;
    eps.nullable = true;
    eps_id = intern(std::move(eps));
    ByteSet all;
    all.set();
    any_id = cls(all);
    universal_id = star(any_id);
  }

  Id intern(Node n) {
    std::string key;
    key.reserve(16 + n.kids.size() * 4);
    key.push_back(char(n.kind));
    if (n.kind == Kind::Class) {
      for (size_t w = 0; w < 256; w += 64) {
        uint64_t chunk = 0;
        for (size_t i = 0; i < 64; ++i)
          if (n.bytes.test(w + i)) chunk |= uint64_t(1) << i;
        key.append(reinterpret_cast<const char*>(&chunk), 8);
      }
    }
    for (Id k : n.kids) key.append(reinterpret_cast<const char*>(&k), 4);
    if (auto it = intern_.find(key); it != intern_.end()) return it->second;
    Id id = Id(nodes_.size());
    nodes_.push_back(std::move(n));
    intern_.emplace(std::move(key), id);
    return id;
  }

  std::deque<Node> nodes_;
  std::unordered_map<std::string, Id> intern_;
  std::unordered_map<uint64_t, Id> deriv_memo_;
};

// ---------------------------------------------------------------------------
// Parser for the slash-body subset.

class Parser {
public:
  Parser(std::string_view src, Pool& pool) : src_(src), pool_(pool) {}

  Id parse() {
    bool anchor_start = eat('^');
    bool anchor_end = false;
    if (!src_.empty() && src_.back() == '$' && !escaped_tail()) {
      anchor_end = true;
      src_.remove_suffix(1);
    }
    Id body = pos_ == src_.size() ? pool_.eps_id : alternation();
    if (pos_ != src_.size()) fail("unexpected character");
    Id r = body;
    if (!anchor_start) r = pool_.seq(pool_.universal_id, r);
    if (!anchor_end) r = pool_.seq(r, pool_.universal_id);
    return r;
  }

private:
  Id alternation() {
    std::vector<Id> branches{sequence()};
    while (eat('|')) branches.push_back(sequence());
    return pool_.alt(std::move(branches));
  }

  Id sequence() {
    Id acc = pool_.eps_id;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '|' || c == ')') break;
      acc = pool_.seq(acc, repeatable());
    }
    return acc;
  }

  Id repeatable() {
    Id a = atom();
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '*') {
        a = pool_.star(a);
        ++pos_;
      } else if (c == '+') {
        a = pool_.seq(a, pool_.star(a));
        ++pos_;
      } else if (c == '?') {
        a = pool_.alt({a, pool_.eps_id});
        ++pos_;
      } else {
        break;
      }
    }
    return a;
  }

  Id atom() {
    if (pos_ >= src_.size()) fail("expected an atom");
    char c = src_[pos_];
    switch (c) {
      case '(': {
        ++pos_;
        Id inner = alternation();
        if (!eat(')')) fail("unbalanced '('");
        return inner;
      }
      case '[':
        return char_class();
      case '.':
        ++pos_;
        return pool_.any_id;
      case '\\':
        return escape();
      case '^':
      case '$':
        fail("anchors are only supported at the ends");
      case '*':
      case '+':
      case '?':
        fail("nothing to repeat");
      default:
        ++pos_;
        return single(uint8_t(c));
    }
  }

  Id char_class() {
    ++pos_;  // consume '['
    bool negate = eat('^');
    ByteSet set;
    while (true) {
      if (pos_ >= src_.size()) fail("unterminated character class");
      if (src_[pos_] == ']') break;  // also covers the empty class "[]"
      ByteSet lo = class_item();
      if (pos_ + 1 < src_.size() && src_[pos_] == '-' &&
          src_[pos_ + 1] != ']') {
        ++pos_;  // '-'
        ByteSet hi = class_item();
        if (lo.count() != 1 || hi.count() != 1) fail("bad range bound");
        int lob = first_bit(lo), hib = first_bit(hi);
        if (lob > hib) fail("inverted range");
        for (int b = lob; b <= hib; ++b) set.set(b);
      } else {
        set |= lo;
      }
    }
    ++pos_;  // ']'
    if (negate) set.flip();
    return pool_.cls(set);
  }

  ByteSet class_item() {
    if (src_[pos_] == '\\') return escape_set();
    ByteSet s;
    s.set(uint8_t(src_[pos_++]));
    return s;
  }

  static int first_bit(const ByteSet& s) {
    for (int b = 0; b < 256; ++b)
      if (s.test(b)) return b;
    return -1;
  }

  // Whether the trailing '$' is escaped (odd run of backslashes before it).
  bool escaped_tail() const {
    size_t n = 0, i = src_.size() - 1;
    while (i > pos_ && src_[i - 1] == '\\') {
      ++n;
      --i;
    }
    return n % 2 == 1;
  }

  Id escape() { return pool_.cls(escape_set()); }

  ByteSet escape_set() {
    ++pos_;  // consume '\'
    if (pos_ >= src_.size()) fail("dangling escape");
    char c = src_[pos_++];
    ByteSet s;
    auto digits = [&] {
      for (char d = '0'; d <= '9'; ++d) s.set(uint8_t(d));
    };
    auto word = [&] {
      digits();
      for (char d = 'a'; d <= 'z'; ++d) s.set(uint8_t(d));
      for (char d = 'A'; d <= 'Z'; ++d) s.set(uint8_t(d));
      s.set(uint8_t('_'));
    };
    auto space = [&] {
      for (char d : {' ', '\t', '\n', '\r', '\f', '\v'}) s.set(uint8_t(d));
    };
    switch (c) {
      case 'd': digits(); return s;
      case 'D': digits(); s.flip(); return s;
      case 'w': word(); return s;
      case 'W': word(); s.flip(); return s;
      case 's': space(); return s;
      case 'S': space(); s.flip(); return s;
      case 'n': s.set(uint8_t('\n')); return s;
      case 't': s.set(uint8_t('\t')); return s;
      case 'r': s.set(uint8_t('\r')); return s;
      default:
        s.set(uint8_t(c));  // escaped metacharacter or '/'
        return s;
    }
  }

  Id single(uint8_t b) {
    ByteSet s;
    s.set(b);
    return pool_.cls(s);
  }

  bool eat(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw RegexParseError(msg, pos_);
  }

  std::string_view src_;
  Pool& pool_;
  size_t pos_ = 0;
};

bool explore_nonempty(Pool& pool, Id start, bool* complete) {
  std::unordered_set<Id> visited;
  std::vector<Id> work{start};
  *complete = true;
  while (!work.empty()) {
    Id s = work.back();
    work.pop_back();
    if (!visited.insert(s).second) continue;
    if (visited.size() > kStateBudget) {
      *complete = false;
      return true;  // give up: assume nonempty
    }
    if (pool.node(s).nullable) return true;
    for (const auto& c : pool.classes(s)) {
      int rep = -1;
      for (int b = 0; b < 256; ++b)
        if (c.test(b)) {
          rep = b;
          break;
        }
      if (rep >= 0) work.push_back(pool.deriv(s, uint8_t(rep)));
    }
  }
  return false;
}

}  // namespace

CharRegex CharRegex::parse(std::string_view body) {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  return CharRegex(Parser(body, pool).parse());
}

CharRegex CharRegex::exact(std::string_view word) {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  Id acc = pool.eps_id;
  for (char c : word) {
    ByteSet s;
    s.set(uint8_t(c));
    acc = pool.seq(acc, pool.cls(s));
  }
  return CharRegex(acc);
}

CharRegex CharRegex::never() {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  return CharRegex(pool.never_id);
}

CharRegex CharRegex::intersect(CharRegex a, CharRegex b) {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  return CharRegex(pool.and_({a.id(), b.id()}));
}

CharRegex CharRegex::complement(CharRegex a) {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  return CharRegex(pool.not_(a.id()));
}

bool CharRegex::matches(std::string_view text) const {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  Id s = id_;
  for (char c : text) {
    s = pool.deriv(s, uint8_t(c));
    if (s == pool.never_id) return false;
  }
  return pool.node(s).nullable;
}

bool CharRegex::contains(CharRegex other) const {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  // Emptiness of L(this) \ L(other) by product-state exploration.
  std::unordered_set<uint64_t> visited;
  std::vector<std::pair<Id, Id>> work{{id_, other.id_}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!visited.insert((uint64_t(x) << 32) | y).second) continue;
    if (visited.size() > kStateBudget) return false;  // conservative
    if (pool.node(x).nullable && !pool.node(y).nullable) return false;
    if (x == pool.never_id) continue;
    auto cs = Pool::refine(pool.classes(x), pool.classes(y));
    for (const auto& c : cs) {
      int rep = -1;
      for (int b = 0; b < 256; ++b)
        if (c.test(b)) {
          rep = b;
          break;
        }
      if (rep >= 0)
        work.emplace_back(pool.deriv(x, uint8_t(rep)),
                          pool.deriv(y, uint8_t(rep)));
    }
  }
  return true;
}

bool CharRegex::empty_language() const {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  bool complete = false;
  return !explore_nonempty(pool, id_, &complete);
}

bool CharRegex::universal_language() const {
  Pool& pool = Pool::get();
  std::lock_guard lock(pool.mutex);
  bool complete = false;
  // Universal iff the complement is empty.
  return !explore_nonempty(pool, pool.not_(id_), &complete);
}

}  // namespace apc
