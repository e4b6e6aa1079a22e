#include "apc/contract.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace apc {
namespace {

struct LitNode {
  LiteralKind kind;
  uint32_t regex_id;  // Regex/NegRegex
  std::string display;
};

struct CNode {
  ContractKind kind;
  uint32_t lit = 0;
  uint32_t l = 0, r = 0;
  uint32_t size = 1;
  bool nullable = false;
};

struct PropKey {
  uint32_t contract;
  bool blank;
  std::string name;
  bool operator==(const PropKey&) const = default;
};

struct PropKeyHash {
  size_t operator()(const PropKey& k) const noexcept {
    size_t h = std::hash<std::string>()(k.name);
    return h * 31 + k.contract * 2 + (k.blank ? 1 : 0);
  }
};

}  // namespace

class ContractPool {
public:
  static ContractPool& get() {
    static ContractPool p;
    return p;
  }

  std::recursive_mutex mutex;

  // --- literals ---

  uint32_t lit_blank, lit_universe;

  uint32_t intern_lit(LiteralKind kind, uint32_t regex_id, std::string display) {
    std::string key;
    key.push_back(char(kind));
    key.append(reinterpret_cast<const char*>(&regex_id), 4);
    key += display;
    if (auto it = lit_intern_.find(key); it != lit_intern_.end())
      return it->second;
    uint32_t id = uint32_t(lits_.size());
    lits_.push_back(LitNode{kind, regex_id, std::move(display)});
    lit_intern_.emplace(std::move(key), id);
    return id;
  }

  const LitNode& lit(uint32_t id) const { return lits_[id]; }

  // --- contracts ---

  uint32_t c_empty, c_eps;

  const CNode& node(uint32_t id) const { return nodes_[id]; }

  uint32_t mk_lit(uint32_t lit_id) {
    CNode n;
    n.kind = ContractKind::Lit;
    n.lit = lit_id;
    return intern(n);
  }

  uint32_t mk_star(uint32_t c) {
    if (c == c_eps) return c_eps;  // ε* ⇒ ε
    CNode n;
    n.kind = ContractKind::Star;
    n.l = c;
    n.size = 1 + node(c).size;
    n.nullable = true;
    return intern(n);
  }

  uint32_t mk_concat(uint32_t a, uint32_t b) {
    if (a == c_eps) return b;                       // ε.C ⇒ C
    if (is_blank_lit(a)) return a;                  // @.C ⇒ @
    if (a == c_empty) return c_empty;               // ∅.C ⇒ ∅
    if (node(a).kind == ContractKind::Concat) {     // canonically right-nested
      uint32_t al = node(a).l, ar = node(a).r;
      return mk_concat(al, mk_concat(ar, b));
    }
    CNode n;
    n.kind = ContractKind::Concat;
    n.l = a;
    n.r = b;
    n.size = 1 + node(a).size + node(b).size;
    n.nullable = node(a).nullable && node(b).nullable;
    return intern(n);
  }

  uint32_t mk_or(uint32_t a, uint32_t b) {
    std::vector<uint32_t> ops;
    flatten(ContractKind::Or, a, ops);
    flatten(ContractKind::Or, b, ops);
    dedupe(ops);  // C+C ⇒ C (modulo commutativity)
    std::erase(ops, c_empty);  // ∅+C ⇒ C
    if (ops.size() > 1)        // @+C ⇒ C
      std::erase_if(ops, [&](uint32_t x) { return is_blank_lit(x); });
    if (ops.empty()) return c_empty;
    return rebuild(ContractKind::Or, ops);
  }

  uint32_t mk_and(uint32_t a, uint32_t b) {
    std::vector<uint32_t> ops;
    flatten(ContractKind::And, a, ops);
    flatten(ContractKind::And, b, ops);
    dedupe(ops);  // C&C ⇒ C
    for (uint32_t x : ops)
      if (x == c_empty) return c_empty;  // ∅&C ⇒ ∅ (wins over @&C)
    for (uint32_t x : ops)
      if (is_blank_lit(x)) return x;  // @&C ⇒ @
    return rebuild(ContractKind::And, ops);
  }

  bool is_blank_lit(uint32_t c) const {
    const CNode& n = node(c);
    return n.kind == ContractKind::Lit && n.lit == lit_blank;
  }

  Contract wrap(uint32_t id) const { return Contract(id); }
  Literal wrap_lit(uint32_t id) const { return Literal(id); }

  // --- derivative memo ---
  std::unordered_map<PropKey, uint32_t, PropKeyHash> deriv_memo;

private:
  ContractPool() {
    lit_blank = intern_lit(LiteralKind::Blank, 0, "@");
    lit_universe = intern_lit(LiteralKind::Universe, 0, "?");
    CNode e;
    e.kind = ContractKind::EmptySet;
    c_empty = intern(e);
    CNode eps;
    eps.kind = ContractKind::Epsilon;
    eps.nullable = true;
    c_eps = intern(eps);
  }

  void flatten(ContractKind k, uint32_t c, std::vector<uint32_t>& out) {
    const CNode& n = node(c);
    if (n.kind == k) {
      flatten(k, n.l, out);
      flatten(k, n.r, out);
    } else {
      out.push_back(c);
    }
  }

  static void dedupe(std::vector<uint32_t>& ops) {
    std::vector<uint32_t> seen;
    std::erase_if(ops, [&](uint32_t x) {
      if (std::find(seen.begin(), seen.end(), x) != seen.end()) return true;
      seen.push_back(x);
      return false;
    });
  }

  uint32_t rebuild(ContractKind k, const std::vector<uint32_t>& ops) {
    assert(!ops.empty());
    uint32_t acc = ops[0];
    for (size_t i = 1; i < ops.size(); ++i) {
      CNode n;
      n.kind = k;
      n.l = acc;
      n.r = ops[i];
      n.size = 1 + node(acc).size + node(ops[i]).size;
      n.nullable = k == ContractKind::Or
                       ? node(acc).nullable || node(ops[i]).nullable
                       : node(acc).nullable && node(ops[i]).nullable;
      acc = intern(n);
    }
    return acc;
  }

  uint32_t intern(const CNode& n) {
    auto [it, inserted] = intern_.try_emplace(key_string(n), 0);
    if (!inserted) return it->second;
    uint32_t id = uint32_t(nodes_.size());
    nodes_.push_back(n);
    it->second = id;
    return id;
  }

  static std::string key_string(const CNode& n) {
    std::string key;
    key.push_back(char(n.kind));
    key.append(reinterpret_cast<const char*>(&n.lit), 4);
    key.append(reinterpret_cast<const char*>(&n.l), 4);
    key.append(reinterpret_cast<const char*>(&n.r), 4);
    return key;
  }

  std::deque<LitNode> lits_;
  std::unordered_map<std::string, uint32_t> lit_intern_;
  std::deque<CNode> nodes_;
  std::unordered_map<std::string, uint32_t> intern_;
};

namespace {
using Guard = std::lock_guard<std::recursive_mutex>;
}

// ---------------------------------------------------------------------------
// Literal

Literal Literal::blank() {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Literal(p.lit_blank);
}

Literal Literal::universe() {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Literal(p.lit_universe);
}

Literal Literal::regex(CharRegex matcher, std::string display) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Literal(p.intern_lit(LiteralKind::Regex, matcher.id(), std::move(display)));
}

Literal Literal::neg_regex(CharRegex matcher, std::string display) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Literal(
      p.intern_lit(LiteralKind::NegRegex, matcher.id(), std::move(display)));
}

Literal Literal::exact(std::string_view name) {
  return regex(CharRegex::exact(name), std::string(name));
}

LiteralKind Literal::kind() const {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return p.lit(id_).kind;
}

CharRegex Literal::matcher() const {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  const LitNode& n = p.lit(id_);
  assert(n.kind == LiteralKind::Regex || n.kind == LiteralKind::NegRegex);
  return CharRegex::from_id(n.regex_id);
}

std::string Literal::display() const {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return p.lit(id_).display;
}

bool Literal::matches(const Property& prop) const {
  auto& p = ContractPool::get();
  p.mutex.lock();
  LitNode n = p.lit(id_);
  p.mutex.unlock();
  switch (n.kind) {
    case LiteralKind::Blank:
      return prop.is_blank();
    case LiteralKind::Universe:
      return !prop.is_blank();
    case LiteralKind::Regex:
      return !prop.is_blank() && CharRegex::from_id(n.regex_id).matches(prop.text());
    case LiteralKind::NegRegex:
      return !prop.is_blank() &&
             !CharRegex::from_id(n.regex_id).matches(prop.text());
  }
  return false;
}

bool Literal::empty_language() const {
  auto& p = ContractPool::get();
  p.mutex.lock();
  LitNode n = p.lit(id_);
  p.mutex.unlock();
  switch (n.kind) {
    case LiteralKind::Blank:
    case LiteralKind::Universe:
      return false;
    case LiteralKind::Regex:
      return CharRegex::from_id(n.regex_id).empty_language();
    case LiteralKind::NegRegex:
      return CharRegex::from_id(n.regex_id).universal_language();
  }
  return false;
}

namespace {
// Byte-string matcher of a non-blank literal (NegRegex via complement).
CharRegex byte_matcher(const LitNode& n) {
  switch (n.kind) {
    case LiteralKind::Universe:
      return CharRegex::complement(CharRegex::never());
    case LiteralKind::Regex:
      return CharRegex::from_id(n.regex_id);
    case LiteralKind::NegRegex:
      return CharRegex::complement(CharRegex::from_id(n.regex_id));
    case LiteralKind::Blank:
      break;
  }
  return CharRegex::never();
}
}  // namespace

Literal intersect(Literal a, Literal b) {
  if (a == b) return a;
  auto& p = ContractPool::get();
  p.mutex.lock();
  LitNode na = p.lit(a.id());
  LitNode nb = p.lit(b.id());
  p.mutex.unlock();
  if (na.kind == LiteralKind::Universe) return b;
  if (nb.kind == LiteralKind::Universe) return a;
  if (na.kind == LiteralKind::Blank || nb.kind == LiteralKind::Blank)
    return Literal::regex(CharRegex::never(), "/[]/");  // @ ⊓ non-@ = ∅
  CharRegex m = CharRegex::intersect(byte_matcher(na), byte_matcher(nb));
  return Literal::regex(m, na.display + "\xE2\x8A\x93" + nb.display);
}

bool literal_subset(Literal a, Literal b) {
  if (a == b) return true;
  auto& p = ContractPool::get();
  p.mutex.lock();
  LitNode na = p.lit(a.id());
  LitNode nb = p.lit(b.id());
  p.mutex.unlock();
  if (na.kind == LiteralKind::Blank) return false;  // ι only in L(@)
  if (nb.kind == LiteralKind::Blank) return a.empty_language();
  return byte_matcher(na).contains(byte_matcher(nb));
}

bool literal_contains(Literal c, CharRegex r) {
  auto& p = ContractPool::get();
  p.mutex.lock();
  LitNode nc = p.lit(c.id());
  p.mutex.unlock();
  if (nc.kind == LiteralKind::Blank) return false;
  return byte_matcher(nc).contains(r);
}

// ---------------------------------------------------------------------------
// Contract constructors and accessors

Contract Contract::empty_set() {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.c_empty);
}

Contract Contract::epsilon() {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.c_eps);
}

Contract Contract::lit(Literal l) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.mk_lit(l.id()));
}

Contract Contract::star(Contract c) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.mk_star(c.id()));
}

Contract Contract::alt(Contract a, Contract b) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.mk_or(a.id(), b.id()));
}

Contract Contract::both(Contract a, Contract b) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.mk_and(a.id(), b.id()));
}

Contract Contract::concat(Contract a, Contract b) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.mk_concat(a.id(), b.id()));
}

ContractKind Contract::kind() const {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return p.node(id_).kind;
}

Contract Contract::left() const {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.node(id_).l);
}

Contract Contract::right() const {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return Contract(p.node(id_).r);
}

Literal Contract::literal() const {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return p.wrap_lit(p.node(id_).lit);
}

size_t Contract::size() const {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return p.node(id_).size;
}

bool nullable(Contract c) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return p.node(c.id()).nullable;
}

// ---------------------------------------------------------------------------
// Derivatives

namespace {

uint32_t derive_id(ContractPool& p, uint32_t c, const Property& prop);

uint32_t derive_lit(ContractPool& p, uint32_t lit_id, const Property& prop) {
  bool match = p.wrap_lit(lit_id).matches(prop);
  return match ? p.c_eps : p.c_empty;
}

uint32_t derive_uncached(ContractPool& p, uint32_t c, const Property& prop) {
  const CNode n = p.node(c);
  switch (n.kind) {
    case ContractKind::EmptySet:
    case ContractKind::Epsilon:
      return p.c_empty;
    case ContractKind::Lit:
      return derive_lit(p, n.lit, prop);
    case ContractKind::Star:
      return p.mk_concat(derive_id(p, n.l, prop), c);
    case ContractKind::Or:
      return p.mk_or(derive_id(p, n.l, prop), derive_id(p, n.r, prop));
    case ContractKind::And:
      return p.mk_and(derive_id(p, n.l, prop), derive_id(p, n.r, prop));
    case ContractKind::Concat: {
      uint32_t head = p.mk_concat(derive_id(p, n.l, prop), n.r);
      if (!p.node(n.l).nullable) return head;
      return p.mk_or(derive_id(p, n.r, prop), head);
    }
  }
  return p.c_empty;
}

uint32_t derive_id(ContractPool& p, uint32_t c, const Property& prop) {
  PropKey key{c, prop.is_blank(),
              prop.is_blank() ? std::string() : prop.text()};
  if (auto it = p.deriv_memo.find(key); it != p.deriv_memo.end())
    return it->second;
  uint32_t d = derive_uncached(p, c, prop);
  p.deriv_memo.emplace(std::move(key), d);
  return d;
}

}  // namespace

Contract derive(Contract c, const Property& prop) {
  auto& p = ContractPool::get();
  Guard g(p.mutex);
  return p.wrap(derive_id(p, c.id(), prop));
}

Contract derive(Contract c, const AccessPath& path) {
  for (const auto& prop : path) c = derive(c, prop);
  return c;
}

bool is_writeable(Contract c, const AccessPath& path) {
  return nullable(derive(c, path));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ContractParser {
public:
  explicit ContractParser(std::string_view src) : src_(src) {}

  Contract parse() {
    Contract c = alt();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character");
    return c;
  }

private:
  Contract alt() {
    Contract c = conj();
    while (eat('+')) c = Contract::alt(c, conj());
    return c;
  }

  Contract conj() {
    Contract c = cat();
    while (eat('&')) c = Contract::both(c, cat());
    return c;
  }

  Contract cat() {
    std::vector<Contract> parts{starred()};
    while (eat('.')) parts.push_back(starred());
    Contract c = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;)
      c = Contract::concat(parts[i], c);
    return c;
  }

  Contract starred() {
    Contract c = atom();
    skip_ws();
    while (pos_ < src_.size() && src_[pos_] == '*') {
      ++pos_;
      c = Contract::star(c);
      skip_ws();
    }
    return c;
  }

  Contract atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expected a contract atom");
    char c = src_[pos_];
    if (c == '@') {
      ++pos_;
      return Contract::lit(Literal::blank());
    }
    if (c == '?') {
      ++pos_;
      return Contract::lit(Literal::universe());
    }
    if (c == '(') {
      ++pos_;
      Contract inner = alt();
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '/') return Contract::lit(slash_regex(false));
    if (c == '!') {
      ++pos_;
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == '/')
        return Contract::lit(slash_regex(true));
      std::string name = ident();
      if (name.empty()) fail("expected a regex or identifier after '!'");
      return Contract::lit(
          Literal::neg_regex(CharRegex::exact(name), "!" + name));
    }
    if (src_.substr(pos_).starts_with("\xE2\x88\x85")) {  // ∅
      pos_ += 3;
      return Contract::empty_set();
    }
    std::string name = ident();
    if (name.empty()) fail("expected a contract atom");
    if (name == "e") return Contract::epsilon();  // keyword for ε
    return Contract::lit(Literal::exact(name));
  }

  Literal slash_regex(bool negated) {
    size_t start = pos_;
    ++pos_;  // '/'
    std::string body;
    while (true) {
      if (pos_ >= src_.size()) fail("unterminated regex literal");
      char c = src_[pos_];
      if (c == '/') break;
      if (c == '\\' && pos_ + 1 < src_.size()) {
        body += c;
        body += src_[pos_ + 1];
        pos_ += 2;
        continue;
      }
      body += c;
      ++pos_;
    }
    ++pos_;  // closing '/'
    CharRegex m = [&] {
      try {
        return CharRegex::parse(body);
      } catch (const RegexParseError& e) {
        throw ContractParseError(std::string("invalid regex: ") + e.what(),
                                 start + 1 + e.position);
      }
    }();
    std::string display = std::string(src_.substr(start, pos_ - start));
    return negated ? Literal::neg_regex(m, "!" + display)
                   : Literal::regex(m, display);
  }

  std::string ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(uint8_t(c)) || c == '_' || c == '$')
        ++pos_;
      else
        break;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(uint8_t(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ContractParseError(msg, pos_);
  }

  std::string_view src_;
  size_t pos_ = 0;
};

}  // namespace

Contract parse_contract(std::string_view src) {
  return ContractParser(src).parse();
}

// ---------------------------------------------------------------------------
// Pretty printing: + < & < . < * < atom.

namespace {

int prec_of(ContractKind k) {
  switch (k) {
    case ContractKind::Or:
      return 0;
    case ContractKind::And:
      return 1;
    case ContractKind::Concat:
      return 2;
    case ContractKind::Star:
      return 3;
    default:
      return 4;
  }
}

void print(Contract c, int need, std::string& out) {
  ContractKind k = c.kind();
  int prec = prec_of(k);
  bool parens = prec < need;
  if (parens) out += '(';
  switch (k) {
    case ContractKind::EmptySet:
      out += "\xE2\x88\x85";
      break;
    case ContractKind::Epsilon:
      out += 'e';
      break;
    case ContractKind::Lit:
      out += c.literal().display();
      break;
    case ContractKind::Star:
      print(c.left(), 3, out);
      out += '*';
      break;
    case ContractKind::Concat:
      print(c.left(), 3, out);
      out += '.';
      print(c.right(), 2, out);
      break;
    case ContractKind::And:
      print(c.left(), 1, out);
      out += '&';
      print(c.right(), 2, out);
      break;
    case ContractKind::Or:
      print(c.left(), 0, out);
      out += '+';
      print(c.right(), 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(Contract c) {
  std::string out;
  print(c, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Language enumeration oracle (structural recursion on the language
// equations; no derivatives involved).

namespace {

using PathSet = std::set<AccessPath>;

void check_cap(const PathSet& s, size_t cap) {
  if (s.size() > cap)
    throw LanguageOverflowError("enumerated language exceeds cap");
}

PathSet enumerate(Contract c, const std::vector<Property>& universe,
                  size_t max_len, size_t cap) {
  PathSet out;
  switch (c.kind()) {
    case ContractKind::EmptySet:
      break;
    case ContractKind::Epsilon:
      out.insert(AccessPath{});
      break;
    case ContractKind::Lit: {
      if (max_len == 0) break;
      Literal l = c.literal();
      for (const auto& p : universe)
        if (l.matches(p)) out.insert(AccessPath{p});
      break;
    }
    case ContractKind::Star: {
      PathSet base = enumerate(c.left(), universe, max_len, cap);
      base.erase(AccessPath{});
      out.insert(AccessPath{});
      bool grew = true;
      while (grew) {
        grew = false;
        PathSet next;
        for (const auto& x : base)
          for (const auto& y : out) {
            if (x.size() + y.size() > max_len) continue;
            AccessPath xy = x;
            xy.insert(xy.end(), y.begin(), y.end());
            if (!out.count(xy)) next.insert(std::move(xy));
          }
        for (auto& p : next)
          if (out.insert(p).second) grew = true;
        check_cap(out, cap);
      }
      break;
    }
    case ContractKind::Or: {
      out = enumerate(c.left(), universe, max_len, cap);
      PathSet r = enumerate(c.right(), universe, max_len, cap);
      out.insert(r.begin(), r.end());
      break;
    }
    case ContractKind::And: {
      PathSet l = enumerate(c.left(), universe, max_len, cap);
      PathSet r = enumerate(c.right(), universe, max_len, cap);
      for (const auto& p : l)
        if (r.count(p)) out.insert(p);
      break;
    }
    case ContractKind::Concat: {
      PathSet l = enumerate(c.left(), universe, max_len, cap);
      PathSet r = enumerate(c.right(), universe, max_len, cap);
      for (const auto& x : l)
        for (const auto& y : r) {
          if (x.size() + y.size() > max_len) continue;
          AccessPath xy = x;
          xy.insert(xy.end(), y.begin(), y.end());
          out.insert(std::move(xy));
        }
      break;
    }
  }
  check_cap(out, cap);
  return out;
}

}  // namespace

std::set<AccessPath> enumerate_language(Contract c,
                                        const std::vector<Property>& alphabet,
                                        size_t max_len, size_t cap) {
  std::vector<Property> universe = alphabet;
  universe.push_back(Property::blank());
  return enumerate(c, universe, max_len, cap);
}

}  // namespace apc
