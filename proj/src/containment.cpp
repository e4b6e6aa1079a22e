#include "apc/containment.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace apc {

// ---------------------------------------------------------------------------
// first (Fig. "first on contracts")

namespace {

void first_into(Contract c, std::set<Literal>& out) {
  switch (c.kind()) {
    case ContractKind::EmptySet:
    case ContractKind::Epsilon:
      break;
    case ContractKind::Lit:
      out.insert(c.literal());
      break;
    case ContractKind::Star:
      first_into(c.left(), out);
      break;
    case ContractKind::Or:
      first_into(c.left(), out);
      first_into(c.right(), out);
      break;
    case ContractKind::And: {
      std::set<Literal> l, r;
      first_into(c.left(), l);
      first_into(c.right(), r);
      for (Literal a : l)
        for (Literal b : r) out.insert(intersect(a, b));
      break;
    }
    case ContractKind::Concat:
      first_into(c.left(), out);
      if (nullable(c.left())) first_into(c.right(), out);
      break;
  }
}

}  // namespace

std::vector<Literal> first_literals(Contract c) {
  std::set<Literal> set;
  first_into(c, set);
  std::vector<Literal> out;
  for (Literal l : set)
    if (!l.empty_language()) out.push_back(l);
  return out;
}

// ---------------------------------------------------------------------------
// Literal derivative (Fig. "Derivative of a contract by a contract literal")

Contract lit_derive(Contract c, Literal l) {
  switch (c.kind()) {
    case ContractKind::EmptySet:
    case ContractKind::Epsilon:
      return Contract::empty_set();
    case ContractKind::Lit: {
      Literal target = c.literal();
      switch (target.kind()) {
        case LiteralKind::Blank:
          return l.kind() == LiteralKind::Blank ? Contract::epsilon()
                                                : Contract::empty_set();
        case LiteralKind::Universe:
          return Contract::epsilon();
        case LiteralKind::Regex:
          return literal_contains(l, target.matcher()) ? Contract::epsilon()
                                                       : Contract::empty_set();
        case LiteralKind::NegRegex: {
          // ε when L(l) ∩ L(R) = ∅.
          Literal meet = intersect(
              l, Literal::regex(target.matcher(), target.display() + "'"));
          return meet.empty_language() ? Contract::epsilon()
                                       : Contract::empty_set();
        }
      }
      return Contract::empty_set();
    }
    case ContractKind::Star:
      return Contract::concat(lit_derive(c.left(), l), c);
    case ContractKind::Or:
      return Contract::alt(lit_derive(c.left(), l), lit_derive(c.right(), l));
    case ContractKind::And:
      return Contract::both(lit_derive(c.left(), l), lit_derive(c.right(), l));
    case ContractKind::Concat: {
      Contract head = Contract::concat(lit_derive(c.left(), l), c.right());
      if (!nullable(c.left())) return head;
      return Contract::alt(lit_derive(c.right(), l), head);
    }
  }
  return Contract::empty_set();
}

// ---------------------------------------------------------------------------
// Auxiliary predicates (Appendix C)

bool bl(Contract c) {
  switch (c.kind()) {
    case ContractKind::Lit:
      return c.literal().kind() == LiteralKind::Blank;
    case ContractKind::EmptySet:
    case ContractKind::Epsilon:
    case ContractKind::Star:
      return false;
    case ContractKind::Or:
      return bl(c.left()) && bl(c.right());
    case ContractKind::And:
      return bl(c.left()) || bl(c.right());
    case ContractKind::Concat:
      return bl(c.left());
  }
  return false;
}

bool emp(Contract c) {
  switch (c.kind()) {
    case ContractKind::EmptySet:
      return true;
    case ContractKind::Epsilon:
    case ContractKind::Lit:
    case ContractKind::Star:
      return false;
    case ContractKind::Or:
      // The printed row uses ∨; ∧ is the sound reading (a union is empty
      // only when both parts are), consistent with the reduction rules.
      return emp(c.left()) && emp(c.right());
    case ContractKind::And:
      // first-literal emptiness, guarded against ε-only intersections such
      // as (e+a)&(e+b) whose language is exactly {ε}.
      return first_literals(c).empty() && !nullable(c);
    case ContractKind::Concat:
      return emp(c.left()) || emp(c.right());
  }
  return false;
}

bool ind(Contract c) {
  switch (c.kind()) {
    case ContractKind::Lit:
      return c.literal().kind() == LiteralKind::Universe;
    case ContractKind::EmptySet:
    case ContractKind::Epsilon:
      return false;
    case ContractKind::Star:
      return ind(c.left());
    case ContractKind::Or:
      return ind(c.left()) || ind(c.right());
    case ContractKind::And:
      return ind(c.left()) && ind(c.right());
    case ContractKind::Concat: {
      Contract eps = Contract::epsilon();
      if (c.left() == eps && ind(c.right())) return true;
      if (ind(c.left()) && c.right() == eps) return true;
      return false;
    }
  }
  return false;
}

bool unv(Contract c) {
  switch (c.kind()) {
    case ContractKind::Lit:
    case ContractKind::EmptySet:
    case ContractKind::Epsilon:
      return false;
    case ContractKind::Star:
      return unv(c.left()) || ind(c.left());
    case ContractKind::Or:
      return unv(c.left()) || unv(c.right());
    case ContractKind::And:
      return unv(c.left()) && unv(c.right());
    case ContractKind::Concat: {
      Contract eps = Contract::epsilon();
      if (c.left() == eps && unv(c.right())) return true;
      if (unv(c.left()) && c.right() == eps) return true;
      if (unv(c.left()) && unv(c.right())) return true;
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Containment judgment Γ ⊢ C ⊑ C′

namespace {

constexpr int kUnfoldBudget = 256;

struct Query {
  uint32_t lhs, rhs;
  bool operator==(const Query&) const = default;
};

struct QueryHash {
  size_t operator()(const Query& q) const noexcept {
    return (size_t(q.lhs) << 32) | q.rhs;
  }
};

using Context = std::unordered_set<Query, QueryHash>;

bool judge(Contract lhs, Contract rhs, Context& gamma, int depth) {
  // Prove axioms.
  if (lhs == rhs) return true;                       // C-Identity
  if (emp(lhs) || unv(rhs)) return true;             // C-Proof-Edge
  if (lhs == Contract::epsilon() && nullable(rhs)) return true;  // C-Nullable
  // Disprove axioms.
  if (nullable(lhs) && !nullable(rhs)) return false;  // C-Disprove
  if (!emp(lhs) && emp(rhs)) return false;            // C-Disprove-Empty
  if ((ind(lhs) || unv(lhs)) && bl(rhs)) return false;  // C-Disprove-Blank
  // C-Delete.
  Query q{lhs.id(), rhs.id()};
  if (gamma.count(q)) return true;
  // C-Unfold, conjunctively over first(lhs).
  if (depth <= 0) return false;  // budget exhausted: conservative
  gamma.insert(q);
  bool ok = true;
  for (Literal l : first_literals(lhs)) {
    if (!judge(lit_derive(lhs, l), lit_derive(rhs, l), gamma, depth - 1)) {
      ok = false;
      break;
    }
  }
  gamma.erase(q);
  return ok;
}

std::mutex memo_mutex;
std::unordered_map<uint64_t, bool> contains_memo;
std::unordered_map<uint32_t, uint32_t> reduce_memo;

}  // namespace

bool contains(Contract lhs, Contract rhs) {
  uint64_t key = (uint64_t(lhs.id()) << 32) | rhs.id();
  {
    std::lock_guard g(memo_mutex);
    if (auto it = contains_memo.find(key); it != contains_memo.end())
      return it->second;
  }
  Context gamma;
  bool out = judge(lhs, rhs, gamma, kUnfoldBudget);
  std::lock_guard g(memo_mutex);
  // Only top-level results are cached; inner judgments depend on Γ.
  contains_memo.emplace(key, out);
  return out;
}

// ---------------------------------------------------------------------------
// Reduction (Fig. "Reduction rules"), bottom-up.

namespace {

Contract reduce_uncached(Contract c) {
  switch (c.kind()) {
    case ContractKind::EmptySet:
    case ContractKind::Epsilon:
    case ContractKind::Lit:
      return c;
    case ContractKind::Star: {
      Contract body = c.left();
      if (emp(body) || bl(body)) return Contract::epsilon();
      return Contract::star(reduce(body));
    }
    case ContractKind::Or: {
      Contract a = c.left(), b = c.right();
      if (emp(a) && emp(b)) return Contract::empty_set();
      if (bl(a) && bl(b)) return Contract::lit(Literal::blank());
      if (contains(b, a)) return reduce(a);
      if (contains(a, b)) return reduce(b);
      return Contract::alt(reduce(a), reduce(b));
    }
    case ContractKind::And: {
      Contract a = c.left(), b = c.right();
      if (emp(a) || emp(b)) return Contract::empty_set();
      if (bl(a) || bl(b)) return Contract::lit(Literal::blank());
      if (contains(a, b)) return reduce(a);
      if (contains(b, a)) return reduce(b);
      return Contract::both(reduce(a), reduce(b));
    }
    case ContractKind::Concat: {
      Contract a = c.left(), b = c.right();
      if (emp(a)) return Contract::empty_set();
      if (bl(a)) return Contract::lit(Literal::blank());
      return Contract::concat(reduce(a), reduce(b));
    }
  }
  return c;
}

}  // namespace

Contract reduce(Contract c) {
  {
    std::lock_guard g(memo_mutex);
    if (auto it = reduce_memo.find(c.id()); it != reduce_memo.end())
      return Contract::from_id(it->second);
  }
  Contract out = reduce_uncached(c);
  std::lock_guard g(memo_mutex);
  reduce_memo.emplace(c.id(), out.id());
  return out;
}

// ---------------------------------------------------------------------------
// Readability (Def. "Readable"), via emp.

bool is_readable(Contract c, const AccessPath& path) {
  return !emp(derive(c, path));
}

}  // namespace apc
