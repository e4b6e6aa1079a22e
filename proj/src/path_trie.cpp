#include "apc/path_trie.hpp"

namespace apc {

namespace {
constexpr size_t kLazyAppendFanOut = 32;
}

PathTrie::NodePtr PathTrie::make(bool end, std::map<Property, NodePtr> edges) {
  auto n = std::make_shared<Node>();
  n->end = end;
  n->sub_ends = end ? 1 : 0;
  for (auto& [p, child] : edges) {
    n->sub_nodes += 1 + child->sub_nodes;
    n->sub_ends += child->sub_ends;
    n->sub_chars += (p.is_blank() ? 1 : p.text().size()) + child->sub_chars;
  }
  n->edges = std::move(edges);
  return n;
}

PathTrie PathTrie::single(const AccessPath& p) {
  return PathTrie().insert(p);
}

PathTrie::NodePtr PathTrie::insert_node(const NodePtr& n, const AccessPath& p,
                                        size_t i) {
  bool end = n ? n->end : false;
  std::map<Property, NodePtr> edges = n ? n->edges : std::map<Property, NodePtr>{};
  if (i == p.size()) {
    if (n && n->end) return n;  // idempotent
    end = true;
  } else {
    auto it = edges.find(p[i]);
    NodePtr child = it == edges.end() ? nullptr : it->second;
    NodePtr grown = insert_node(child, p, i + 1);
    if (child == grown) return n;
    edges[p[i]] = grown;
  }
  return make(end, std::move(edges));
}

PathTrie PathTrie::insert(const AccessPath& p) const {
  PathTrie t = materialized();
  return PathTrie(insert_node(t.root_, p, 0));
}

PathTrie::NodePtr PathTrie::append_node(const NodePtr& n, const Property& p) {
  std::map<Property, NodePtr> edges;
  for (const auto& [q, child] : n->edges) edges[q] = append_node(child, p);
  if (n->end) {
    NodePtr leaf = make(true, {});
    auto it = edges.find(p);
    edges[p] = it == edges.end() ? leaf : unite_node(it->second, leaf);
  }
  return make(false, std::move(edges));
}

PathTrie PathTrie::append(const Property& p) const {
  if (!root_) return *this;  // appending to the empty trie is vacuous
  if (!lazy_suffix_.empty() || root_->sub_ends > kLazyAppendFanOut) {
    PathTrie t = *this;
    t.lazy_suffix_.push_back(p);
    return t;
  }
  return PathTrie(append_node(root_, p));
}

PathTrie PathTrie::append(const AccessPath& suffix) const {
  PathTrie t = *this;
  for (const auto& p : suffix) t = t.append(p);
  return t;
}

PathTrie::NodePtr PathTrie::unite_node(const NodePtr& a, const NodePtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a == b) return a;
  std::map<Property, NodePtr> edges = a->edges;
  for (const auto& [p, child] : b->edges) {
    auto it = edges.find(p);
    edges[p] = it == edges.end() ? child : unite_node(it->second, child);
  }
  return make(a->end || b->end, std::move(edges));
}

PathTrie PathTrie::unite(const PathTrie& a, const PathTrie& b) {
  PathTrie ma = a.materialized(), mb = b.materialized();
  if (!ma.root_) return mb;
  if (!mb.root_) return ma;
  return PathTrie(unite_node(ma.root_, mb.root_));
}

PathTrie PathTrie::materialized() const {
  if (lazy_suffix_.empty()) return *this;
  PathTrie t(root_);
  for (const auto& p : lazy_suffix_) t = PathTrie(append_node(t.root_, p));
  return t;
}

bool PathTrie::contains(const AccessPath& p) const {
  PathTrie t = materialized();
  const Node* n = t.root_.get();
  if (!n) return false;
  for (const auto& prop : p) {
    auto it = n->edges.find(prop);
    if (it == n->edges.end()) return false;
    n = it->second.get();
  }
  return n->end;
}

std::vector<AccessPath> PathTrie::flatten(size_t cap) const {
  PathTrie t = materialized();
  std::vector<AccessPath> out;
  if (!t.root_) return out;
  AccessPath prefix;
  auto walk = [&](auto&& self, const NodePtr& n) -> void {
    if (n->end) {
      if (out.size() >= cap)
        throw TrieOverflowError("flattened path set exceeds cap");
      out.push_back(prefix);
    }
    for (const auto& [p, child] : n->edges) {
      prefix.push_back(p);
      self(self, child);
      prefix.pop_back();
    }
  };
  walk(walk, t.root_);
  return out;
}

TrieStats PathTrie::stats() const {
  PathTrie t = materialized();
  TrieStats s;
  if (!t.root_) return s;
  s.node_count = t.root_->sub_nodes;
  s.path_count = t.root_->sub_ends;
  s.char_count = t.root_->sub_chars;
  return s;
}

}  // namespace apc
