#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "apc/property.hpp"

namespace apc {

struct TrieOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrieStats {
  size_t node_count = 0;  // non-root nodes
  size_t path_count = 0;  // represented paths
  size_t char_count = 0;  // property-name characters stored in the nodes
};

/// Persistent prefix tree over access paths. A path is represented iff
/// walking it from the root reaches a node carrying the end marker; each
/// node has at most one edge per property. All operations return new values
/// and share structure with their inputs, so tries from live handlers can
/// be unioned freely.
///
/// append (⊕) extends every represented path by one property; once the
/// number of path endings exceeds a small fan-out threshold the appended
/// properties are kept as a lazy suffix and materialized on demand.
class PathTrie {
public:
  PathTrie() = default;  // empty trie (no represented paths)

  static PathTrie single(const AccessPath& p);

  PathTrie insert(const AccessPath& p) const;
  PathTrie append(const Property& p) const;
  PathTrie append(const AccessPath& suffix) const;
  static PathTrie unite(const PathTrie& a, const PathTrie& b);

  bool empty() const { return !root_; }
  bool contains(const AccessPath& p) const;

  /// Represented set, in lexicographic order (ι before names). Throws
  /// TrieOverflowError if the set exceeds cap.
  std::vector<AccessPath> flatten(size_t cap = size_t(-1)) const;

  TrieStats stats() const;

private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  struct Node {
    bool end = false;
    std::map<Property, NodePtr> edges;
    // Cached subtree measures (nodes below this one, endings, name chars).
    size_t sub_nodes = 0, sub_ends = 0, sub_chars = 0;
  };

  explicit PathTrie(NodePtr root) : root_(std::move(root)) {}

  static NodePtr make(bool end, std::map<Property, NodePtr> edges);
  static NodePtr insert_node(const NodePtr& n, const AccessPath& p, size_t i);
  static NodePtr append_node(const NodePtr& n, const Property& p);
  static NodePtr unite_node(const NodePtr& a, const NodePtr& b);

  PathTrie materialized() const;

  NodePtr root_;                       // null = empty trie
  std::vector<Property> lazy_suffix_;  // pending ⊕ properties
};

}  // namespace apc
