#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace apc {

/// A property is either a name drawn from the property alphabet or the
/// distinguished blank marker ι, which no program-level name can denote.
class Property {
public:
  static Property blank() { return Property(true, {}); }
  static Property name(std::string n) { return Property(false, std::move(n)); }

  bool is_blank() const { return blank_; }

  /// Name text; only meaningful when !is_blank().
  const std::string& text() const { return name_; }

  friend bool operator==(const Property& a, const Property& b) {
    return a.blank_ == b.blank_ && a.name_ == b.name_;
  }
  friend auto operator<=>(const Property& a, const Property& b) {
    // ι sorts before every real name.
    if (a.blank_ != b.blank_) return a.blank_ ? std::strong_ordering::less
                                              : std::strong_ordering::greater;
    return a.name_ <=> b.name_;
  }

private:
  Property(bool blank, std::string n) : blank_(blank), name_(std::move(n)) {}
  bool blank_;
  std::string name_;
};

/// A possibly empty sequence of properties; the empty vector is ε.
using AccessPath = std::vector<Property>;

/// Renders "a.b"; ι renders as "@", ε as the empty string.
std::string to_string(const AccessPath& path);
std::string to_string(const Property& p);

/// Parses a dotted path; "@" segments denote ι, "" denotes ε.
AccessPath parse_path(std::string_view text);

AccessPath path_append(AccessPath base, Property p);

}  // namespace apc

template <>
struct std::hash<apc::Property> {
  size_t operator()(const apc::Property& p) const noexcept {
    size_t h = std::hash<std::string>()(p.is_blank() ? std::string() : p.text());
    return p.is_blank() ? ~h : h;
  }
};

template <>
struct std::hash<apc::AccessPath> {
  size_t operator()(const apc::AccessPath& path) const noexcept {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& p : path)
      h = h * 1099511628211ull ^ std::hash<apc::Property>()(p);
    return h;
  }
};
