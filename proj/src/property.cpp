#include "apc/property.hpp"

namespace apc {

std::string to_string(const Property& p) {
  return p.is_blank() ? std::string("@") : p.text();
}

std::string to_string(const AccessPath& path) {
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += to_string(path[i]);
  }
  return out;
}

AccessPath parse_path(std::string_view text) {
  AccessPath path;
  if (text.empty()) return path;
  size_t start = 0;
  while (true) {
    size_t dot = text.find('.', start);
    std::string_view seg =
        text.substr(start, dot == std::string_view::npos ? dot : dot - start);
    if (seg == "@")
      path.push_back(Property::blank());
    else
      path.push_back(Property::name(std::string(seg)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return path;
}

AccessPath path_append(AccessPath base, Property p) {
  base.push_back(std::move(p));
  return base;
}

}  // namespace apc
