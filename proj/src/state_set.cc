#include "gamehoare/state_set.hh"

namespace gamehoare {

std::string format_set(const StateSet& s) {
  std::string out = "{";
  bool first = true;
  for_each_member(s, [&](std::size_t u) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(u);
  });
  return out + "}";
}

std::string format_set(const StateSet& s, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for_each_member(s, [&](std::size_t u) {
    if (!first) out += ", ";
    first = false;
    out += u < labels.size() ? labels[u] : std::to_string(u);
  });
  return out + "}";
}

}  // namespace gamehoare
