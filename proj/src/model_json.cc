#include <stdexcept>

#include <json.hpp>

#include "gamehoare/denotation.hh"

namespace gamehoare {

using nlohmann::json;

namespace {

std::size_t state_ref(const json& j, const std::vector<std::string>& labels) {
  if (j.is_number_unsigned()) {
    auto u = j.get<std::size_t>();
    if (u >= labels.size()) throw std::invalid_argument("model: state index out of range: " + j.dump());
    return u;
  }
  if (j.is_string()) {
    auto s = j.get<std::string>();
    for (std::size_t u = 0; u < labels.size(); ++u)
      if (labels[u] == s) return u;
    throw std::invalid_argument("model: unknown state '" + s + "'");
  }
  throw std::invalid_argument("model: bad state reference " + j.dump());
}

StateSet state_set(const json& j, const std::vector<std::string>& labels) {
  if (!j.is_array()) throw std::invalid_argument("model: expected an array of states, got " + j.dump());
  StateSet s = empty_set(labels.size());
  for (const auto& e : j) s.set(state_ref(e, labels));
  return s;
}

json set_json(const StateSet& s, const std::vector<std::string>& labels) {
  json a = json::array();
  for_each_member(s, [&](std::size_t u) { a.push_back(labels[u]); });
  return a;
}

}  // namespace

Model model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model: ") + e.what());
  }
  Model m;
  for (const auto& s : j.at("states")) m.state_labels.push_back(s.is_string() ? s.get<std::string>() : s.dump());
  const auto& labels = m.state_labels;
  const std::size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("model: the state space must be nonempty");
  if (j.contains("tests"))
    for (const auto& [name, members] : j.at("tests").items()) m.tests[name] = state_set(members, labels);
  if (j.contains("actions")) {
    for (const auto& [name, spec] : j.at("actions").items()) {
      std::string kind = spec.value("kind", "nondet");
      if (kind != "game" && kind != "nondet")
        throw std::invalid_argument("model: action '" + name + "' has unknown kind '" + kind + "'");
      std::vector<std::vector<StateSet>> options(n);
      for (std::size_t u = 0; u < n; ++u) {
        const json* entry = nullptr;
        if (spec.contains(labels[u])) entry = &spec.at(labels[u]);
        if (!entry) {
          // An unlisted state has no successors: the action blocks there.
          options[u] = {empty_set(n)};
          continue;
        }
        if (kind == "nondet") {
          options[u] = {state_set(*entry, labels)};
        } else {
          if (!entry->is_array() || entry->empty())
            throw std::invalid_argument("model: action '" + name + "' needs at least one option at '" +
                                        labels[u] + "'");
          for (const auto& opt : *entry) options[u].push_back(state_set(opt, labels));
        }
      }
      m.actions.emplace(name, GameFunction(n, std::move(options)));
    }
  }
  return m;
}

std::string model_to_json(const Model& model) {
  const auto& labels = model.state_labels;
  json j;
  j["states"] = labels;
  j["tests"] = json::object();
  for (const auto& [name, s] : model.tests) j["tests"][name] = set_json(s, labels);
  j["actions"] = json::object();
  for (const auto& [name, gf] : model.actions) {
    json a;
    a["kind"] = gf.is_non_angelic() ? "nondet" : "game";
    for (std::size_t u = 0; u < model.size(); ++u) {
      if (gf.is_non_angelic()) {
        a[labels[u]] = set_json(gf.at(u).front(), labels);
      } else {
        json opts = json::array();
        for (const auto& o : gf.at(u)) opts.push_back(set_json(o, labels));
        a[labels[u]] = opts;
      }
    }
    j["actions"][name] = a;
  }
  return j.dump(2);
}

}  // namespace gamehoare
