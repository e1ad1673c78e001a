#include "gamehoare/arena.hh"

#include <deque>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace gamehoare {

using nlohmann::json;

const char* owner_name(Owner o) {
  switch (o) {
    case Owner::Angel:
      return "angel";
    case Owner::Demon:
      return "demon";
    default:
      return "none";
  }
}

std::size_t SafetyGame::add_vertex(std::string label, Owner o, bool is_error) {
  std::size_t id = owner.size();
  if (!ids.empty()) ids.push_back(static_cast<std::int64_t>(id));
  labels.push_back(std::move(label));
  owner.push_back(o);
  succ.emplace_back();
  error.push_back(is_error);
  return id;
}

std::optional<std::string> validate_game(const SafetyGame& g) {
  if (g.labels.size() != g.size() || g.succ.size() != g.size() || g.error.size() != g.size())
    return "inconsistent vertex tables";
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.succ[v].empty()) return "vertex " + std::to_string(v) + " (" + g.labels[v] + ") is a sink";
    if (g.owner[v] == Owner::Neither && g.succ[v].size() != 1)
      return "vertex " + std::to_string(v) + " (" + g.labels[v] + ") belongs to no player but has " +
             std::to_string(g.succ[v].size()) + " successors";
    for (auto w : g.succ[v])
      if (w >= g.size()) return "vertex " + std::to_string(v) + " has an edge to a missing vertex";
  }
  return std::nullopt;
}

SolveResult solve_game(const SafetyGame& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> pred(n);
  for (std::size_t v = 0; v < n; ++v)
    for (auto w : g.succ[v]) pred[w].push_back(v);

  SolveResult r;
  r.rank.assign(n, kNoRank);
  r.demon_strategy.assign(n, kNoMove);
  r.angel_strategy.assign(n, kNoMove);

  // Successors not yet attracted; an angel (or neither) vertex falls into the
  // attractor when this reaches zero. Duplicate edges count separately.
  std::vector<std::size_t> pending(n);
  for (std::size_t v = 0; v < n; ++v) pending[v] = g.succ[v].size();

  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.error.test(v)) {
      r.rank[v] = 0;
      queue.push_back(v);
    }
  }
  // FIFO order processes vertices by nondecreasing rank, so the rank given
  // on attraction is exactly the stage number.
  while (!queue.empty()) {
    std::size_t w = queue.front();
    queue.pop_front();
    for (auto v : pred[w]) {
      if (r.rank[v] != kNoRank) continue;
      bool attracted = false;
      if (g.owner[v] == Owner::Demon) {
        attracted = true;
        r.demon_strategy[v] = w;
      } else {
        attracted = --pending[v] == 0;
      }
      if (attracted) {
        r.rank[v] = r.rank[w] + 1;
        queue.push_back(v);
      }
    }
  }

  r.demon_win = empty_set(n);
  std::uint32_t max_rank = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (r.rank[v] != kNoRank) {
      r.demon_win.set(v);
      max_rank = std::max(max_rank, r.rank[v]);
    }
  }
  r.angel_win = ~r.demon_win;
  r.rounds = r.demon_win.any() ? max_rank + 1 : 0;

  for (std::size_t v = 0; v < n; ++v) {
    if (g.owner[v] == Owner::Angel && r.angel_win.test(v)) {
      for (auto w : g.succ[v])
        if (r.angel_win.test(w) && (r.angel_strategy[v] == kNoMove || w < r.angel_strategy[v]))
          r.angel_strategy[v] = w;
    }
    // Error vertices that belong to the demon still get a move: the one of
    // least rank, lowest id first.
    if (g.owner[v] == Owner::Demon && r.demon_win.test(v) && r.demon_strategy[v] == kNoMove) {
      for (auto w : g.succ[v]) {
        auto cur = r.demon_strategy[v];
        if (r.rank[w] != kNoRank && (cur == kNoMove || r.rank[w] < r.rank[cur] ||
                                     (r.rank[w] == r.rank[cur] && w < cur)))
          r.demon_strategy[v] = w;
      }
    }
  }
  return r;
}

std::vector<std::size_t> demon_play(const SafetyGame& g, const SolveResult& r, std::size_t start) {
  if (!r.demon_win.test(start)) throw std::invalid_argument("demon_play: start vertex is won by the angel");
  std::vector<std::size_t> play{start};
  std::size_t v = start;
  while (!g.error.test(v)) {
    std::size_t next = kNoMove;
    switch (g.owner[v]) {
      case Owner::Demon:
        next = r.demon_strategy[v];
        break;
      case Owner::Neither:
        next = g.succ[v].front();
        break;
      case Owner::Angel:
        for (auto w : g.succ[v])
          if (next == kNoMove || w < next) next = w;
        break;
    }
    if (next == kNoMove || r.rank[next] >= r.rank[v])
      throw std::logic_error("demon_play: ranks do not decrease along the play");
    play.push_back(next);
    v = next;
  }
  return play;
}

namespace {

Owner parse_owner(const std::string& s) {
  if (s == "angel") return Owner::Angel;
  if (s == "demon") return Owner::Demon;
  if (s == "none") return Owner::Neither;
  throw std::invalid_argument("game: unknown owner '" + s + "'");
}

}  // namespace

SafetyGame game_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("game: ") + e.what());
  }
  const auto& vs = j.at("vertices");
  std::unordered_map<std::int64_t, std::size_t> dense;
  SafetyGame g;
  std::vector<std::int64_t> ids;
  for (const auto& v : vs) {
    std::int64_t id = v.at("id").get<std::int64_t>();
    if (!dense.emplace(id, g.size()).second)
      throw std::invalid_argument("game: duplicate vertex id " + std::to_string(id));
    std::string label = v.contains("label") ? v.at("label").get<std::string>() : std::to_string(id);
    g.add_vertex(label, parse_owner(v.value("owner", "none")), v.value("error", false));
    ids.push_back(id);
  }
  g.ids = std::move(ids);
  std::size_t i = 0;
  for (const auto& v : vs) {
    for (const auto& s : v.value("succ", json::array())) {
      auto it = dense.find(s.get<std::int64_t>());
      if (it == dense.end()) throw std::invalid_argument("game: edge to unknown vertex " + s.dump());
      g.add_edge(i, it->second);
    }
    ++i;
  }
  return g;
}

std::string game_to_json(const SafetyGame& g) {
  json vs = json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    json succ = json::array();
    for (auto w : g.succ[v]) succ.push_back(g.external_id(w));
    vs.push_back({{"id", g.external_id(v)},
                  {"label", g.labels[v]},
                  {"owner", owner_name(g.owner[v])},
                  {"error", static_cast<bool>(g.error.test(v))},
                  {"succ", succ}});
  }
  return json{{"vertices", vs}}.dump(1);
}

std::string solve_result_to_json(const SafetyGame& g, const SolveResult& r) {
  json angel = json::array(), demon = json::array(), astrat = json::object(), dstrat = json::object(),
       rank = json::object();
  for (std::size_t v = 0; v < g.size(); ++v) {
    const std::string key = std::to_string(g.external_id(v));
    if (r.angel_win.test(v)) angel.push_back(g.external_id(v));
    if (r.demon_win.test(v)) {
      demon.push_back(g.external_id(v));
      rank[key] = r.rank[v];
    }
    if (r.angel_strategy[v] != kNoMove) astrat[key] = g.external_id(r.angel_strategy[v]);
    if (r.demon_strategy[v] != kNoMove) dstrat[key] = g.external_id(r.demon_strategy[v]);
  }
  json out{{"angel_win", angel},     {"demon_win", demon}, {"angel_strategy", astrat},
           {"demon_strategy", dstrat}, {"rank", rank},       {"rounds", r.rounds}};
  return out.dump(2);
}

}  // namespace gamehoare
