#include "gamehoare/denotation.hh"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gamehoare {

std::vector<StateSet> minimize(std::vector<StateSet> sets) {
  std::sort(sets.begin(), sets.end(), canonical_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  // Sorted by cardinality, so a set can only be dominated by an earlier one.
  std::vector<StateSet> out;
  for (auto& s : sets) {
    bool dominated = false;
    for (const auto& m : out) {
      if (m.is_subset_of(s)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(std::move(s));
  }
  return out;
}

GameFunction::GameFunction(std::size_t states, std::vector<std::vector<StateSet>> options) {
  if (options.size() != states) throw std::invalid_argument("game function: wrong number of states");
  options_.reserve(states);
  for (auto& o : options) {
    for (const auto& s : o)
      if (s.size() != states) throw std::invalid_argument("game function: option of wrong width");
    if (o.empty()) throw std::invalid_argument("game function: a state has no option");
    options_.push_back(minimize(std::move(o)));
  }
}

bool GameFunction::contains(std::size_t u, const StateSet& y) const {
  for (const auto& m : options_[u])
    if (m.is_subset_of(y)) return true;
  return false;
}

bool GameFunction::is_non_angelic() const {
  return std::all_of(options_.begin(), options_.end(), [](const auto& o) { return o.size() == 1; });
}

bool gf_leq(const GameFunction& a, const GameFunction& b) {
  for (std::size_t u = 0; u < a.states(); ++u)
    for (const auto& m : a.at(u))
      if (!b.contains(u, m)) return false;
  return true;
}

GameFunction gf_identity(std::size_t n) {
  std::vector<std::vector<StateSet>> o(n);
  for (std::size_t u = 0; u < n; ++u) o[u] = {singleton(n, u)};
  return GameFunction(n, std::move(o));
}

GameFunction gf_zero(std::size_t n) {
  return GameFunction(n, std::vector<std::vector<StateSet>>(n, {empty_set(n)}));
}

GameFunction lift(const NondetFunction& k) {
  std::vector<std::vector<StateSet>> o(k.states());
  for (std::size_t u = 0; u < k.states(); ++u) o[u] = {k(u)};
  return GameFunction(k.states(), std::move(o));
}

GameFunction gf_compose(const GameFunction& phi, const GameFunction& psi) {
  const std::size_t n = phi.states();
  std::vector<std::vector<StateSet>> out(n);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<StateSet> all;
    for (const auto& y : phi.at(u)) {
      // Choice functions v -> M_v built one member of y at a time. Dropping
      // non-minimal partial unions is safe because union is monotone.
      std::vector<StateSet> partial{empty_set(n)};
      for_each_member(y, [&](std::size_t v) {
        std::vector<StateSet> next;
        next.reserve(partial.size() * psi.at(v).size());
        for (const auto& s : partial)
          for (const auto& m : psi.at(v)) next.push_back(s | m);
        partial = minimize(std::move(next));
      });
      all.insert(all.end(), partial.begin(), partial.end());
    }
    out[u] = std::move(all);
  }
  return GameFunction(n, std::move(out));
}

GameFunction gf_ang(const GameFunction& phi, const GameFunction& psi) {
  std::vector<std::vector<StateSet>> out(phi.states());
  for (std::size_t u = 0; u < phi.states(); ++u) {
    out[u] = phi.at(u);
    out[u].insert(out[u].end(), psi.at(u).begin(), psi.at(u).end());
  }
  return GameFunction(phi.states(), std::move(out));
}

GameFunction gf_dem(const GameFunction& phi, const GameFunction& psi) {
  std::vector<std::vector<StateSet>> out(phi.states());
  for (std::size_t u = 0; u < phi.states(); ++u)
    for (const auto& x : phi.at(u))
      for (const auto& y : psi.at(u)) out[u].push_back(x | y);
  return GameFunction(phi.states(), std::move(out));
}

GameFunction gf_cond(const StateSet& p, const GameFunction& phi, const GameFunction& psi) {
  std::vector<std::vector<StateSet>> out(phi.states());
  for (std::size_t u = 0; u < phi.states(); ++u) out[u] = p.test(u) ? phi.at(u) : psi.at(u);
  return GameFunction(phi.states(), std::move(out));
}

GameFunction gf_while(const StateSet& p, const GameFunction& phi, WhileTrace* trace) {
  const std::size_t n = phi.states();
  const GameFunction one = gf_identity(n);
  GameFunction w = gf_cond(p, gf_zero(n), one);
  if (trace) trace->stages = {w};
  for (;;) {
    GameFunction next = gf_cond(p, gf_compose(phi, w), one);
    if (!gf_leq(next, w)) throw std::logic_error("gf_while: approximants are not decreasing");
    if (trace) trace->stages.push_back(next);
    if (next == w) return w;
    w = std::move(next);
  }
}

NondetFunction nd_identity(std::size_t n) {
  NondetFunction k;
  for (std::size_t u = 0; u < n; ++u) k.succ.push_back(singleton(n, u));
  return k;
}

NondetFunction nd_empty(std::size_t n) { return NondetFunction{std::vector<StateSet>(n, empty_set(n))}; }

NondetFunction nd_compose(const NondetFunction& k, const NondetFunction& l) {
  const std::size_t n = k.states();
  NondetFunction out = nd_empty(n);
  for (std::size_t u = 0; u < n; ++u) for_each_member(k(u), [&](std::size_t v) { out.succ[u] |= l(v); });
  return out;
}

NondetFunction nd_choice(const NondetFunction& k, const NondetFunction& l) {
  NondetFunction out = k;
  for (std::size_t u = 0; u < k.states(); ++u) out.succ[u] |= l(u);
  return out;
}

NondetFunction nd_cond(const StateSet& p, const NondetFunction& k, const NondetFunction& l) {
  NondetFunction out;
  for (std::size_t u = 0; u < k.states(); ++u) out.succ.push_back(p.test(u) ? k(u) : l(u));
  return out;
}

NondetFunction nd_while(const StateSet& p, const NondetFunction& k) {
  const std::size_t n = k.states();
  const NondetFunction one = nd_identity(n);
  NondetFunction v = nd_cond(p, nd_empty(n), one);
  for (;;) {
    NondetFunction next = nd_cond(p, nd_compose(k, v), one);
    if (next == v) return v;
    v = std::move(next);
  }
}

bool implements_check(const NondetFunction& k, const GameFunction& phi) {
  for (std::size_t u = 0; u < k.states(); ++u)
    if (!phi.contains(u, k(u))) return false;
  return true;
}

StateSet Model::denote(const Test& p) const {
  const std::size_t n = size();
  switch (p.kind()) {
    case Test::Kind::True:
      return full_set(n);
    case Test::Kind::False:
      return empty_set(n);
    case Test::Kind::Atomic: {
      auto it = tests.find(p.name());
      if (it == tests.end()) throw std::invalid_argument("model has no test '" + p.name() + "'");
      return it->second;
    }
    case Test::Kind::Not:
      return ~denote(p.lhs());
    case Test::Kind::And:
      return denote(p.lhs()) & denote(p.rhs());
    case Test::Kind::Or:
      return denote(p.lhs()) | denote(p.rhs());
  }
  return empty_set(n);
}

NondetFunction Model::relation(const std::string& action) const {
  auto it = actions.find(action);
  if (it == actions.end()) throw std::invalid_argument("model has no action '" + action + "'");
  if (!it->second.is_non_angelic())
    throw std::invalid_argument("action '" + action + "' has angelic options and no relational meaning");
  NondetFunction k;
  for (std::size_t u = 0; u < size(); ++u) k.succ.push_back(it->second.at(u).front());
  return k;
}

GameFunction eval_game(const Model& model, const Scheme& f) {
  const std::size_t n = model.size();
  switch (f.kind()) {
    case Scheme::Kind::Skip:
      return gf_identity(n);
    case Scheme::Kind::Diverge:
      return gf_zero(n);
    case Scheme::Kind::Action: {
      auto it = model.actions.find(f.name());
      if (it == model.actions.end()) throw std::invalid_argument("model has no action '" + f.name() + "'");
      return it->second;
    }
    case Scheme::Kind::Seq:
      return gf_compose(eval_game(model, f.first()), eval_game(model, f.second()));
    case Scheme::Kind::Cond:
      return gf_cond(model.denote(f.test()), eval_game(model, f.first()), eval_game(model, f.second()));
    case Scheme::Kind::While:
      return gf_while(model.denote(f.test()), eval_game(model, f.first()));
    case Scheme::Kind::Ang:
      return gf_ang(eval_game(model, f.first()), eval_game(model, f.second()));
    case Scheme::Kind::Dem:
      return gf_dem(eval_game(model, f.first()), eval_game(model, f.second()));
  }
  throw std::logic_error("eval_game: bad scheme kind");
}

NondetFunction eval_relational(const Model& model, const Scheme& f) {
  const std::size_t n = model.size();
  switch (f.kind()) {
    case Scheme::Kind::Skip:
      return nd_identity(n);
    case Scheme::Kind::Diverge:
      return nd_empty(n);
    case Scheme::Kind::Action:
      return model.relation(f.name());
    case Scheme::Kind::Seq:
      return nd_compose(eval_relational(model, f.first()), eval_relational(model, f.second()));
    case Scheme::Kind::Cond:
      return nd_cond(model.denote(f.test()), eval_relational(model, f.first()),
                     eval_relational(model, f.second()));
    case Scheme::Kind::While:
      return nd_while(model.denote(f.test()), eval_relational(model, f.first()));
    case Scheme::Kind::Dem:
      return nd_choice(eval_relational(model, f.first()), eval_relational(model, f.second()));
    case Scheme::Kind::Ang:
      throw std::invalid_argument("eval_relational: angelic choice has no relational meaning");
  }
  throw std::logic_error("eval_relational: bad scheme kind");
}

std::string format_options(const std::vector<StateSet>& options, const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (i) out += ", ";
    out += format_set(options[i], labels);
  }
  return out + "}";
}

}  // namespace gamehoare
