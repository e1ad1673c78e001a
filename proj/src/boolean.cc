#include "gamehoare/boolean.hh"

#include <functional>

namespace gamehoare {

AtomSpace::AtomSpace(std::vector<std::string> names, std::vector<Atom> atoms)
    : names_(std::move(names)), atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i], i);
  for (std::size_t i = 0; i < names_.size(); ++i) test_index_.emplace(names_[i], i);
}

std::optional<std::size_t> AtomSpace::index_of(Atom a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> AtomSpace::test_index(const std::string& name) const {
  auto it = test_index_.find(name);
  if (it == test_index_.end()) return std::nullopt;
  return it->second;
}

std::string AtomSpace::label(std::size_t i) const {
  if (names_.empty()) return "true";
  std::string out;
  for (std::size_t t = 0; t < names_.size(); ++t) {
    if (t) out += ' ';
    if (!((atoms_[i] >> t) & 1)) out += '!';
    out += format_identifier(names_[t]);
  }
  return out;
}

std::vector<std::string> AtomSpace::labels() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(label(i));
  return out;
}

namespace {

// A test compiled to bit positions so that enumeration does not hash names.
using Compiled = std::function<bool(Atom)>;

Compiled compile(const Test& p, const std::unordered_map<std::string, std::size_t>& bits) {
  switch (p.kind()) {
    case Test::Kind::True:
      return [](Atom) { return true; };
    case Test::Kind::False:
      return [](Atom) { return false; };
    case Test::Kind::Atomic: {
      auto it = bits.find(p.name());
      if (it == bits.end()) throw std::invalid_argument("unknown test '" + p.name() + "'");
      std::size_t b = it->second;
      return [b](Atom a) { return ((a >> b) & 1) != 0; };
    }
    case Test::Kind::Not: {
      auto c = compile(p.lhs(), bits);
      return [c](Atom a) { return !c(a); };
    }
    case Test::Kind::And: {
      auto l = compile(p.lhs(), bits), r = compile(p.rhs(), bits);
      return [l, r](Atom a) { return l(a) && r(a); };
    }
    case Test::Kind::Or: {
      auto l = compile(p.lhs(), bits), r = compile(p.rhs(), bits);
      return [l, r](Atom a) { return l(a) || r(a); };
    }
  }
  throw std::logic_error("compile: bad test kind");
}

}  // namespace

AtomSpace consistent_atoms(const std::vector<Test>& phi, const std::vector<std::string>& names,
                           std::size_t max_tests) {
  if (names.size() > max_tests || names.size() >= 63)
    throw ResourceError("too many atomic tests: " + std::to_string(names.size()) + " (limit " +
                        std::to_string(max_tests) + ")");
  std::unordered_map<std::string, std::size_t> bits;
  for (std::size_t i = 0; i < names.size(); ++i) bits.emplace(names[i], i);
  std::vector<Compiled> axioms;
  for (const auto& p : phi) axioms.push_back(compile(p, bits));
  std::vector<Atom> atoms;
  const Atom end = Atom{1} << names.size();
  for (Atom a = 0; a < end; ++a) {
    bool ok = true;
    for (const auto& c : axioms) {
      if (!c(a)) {
        ok = false;
        break;
      }
    }
    if (ok) atoms.push_back(a);
  }
  return AtomSpace(names, std::move(atoms));
}

bool eval_test(const Test& p, Atom a, const AtomSpace& space) {
  switch (p.kind()) {
    case Test::Kind::True:
      return true;
    case Test::Kind::False:
      return false;
    case Test::Kind::Atomic: {
      auto b = space.test_index(p.name());
      if (!b) throw std::invalid_argument("unknown test '" + p.name() + "'");
      return ((a >> *b) & 1) != 0;
    }
    case Test::Kind::Not:
      return !eval_test(p.lhs(), a, space);
    case Test::Kind::And:
      return eval_test(p.lhs(), a, space) && eval_test(p.rhs(), a, space);
    case Test::Kind::Or:
      return eval_test(p.lhs(), a, space) || eval_test(p.rhs(), a, space);
  }
  return false;
}

StateSet denote_test(const Test& p, const AtomSpace& space) {
  switch (p.kind()) {
    case Test::Kind::True:
      return space.all();
    case Test::Kind::False:
      return space.none();
    case Test::Kind::Atomic: {
      auto b = space.test_index(p.name());
      if (!b) throw std::invalid_argument("unknown test '" + p.name() + "'");
      StateSet s = space.none();
      for (std::size_t i = 0; i < space.size(); ++i)
        if ((space[i] >> *b) & 1) s.set(i);
      return s;
    }
    case Test::Kind::Not:
      return ~denote_test(p.lhs(), space);
    case Test::Kind::And:
      return denote_test(p.lhs(), space) & denote_test(p.rhs(), space);
    case Test::Kind::Or:
      return denote_test(p.lhs(), space) | denote_test(p.rhs(), space);
  }
  return space.none();
}

bool entails(const AtomSpace& space, const Test& p) { return denote_test(p, space).all(); }

Test atom_test(const AtomSpace& space, std::size_t i) {
  std::optional<Test> out;
  for (std::size_t t = 0; t < space.names().size(); ++t) {
    Test lit = Test::atomic(space.names()[t]);
    if (!((space[i] >> t) & 1)) lit = Test::negate(lit);
    out = out ? Test::conj(*out, lit) : lit;
  }
  return out ? *out : Test::truth();
}

Test describe_atoms(const AtomSpace& space, const StateSet& target) {
  if (target.none()) return Test::falsity();
  if (target.all()) return Test::truth();
  const std::size_t k = space.names().size();

  // A cube is (care mask, values). It is acceptable when every consistent
  // atom it matches lies in the target.
  auto covered = [&](Atom care, Atom value) {
    StateSet s = space.none();
    for (std::size_t i = 0; i < space.size(); ++i)
      if ((space[i] & care) == value) s.set(i);
    return s;
  };

  StateSet remaining = target;
  std::optional<Test> result;
  for (auto i = remaining.find_first(); i != StateSet::npos; i = remaining.find_next(i)) {
    Atom care = (k >= 64) ? ~Atom{0} : ((Atom{1} << k) - 1);
    Atom value = space[i];
    for (std::size_t t = 0; t < k; ++t) {
      Atom c2 = care & ~(Atom{1} << t);
      StateSet s = covered(c2, value & c2);
      if (s.is_subset_of(target)) {
        care = c2;
        value &= c2;
      }
    }
    remaining &= ~covered(care, value);

    std::optional<Test> cube;
    for (std::size_t t = 0; t < k; ++t) {
      if (!((care >> t) & 1)) continue;
      Test lit = Test::atomic(space.names()[t]);
      if (!((value >> t) & 1)) lit = Test::negate(lit);
      cube = cube ? Test::conj(*cube, lit) : lit;
    }
    Test c = cube ? *cube : Test::truth();
    result = result ? Test::disj(*result, c) : c;
  }
  return *result;
}

}  // namespace gamehoare
