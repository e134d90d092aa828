#include "tlfleet/scltl/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace tlfleet::scltl {

namespace {

// Hash-consed residual formulas. And/Or are n-ary with sorted, duplicate-free
// operands, so structurally equal residuals share one id.
class TermPool {
public:
  using Id = std::uint32_t;

  struct Term {
    Op op;
    std::uint32_t prop; // atom bit index
    std::vector<Id> kids;
  };

  TermPool() {
    true_ = intern({Op::True, 0, {}});
    false_ = intern({Op::False, 0, {}});
  }

  Id top() const { return true_; }
  Id bottom() const { return false_; }
  const Term &at(Id id) const { return terms_[id]; }

  Id atom(std::uint32_t bit, bool negated) {
    return intern({negated ? Op::NegAtom : Op::Atom, bit, {}});
  }

  Id next(Id a) {
    if (a == false_)
      return false_;
    return intern({Op::Next, 0, {a}});
  }

  Id eventually(Id a) {
    if (a == true_ || a == false_)
      return a;
    return intern({Op::Eventually, 0, {a}});
  }

  Id until(Id a, Id b) {
    if (b == true_ || b == false_)
      return b;
    if (a == false_)
      return b;
    if (a == true_)
      return eventually(b);
    return intern({Op::Until, 0, {a, b}});
  }

  Id conj(std::vector<Id> kids) { return junction(Op::And, std::move(kids)); }
  Id disj(std::vector<Id> kids) { return junction(Op::Or, std::move(kids)); }

  Id from_formula(const Formula &f, const std::vector<std::string> &alphabet) {
    auto bit_of = [&](const std::string &name) {
      return static_cast<std::uint32_t>(
          std::lower_bound(alphabet.begin(), alphabet.end(), name) - alphabet.begin());
    };
    switch (f.op()) {
    case Op::True:
      return true_;
    case Op::False:
      return false_;
    case Op::Atom:
      return atom(bit_of(f.name()), false);
    case Op::NegAtom:
      return atom(bit_of(f.name()), true);
    case Op::And:
      return conj({from_formula(f.lhs(), alphabet), from_formula(f.rhs(), alphabet)});
    case Op::Or:
      return disj({from_formula(f.lhs(), alphabet), from_formula(f.rhs(), alphabet)});
    case Op::Next:
      return next(from_formula(f.lhs(), alphabet));
    case Op::Until:
      return until(from_formula(f.lhs(), alphabet), from_formula(f.rhs(), alphabet));
    case Op::Eventually:
      return eventually(from_formula(f.lhs(), alphabet));
    }
    return false_;
  }

  /// Residual obligation after reading one letter.
  Id progress(Id id, Dfa::Symbol sym) {
    const Term t = terms_[id];
    switch (t.op) {
    case Op::True:
    case Op::False:
      return id;
    case Op::Atom:
      return (sym >> t.prop) & 1U ? true_ : false_;
    case Op::NegAtom:
      return (sym >> t.prop) & 1U ? false_ : true_;
    case Op::And:
    case Op::Or: {
      std::vector<Id> kids;
      kids.reserve(t.kids.size());
      for (Id k : t.kids)
        kids.push_back(progress(k, sym));
      return t.op == Op::And ? conj(std::move(kids)) : disj(std::move(kids));
    }
    case Op::Next:
      return t.kids[0];
    case Op::Until: {
      const Id b = progress(t.kids[1], sym);
      const Id a = progress(t.kids[0], sym);
      return disj({b, conj({a, id})});
    }
    case Op::Eventually:
      return disj({progress(t.kids[0], sym), id});
    }
    return false_;
  }

  std::string text(Id id, const std::vector<std::string> &alphabet) const {
    const Term &t = terms_[id];
    switch (t.op) {
    case Op::True:
      return "true";
    case Op::False:
      return "false";
    case Op::Atom:
      return alphabet[t.prop];
    case Op::NegAtom:
      return "!" + alphabet[t.prop];
    case Op::And:
    case Op::Or: {
      std::string s = "(";
      for (std::size_t i = 0; i < t.kids.size(); ++i) {
        if (i)
          s += t.op == Op::And ? " & " : " | ";
        s += text(t.kids[i], alphabet);
      }
      return s + ")";
    }
    case Op::Next:
      return "X " + text(t.kids[0], alphabet);
    case Op::Until:
      return "(" + text(t.kids[0], alphabet) + " U " + text(t.kids[1], alphabet) + ")";
    case Op::Eventually:
      return "F " + text(t.kids[0], alphabet);
    }
    return {};
  }

private:
  using Key = std::tuple<Op, std::uint32_t, std::vector<Id>>;

  Id intern(Term t) {
    Key key{t.op, t.prop, t.kids};
    auto it = index_.find(key);
    if (it != index_.end())
      return it->second;
    const Id id = static_cast<Id>(terms_.size());
    terms_.push_back(std::move(t));
    index_.emplace(std::move(key), id);
    return id;
  }

  Id junction(Op op, std::vector<Id> kids) {
    const Id unit = op == Op::And ? true_ : false_;
    const Id zero = op == Op::And ? false_ : true_;
    std::vector<Id> flat;
    for (Id k : kids) {
      if (k == zero)
        return zero;
      if (k == unit)
        continue;
      const Term &t = terms_[k];
      if (t.op == op)
        flat.insert(flat.end(), t.kids.begin(), t.kids.end());
      else
        flat.push_back(k);
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (op == Op::And) {
      // p & !p can hold neither on a letter nor past the end of the word.
      for (Id k : flat) {
        const Term &t = terms_[k];
        if (t.op == Op::Atom) {
          auto neg = index_.find(Key{Op::NegAtom, t.prop, {}});
          if (neg != index_.end() && std::binary_search(flat.begin(), flat.end(), neg->second))
            return false_;
        }
      }
    }
    if (flat.empty())
      return unit;
    if (flat.size() == 1)
      return flat.front();
    return intern({op, 0, std::move(flat)});
  }

  std::vector<Term> terms_;
  std::map<Key, Id> index_;
  Id true_ = 0;
  Id false_ = 0;
};

} // namespace

bool Dfa::accepting(State q) const {
  if (!valid(q))
    throw UnknownStateError("unknown DFA state " + std::to_string(q));
  return accepting_[q];
}

Dfa::State Dfa::step(State q, Symbol sym) const {
  if (!valid(q))
    throw UnknownStateError("unknown DFA state " + std::to_string(q));
  const Symbol mask = (Symbol{1} << alphabet_.size()) - 1;
  return table_[(static_cast<std::size_t>(q) << alphabet_.size()) | (sym & mask)];
}

Dfa::State Dfa::step(State q, const PropositionSet &letter) const { return step(q, symbol(letter)); }

Dfa::Symbol Dfa::symbol(const PropositionSet &letter) const {
  Symbol sym = 0;
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (letter.contains(alphabet_[i]))
      sym |= Symbol{1} << i;
  return sym;
}

Dfa::Symbol Dfa::symbol(const std::vector<std::string> &letter) const {
  Symbol sym = 0;
  for (const auto &p : letter) {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), p);
    if (it != alphabet_.end() && *it == p)
      sym |= Symbol{1} << (it - alphabet_.begin());
  }
  return sym;
}

bool Dfa::accepts(const FiniteWord &w) const {
  State q = initial();
  for (const auto &letter : w)
    q = step(q, letter);
  return accepting(q);
}

const std::string &Dfa::state_label(State q) const {
  if (!valid(q))
    throw UnknownStateError("unknown DFA state " + std::to_string(q));
  return labels_[q];
}

std::string Dfa::dump() const {
  std::ostringstream out;
  out << "alphabet";
  for (const auto &p : alphabet_)
    out << ' ' << p;
  out << "\nstates " << size() << " initial " << initial() << '\n';
  for (State q = 0; q < size(); ++q)
    out << "state " << q << (accepting_[q] ? " accepting " : " ") << labels_[q] << '\n';
  const std::size_t letters = std::size_t{1} << alphabet_.size();
  for (State q = 0; q < size(); ++q) {
    for (Symbol s = 0; s < letters; ++s) {
      out << "edge " << q << " {";
      bool first = true;
      for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if ((s >> i) & 1U) {
          out << (first ? "" : ",") << alphabet_[i];
          first = false;
        }
      }
      out << "} " << table_[(static_cast<std::size_t>(q) << alphabet_.size()) | s] << '\n';
    }
  }
  return out.str();
}

Dfa translate_to_dfa(const Formula &phi, std::size_t state_cap) {
  Dfa dfa;
  const PropositionSet props = phi.propositions();
  dfa.alphabet_.assign(props.begin(), props.end());
  if (dfa.alphabet_.size() > Dfa::max_alphabet)
    throw StateLimitError("formula has more than " + std::to_string(Dfa::max_alphabet) +
                          " propositions");
  const std::size_t letters = std::size_t{1} << dfa.alphabet_.size();

  TermPool pool;
  std::unordered_map<TermPool::Id, Dfa::State> state_of;
  std::vector<TermPool::Id> term_of;
  std::deque<Dfa::State> work;

  auto add_state = [&](TermPool::Id t) {
    auto it = state_of.find(t);
    if (it != state_of.end())
      return it->second;
    if (term_of.size() >= state_cap)
      throw StateLimitError("DFA construction exceeded " + std::to_string(state_cap) + " states");
    const auto q = static_cast<Dfa::State>(term_of.size());
    state_of.emplace(t, q);
    term_of.push_back(t);
    dfa.accepting_.push_back(t == pool.top());
    dfa.labels_.push_back(pool.text(t, dfa.alphabet_));
    dfa.table_.resize(term_of.size() * letters);
    work.push_back(q);
    return q;
  };

  add_state(pool.from_formula(phi, dfa.alphabet_));
  while (!work.empty()) {
    const Dfa::State q = work.front();
    work.pop_front();
    const TermPool::Id t = term_of[q];
    for (Dfa::Symbol s = 0; s < letters; ++s) {
      const Dfa::State target = add_state(pool.progress(t, s));
      dfa.table_[(static_cast<std::size_t>(q) * letters) | s] = target;
    }
  }
  return dfa;
}

Dfa::State dfa_step(const Dfa &dfa, Dfa::State q, const PropositionSet &letter) {
  return dfa.step(q, letter);
}

} // namespace tlfleet::scltl
