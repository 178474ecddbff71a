#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hda/labels.hpp"

namespace hda {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// CCS abstract syntax.  Labels are stored by name so terms do not
/// depend on a finalized LabelSet.
struct Term {
  enum class Kind { Nil, Prefix, Restrict, Sum, Par, Rec, Var };

  Kind kind;
  std::string label;   // Prefix action / Restrict label / Rec and Var variable
  TermPtr left, right; // unary nodes use left only

  static TermPtr nil() { return node(Kind::Nil, "", nullptr, nullptr); }
  static TermPtr prefix(std::string a, TermPtr p) {
    return node(Kind::Prefix, std::move(a), std::move(p), nullptr);
  }
  static TermPtr restrict(std::string a, TermPtr p) {
    return node(Kind::Restrict, std::move(a), std::move(p), nullptr);
  }
  static TermPtr sum(TermPtr p, TermPtr q) {
    return node(Kind::Sum, "", std::move(p), std::move(q));
  }
  static TermPtr par(TermPtr p, TermPtr q) {
    return node(Kind::Par, "", std::move(p), std::move(q));
  }
  static TermPtr rec(std::string x, TermPtr p) {
    return node(Kind::Rec, std::move(x), std::move(p), nullptr);
  }
  static TermPtr var(std::string x) {
    return node(Kind::Var, std::move(x), nullptr, nullptr);
  }

 private:
  static TermPtr node(Kind k, std::string s, TermPtr l, TermPtr r) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->label = std::move(s);
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
  }
};

inline bool term_equal(const TermPtr& p, const TermPtr& q) {
  if (p == q) return true;
  if (!p || !q) return false;
  return p->kind == q->kind && p->label == q->label &&
         term_equal(p->left, q->left) && term_equal(p->right, q->right);
}

/// Printed form; parse(print(t)) = t.  Precedence: prefix > restriction
/// > "||" > "+".
inline std::string print_term(const TermPtr& t) {
  // levels: 0 sum, 1 par, 2 restrict, 3 prefix/atom
  struct P {
    static std::string go(const TermPtr& t, int min_level) {
      std::string s;
      int level;
      switch (t->kind) {
        case Term::Kind::Nil:
          return "nil";
        case Term::Kind::Var:
          return t->label;
        case Term::Kind::Prefix:
          s = t->label + "." + go(t->left, 3);
          level = 3;
          break;
        case Term::Kind::Restrict:
          s = "(nu " + t->label + ") " + go(t->left, 2);
          level = 2;
          break;
        case Term::Kind::Par:
          s = go(t->left, 1) + " || " + go(t->right, 2);
          level = 1;
          break;
        case Term::Kind::Sum:
          s = go(t->left, 0) + " + " + go(t->right, 1);
          level = 0;
          break;
        case Term::Kind::Rec:
          s = "rec " + t->label + " . " + go(t->left, 0);
          level = 0;
          break;
        default:
          throw std::logic_error("bad term");
      }
      return level < min_level ? "(" + s + ")" : s;
    }
  };
  return P::go(t, 0);
}

inline void collect_free_vars(const TermPtr& t, std::set<std::string>& bound,
                              std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Nil:
      return;
    case Term::Kind::Var:
      if (!bound.count(t->label)) out.insert(t->label);
      return;
    case Term::Kind::Prefix:
    case Term::Kind::Restrict:
      collect_free_vars(t->left, bound, out);
      return;
    case Term::Kind::Sum:
    case Term::Kind::Par:
      collect_free_vars(t->left, bound, out);
      collect_free_vars(t->right, bound, out);
      return;
    case Term::Kind::Rec: {
      bool added = bound.insert(t->label).second;
      collect_free_vars(t->left, bound, out);
      if (added) bound.erase(t->label);
      return;
    }
  }
}

inline std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collect_free_vars(t, bound, out);
  return out;
}

inline bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

/// Collects all action names appearing in the term (prefixes and
/// restrictions), for building the alphabet.
inline void collect_labels(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Prefix || t->kind == Term::Kind::Restrict)
    out.insert(t->label);
  collect_labels(t->left, out);
  collect_labels(t->right, out);
}

/// Capture-avoiding substitution of q for free occurrences of x.
inline TermPtr substitute(const TermPtr& t, const std::string& x,
                          const TermPtr& q) {
  switch (t->kind) {
    case Term::Kind::Nil:
      return t;
    case Term::Kind::Var:
      return t->label == x ? q : t;
    case Term::Kind::Prefix:
      return Term::prefix(t->label, substitute(t->left, x, q));
    case Term::Kind::Restrict:
      return Term::restrict(t->label, substitute(t->left, x, q));
    case Term::Kind::Sum:
      return Term::sum(substitute(t->left, x, q), substitute(t->right, x, q));
    case Term::Kind::Par:
      return Term::par(substitute(t->left, x, q), substitute(t->right, x, q));
    case Term::Kind::Rec: {
      if (t->label == x) return t;  // shadowed
      auto fv = free_vars(q);
      if (fv.count(t->label)) {
        // rename the binder away from q's free variables
        std::string fresh = t->label;
        std::set<std::string> avoid = fv;
        auto body_fv = free_vars(t->left);
        avoid.insert(body_fv.begin(), body_fv.end());
        do fresh += "'";
        while (avoid.count(fresh));
        auto renamed = substitute(t->left, t->label, Term::var(fresh));
        return Term::rec(fresh, substitute(renamed, x, q));
      }
      return Term::rec(t->label, substitute(t->left, x, q));
    }
  }
  throw std::logic_error("bad term");
}

/// A Var occurrence is guarded iff some ancestor on its path to the
/// binding rec is a prefix.  Returns the unguarded variable names.
inline std::vector<std::string> guardedness_violations(const TermPtr& t) {
  std::vector<std::string> out;
  struct W {
    std::vector<std::string>* out;
    // unguarded = variables bound above with no prefix in between
    void go(const TermPtr& t, std::set<std::string> unguarded) {
      switch (t->kind) {
        case Term::Kind::Nil:
          return;
        case Term::Kind::Var:
          if (unguarded.count(t->label)) out->push_back(t->label);
          return;
        case Term::Kind::Prefix:
          go(t->left, {});
          return;
        case Term::Kind::Restrict:
          go(t->left, std::move(unguarded));
          return;
        case Term::Kind::Sum:
        case Term::Kind::Par:
          go(t->left, unguarded);
          go(t->right, std::move(unguarded));
          return;
        case Term::Kind::Rec:
          unguarded.insert(t->label);
          go(t->left, std::move(unguarded));
          return;
      }
    }
  };
  W w{&out};
  w.go(t, {});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Terminal process names: nil, and parallel/restriction combinations
/// of terminal names.  Used to tell final states from deadlocks.
inline bool is_terminal(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Nil:
      return true;
    case Term::Kind::Restrict:
      return is_terminal(t->left);
    case Term::Kind::Par:
      return is_terminal(t->left) && is_terminal(t->right);
    default:
      return false;
  }
}

}  // namespace hda
