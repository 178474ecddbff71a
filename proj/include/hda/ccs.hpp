#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hda/labels.hpp"
#include "hda/term.hpp"

namespace hda {

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
  std::size_t position;
};

namespace detail {

/// Recursive descent over the grammar
///   sum    := par ('+' par)*
///   par    := restr ('||' restr)*
///   restr  := '(nu' ident ')' restr | prefix
///   prefix := label '.' prefix | atom
///   atom   := 'nil' | 'rec' ident '.' sum | '(' sum ')' | variable
/// with label := 'tau' | '~'* ident.  Prefix binds tightest, then
/// restriction, then '||', then '+'.
class Parser {
 public:
  Parser(const std::string& text, const LabelSet* sigma)
      : text_(text), sigma_(sigma) {}

  TermPtr run() {
    TermPtr t = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(
                                      static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat(const char* s) {
    skip_ws();
    std::size_t n = std::string(s).size();
    if (text_.compare(pos_, n, s) == 0) {
      pos_ += n;
      return true;
    }
    return false;
  }

  bool at_ident() {
    skip_ws();
    return pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_');
  }

  std::string ident() {
    skip_ws();
    if (!at_ident()) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '\''))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  /// Peeks whether an identifier equal to kw starts here.
  bool peek_word(const char* kw) {
    skip_ws();
    std::size_t save = pos_;
    bool ok = at_ident() && ident() == kw;
    pos_ = save;
    return ok;
  }

  TermPtr sum() {
    TermPtr t = par();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '+' ) {
        ++pos_;
        t = Term::sum(t, par());
      } else {
        return t;
      }
    }
  }

  TermPtr par() {
    TermPtr t = restr();
    while (eat("||")) t = Term::par(t, restr());
    return t;
  }

  TermPtr restr() {
    skip_ws();
    std::size_t save = pos_;
    if (eat('(')) {
      if (peek_word("nu")) {
        ident();  // consume 'nu'
        std::string a = label_name();
        if (!eat(')')) fail("expected ')' after restriction");
        return Term::restrict(a, restr());
      }
      pos_ = save;
    }
    return prefix();
  }

  /// A label token: tau, a, or ~a (with ~~a folded back to a).
  std::string label_name() {
    skip_ws();
    bool bar = false;
    while (eat('~')) bar = !bar;
    std::string n = ident();
    if (n == "nil" || n == "rec" || n == "nu")
      fail("reserved word used as label");
    if (n == kTauName) return kTauName;  // tau is self-dual
    if (bar) n = "~" + n;
    if (sigma_ && !sigma_->contains(n)) fail("unknown label " + n);
    return n;
  }

  bool starts_prefix() {
    skip_ws();
    std::size_t save = pos_;
    bool ok = false;
    if (pos_ < text_.size() && (text_[pos_] == '~' || at_ident())) {
      while (eat('~')) {
      }
      if (at_ident()) {
        ident();
        ok = eat('.');
      }
    }
    pos_ = save;
    return ok;
  }

  TermPtr prefix() {
    if (starts_prefix()) {
      skip_ws();
      // a bare keyword never starts a prefix ("rec x . P" is an atom)
      if (!peek_word("rec") && !peek_word("nil")) {
        std::string a = label_name();
        if (!eat('.')) fail("expected '.' after prefix action");
        return Term::prefix(a, prefix());
      }
    }
    return atom();
  }

  TermPtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat('(')) {
      TermPtr t = sum();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    if (peek_word("nil")) {
      ident();
      return Term::nil();
    }
    if (peek_word("rec")) {
      ident();
      std::string x = ident();
      if (x == kTauName) fail("reserved name tau used as rec variable");
      if (x == "nil" || x == "rec" || x == "nu")
        fail("reserved word used as rec variable");
      if (!eat('.')) fail("expected '.' after rec variable");
      bound_.push_back(x);
      TermPtr body = sum();
      bound_.pop_back();
      return Term::rec(x, body);
    }
    std::size_t at = pos_;
    std::string x = ident();
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == x) return Term::var(x);
    throw parse_error("unbound identifier " + x, at);
  }

  const std::string& text_;
  const LabelSet* sigma_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace detail

/// Parses CCS concrete syntax.  When sigma is given, labels must
/// already belong to it; otherwise they are collected freely and the
/// alphabet can be built afterwards with alphabet_of().
inline TermPtr parse(const std::string& text,
                     const LabelSet* sigma = nullptr) {
  return detail::Parser(text, sigma).run();
}

/// The involution-closed alphabet of all actions occurring in a term.
inline LabelSet alphabet_of(const TermPtr& t) {
  std::set<std::string> names;
  collect_labels(t, names);
  return LabelSet::from_names(names);
}

}  // namespace hda
