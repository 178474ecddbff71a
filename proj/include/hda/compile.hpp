#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "hda/ccs.hpp"
#include "hda/colimit.hpp"
#include "hda/precubical.hpp"
#include "hda/tensor.hpp"
#include "hda/term.hpp"

namespace hda {

struct CompileOptions {
  unsigned rec_depth = 4;
  std::optional<std::size_t> dim_cap;
  bool decorate = true;
};

class compile_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// A single labelled edge mu: the precubical set of mu.nil.
inline PointedLps prefix_edge(LabelId mu, const TermPtr& decorated_term,
                              LabelSetPtr sigma, bool decorate) {
  PointedLps a;
  a.lps = Lps(std::move(sigma));
  a.lps.add_vertex();
  a.lps.add_vertex();
  a.lps.add_cube(1, {0, 1}, LabelTuple({mu}));
  a.initial = 0;
  if (decorate)
    a.decorations = std::vector<TermPtr>{decorated_term, Term::nil()};
  return a;
}

inline PointedLps compile_node(const TermPtr& t, const CompileOptions& opts,
                               const LabelSetPtr& sigma);

inline PointedLps apply_dim_cap(PointedLps p, const CompileOptions& opts) {
  if (opts.dim_cap && p.lps.dim() > *opts.dim_cap) {
    p.lps = truncate(p.lps, *opts.dim_cap);
    p.dim_capped = true;
  }
  return p;
}

inline PointedLps compile_node(const TermPtr& t, const CompileOptions& opts,
                               const LabelSetPtr& sigma) {
  switch (t->kind) {
    case Term::Kind::Nil: {
      PointedLps p;
      p.lps = Lps(sigma);
      p.lps.add_vertex();
      p.initial = 0;
      if (opts.decorate) p.decorations = std::vector<TermPtr>{Term::nil()};
      return p;
    }
    case Term::Kind::Prefix: {
      LabelId mu = sigma->id(t->label);
      PointedLps body = compile_node(t->left, opts, sigma);
      PointedLps edge = prefix_edge(mu, t, sigma, opts.decorate);
      // glue the edge's target onto the body's initial state
      return apply_dim_cap(glue_pushout(edge, 1, body), opts);
    }
    case Term::Kind::Sum: {
      PointedLps p = coproduct_pointed(compile_node(t->left, opts, sigma),
                                       compile_node(t->right, opts, sigma));
      if (p.decorations) (*p.decorations)[p.initial] = t;
      return p;
    }
    case Term::Kind::Par: {
      PointedLps p = tensor_sigma(compile_node(t->left, opts, sigma),
                                  compile_node(t->right, opts, sigma));
      return apply_dim_cap(std::move(p), opts);
    }
    case Term::Kind::Restrict:
      return restrict_pointed(compile_node(t->left, opts, sigma),
                              sigma->id(t->label));
    case Term::Kind::Rec: {
      // finite approximant of the unfolding colimit
      TermPtr unfolded = Term::nil();
      for (unsigned i = 0; i < opts.rec_depth; ++i)
        unfolded = substitute(t->left, t->label, unfolded);
      PointedLps p = compile_node(unfolded, opts, sigma);
      p.approximate = true;
      return p;
    }
    case Term::Kind::Var:
      throw compile_error("free variable " + t->label + " at compile time");
  }
  throw compile_error("bad term");
}

}  // namespace detail

/// Compiles a closed guarded CCS term into its labelled precubical set
/// construct by construct: nil is a point, prefixing glues an
/// edge, sum is the pointed coproduct, restriction the label pullback,
/// parallel composition the synchronized tensor product and recursion a
/// finite unfolding.
inline PointedLps compile(const TermPtr& t, const CompileOptions& opts,
                          LabelSetPtr sigma) {
  if (!is_closed(t)) throw compile_error("term is not closed");
  auto unguarded = guardedness_violations(t);
  if (!unguarded.empty())
    throw compile_error("unguarded recursion variable " + unguarded.front());
  return detail::compile_node(t, opts, sigma);
}

inline PointedLps compile(const TermPtr& t, const CompileOptions& opts = {}) {
  return compile(t, opts, std::make_shared<const LabelSet>(alphabet_of(t)));
}

}  // namespace hda
