#pragma once

#include <optional>

#include "loopfinder/term.hpp"

namespace lf {

// Simultaneous application. Shared subterms that contain no bound variable are
// returned unchanged, so application preserves the input's sharing structure.
TermPtr apply(const Subst& s, const TermPtr& t);
Atom apply(const Subst& s, const Atom& a);
Clause apply(const Subst& s, const Clause& c);
BinClause apply(const Subst& s, const BinClause& c);
std::vector<Atom> apply(const Subst& s, const std::vector<Atom>& goal);

// compose(s, t): apply t to every binding of s, then add t's bindings for
// variables s leaves unbound. apply(compose(s,t), x) == apply(t, apply(s, x)).
Subst compose(const Subst& s, const Subst& t);

// Most general unifier with occur check; the result is idempotent. Empty
// optional when the inputs do not unify.
std::optional<Subst> mgu(const TermPtr& a, const TermPtr& b);
std::optional<Subst> mgu(const Atom& a, const Atom& b);
std::optional<Subst> mgu_tuple(const std::vector<TermPtr>& a,
                               const std::vector<TermPtr>& b);
std::optional<Subst> mgu_tuple(const std::vector<Atom>& a,
                               const std::vector<Atom>& b);

// One-sided matching: a substitution over the variables of `general` only,
// with apply(result, general) == specific. No occur check; match(X, f(X))
// succeeds with X -> f(X). Variables of `specific` are never bound.
std::optional<Subst> match(const TermPtr& general, const TermPtr& specific);
std::optional<Subst> match(const Atom& general, const Atom& specific);
std::optional<Subst> match_tuple(const std::vector<TermPtr>& general,
                                 const std::vector<TermPtr>& specific);

// Renames every variable to a fresh one. When `renaming` is given, the
// variable-to-variable map used is stored there.
TermPtr rename_apart(const TermPtr& t, Subst* renaming = nullptr);
Atom rename_apart(const Atom& a, Subst* renaming = nullptr);
Clause rename_apart(const Clause& c, Subst* renaming = nullptr);
BinClause rename_apart(const BinClause& c, Subst* renaming = nullptr);

bool is_variant(const TermPtr& a, const TermPtr& b);
bool is_variant(const Atom& a, const Atom& b);
bool is_variant(const BinClause& a, const BinClause& b);

// t is an instance of u: some substitution sends u to t. The pattern u is
// renamed apart first, so shared variables between the two sides carry no
// significance here.
bool is_instance_of(const TermPtr& t, const TermPtr& u);
bool is_instance_of(const Atom& a, const Atom& b);

// a is more general than b (b is an instance of a). Reflexive.
bool is_more_general(const TermPtr& a, const TermPtr& b);
bool is_more_general(const Atom& a, const Atom& b);

// The less general of two terms when they are comparable: s when s is an
// instance of t, t when t is an instance of s, first argument for variants,
// empty optional for incomparable terms.
std::optional<TermPtr> less_general(const TermPtr& s, const TermPtr& t);

}  // namespace lf
