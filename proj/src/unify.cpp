#include "loopfinder/unify.hpp"

#include <utility>
#include <vector>

namespace lf {

namespace {

struct ApplyCtx {
  const Subst& s;
  // A node held by a single owner cannot repeat inside one walk, so only
  // shared nodes earn a memo entry; the list stays short enough to scan.
  std::vector<std::pair<const Term*, TermPtr>> memo;

  explicit ApplyCtx(const Subst& s) : s(s) {}

  TermPtr walk(const TermPtr& t) {
    if (t->ground) return t;
    if (t->is_var()) {
      const TermPtr* b = s.get(t->var_id());
      return b ? *b : t;
    }
    if (!s.binds_in_range(t->var_lo, t->var_hi)) return t;
    bool shared = t.use_count() > 1;
    if (shared) {
      for (const auto& [node, out] : memo) {
        if (node == t.get()) return out;
      }
    }
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    bool changed = false;
    for (const auto& a : t->args) {
      TermPtr w = walk(a);
      changed = changed || w.get() != a.get();
      args.push_back(std::move(w));
    }
    TermPtr out = changed ? mkfun(t->name, std::move(args)) : t;
    if (shared) memo.emplace_back(t.get(), out);
    return out;
  }
};

}  // namespace

TermPtr apply(const Subst& s, const TermPtr& t) {
  if (s.is_empty()) return t;
  ApplyCtx ctx(s);
  return ctx.walk(t);
}

Atom apply(const Subst& s, const Atom& a) {
  if (s.is_empty()) return a;
  ApplyCtx ctx(s);
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(ctx.walk(t));
  return out;
}

Clause apply(const Subst& s, const Clause& c) {
  if (s.is_empty()) return c;
  ApplyCtx ctx(s);
  Clause out;
  out.head.pred = c.head.pred;
  for (const auto& t : c.head.args) out.head.args.push_back(ctx.walk(t));
  out.body.reserve(c.body.size());
  for (const auto& a : c.body) {
    Atom b;
    b.pred = a.pred;
    for (const auto& t : a.args) b.args.push_back(ctx.walk(t));
    out.body.push_back(std::move(b));
  }
  return out;
}

BinClause apply(const Subst& s, const BinClause& c) {
  if (s.is_empty()) return c;
  ApplyCtx ctx(s);
  BinClause out;
  out.head.pred = c.head.pred;
  for (const auto& t : c.head.args) out.head.args.push_back(ctx.walk(t));
  out.body.pred = c.body.pred;
  for (const auto& t : c.body.args) out.body.args.push_back(ctx.walk(t));
  return out;
}

std::vector<Atom> apply(const Subst& s, const std::vector<Atom>& goal) {
  if (s.is_empty()) return goal;
  ApplyCtx ctx(s);
  std::vector<Atom> out;
  out.reserve(goal.size());
  for (const auto& a : goal) {
    Atom b;
    b.pred = a.pred;
    for (const auto& t : a.args) b.args.push_back(ctx.walk(t));
    out.push_back(std::move(b));
  }
  return out;
}

Subst compose(const Subst& s, const Subst& t) {
  Subst out;
  for (const auto& [id, u] : s.bindings()) out.set(id, apply(t, u));
  for (const auto& [id, u] : t.bindings()) {
    if (!s.get(id)) out.set(id, u);
  }
  return out;
}

namespace {

// Triangular unification state: bindings may chain through other bound
// variables. The occur check runs against the resolved form, so a successful
// run never creates a cycle and extraction terminates.
struct UnifyCtx {
  std::vector<std::pair<int64_t, TermPtr>> bind;

  const TermPtr* lookup(int64_t id) const {
    for (const auto& [bid, t] : bind) {
      if (bid == id) return &t;
    }
    return nullptr;
  }

  // True when some bound variable id lies in [lo, hi]. A subterm whose id
  // range misses every binding cannot be affected by this unifier.
  bool binds_in_range(int64_t lo, int64_t hi) const {
    for (const auto& [bid, t] : bind) {
      if (bid >= lo && bid <= hi) return true;
    }
    return false;
  }

  TermPtr shallow(TermPtr t) {
    while (t->is_var()) {
      const TermPtr* b = lookup(t->var_id());
      if (!b) return t;
      t = *b;
    }
    return t;
  }

  bool occurs(int64_t id, const TermPtr& t0) {
    if (t0->ground) return false;
    TermPtr t = shallow(t0);
    if (t->ground) return false;
    if (t->is_var()) return t->var_id() == id;
    if ((id < t->var_lo || id > t->var_hi) &&
        !binds_in_range(t->var_lo, t->var_hi)) {
      return false;
    }
    for (const auto& a : t->args) {
      if (occurs(id, a)) return true;
    }
    return false;
  }

  bool unify(const TermPtr& a0, const TermPtr& b0) {
    TermPtr a = shallow(a0);
    TermPtr b = shallow(b0);
    if (a->is_var() && b->is_var() && a->var_id() == b->var_id()) return true;
    if (a->is_var()) {
      if (occurs(a->var_id(), b)) return false;
      bind.emplace_back(a->var_id(), b);
      return true;
    }
    if (b->is_var()) {
      if (occurs(b->var_id(), a)) return false;
      bind.emplace_back(b->var_id(), a);
      return true;
    }
    if (a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i) {
      if (!unify(a->args[i], b->args[i])) return false;
    }
    return true;
  }

  TermPtr resolve(const TermPtr& t0,
                  std::vector<std::pair<const Term*, TermPtr>>& memo) {
    TermPtr t = shallow(t0);
    if (t->ground || t->is_var()) return t;
    if (!binds_in_range(t->var_lo, t->var_hi)) return t;
    bool tracked = t.use_count() > 1;
    if (tracked) {
      for (const auto& [node, out] : memo) {
        if (node == t.get()) return out;
      }
    }
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    bool changed = false;
    for (const auto& a : t->args) {
      TermPtr w = resolve(a, memo);
      changed = changed || w.get() != a.get();
      args.push_back(std::move(w));
    }
    TermPtr out = changed ? mkfun(t->name, std::move(args)) : t;
    if (tracked) memo.emplace_back(t.get(), out);
    return out;
  }

  Subst extract() {
    Subst out;
    std::vector<std::pair<const Term*, TermPtr>> memo;
    for (const auto& [id, t] : bind) out.set(id, resolve(t, memo));
    return out;
  }
};

}  // namespace

std::optional<Subst> mgu(const TermPtr& a, const TermPtr& b) {
  UnifyCtx ctx;
  if (!ctx.unify(a, b)) return std::nullopt;
  return ctx.extract();
}

std::optional<Subst> mgu(const Atom& a, const Atom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
  UnifyCtx ctx;
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!ctx.unify(a.args[i], b.args[i])) return std::nullopt;
  }
  return ctx.extract();
}

std::optional<Subst> mgu_tuple(const std::vector<TermPtr>& a,
                               const std::vector<TermPtr>& b) {
  if (a.size() != b.size()) return std::nullopt;
  UnifyCtx ctx;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!ctx.unify(a[i], b[i])) return std::nullopt;
  }
  return ctx.extract();
}

std::optional<Subst> mgu_tuple(const std::vector<Atom>& a,
                               const std::vector<Atom>& b) {
  if (a.size() != b.size()) return std::nullopt;
  UnifyCtx ctx;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].pred != b[i].pred || a[i].args.size() != b[i].args.size()) {
      return std::nullopt;
    }
    for (size_t j = 0; j < a[i].args.size(); ++j) {
      if (!ctx.unify(a[i].args[j], b[i].args[j])) return std::nullopt;
    }
  }
  return ctx.extract();
}

namespace {

// Matching records a binding for every variable of the general side it meets,
// identity bindings included; a second occurrence must map to an equal
// subterm. Identity bindings are dropped from the extracted substitution.
struct MatchCtx {
  std::vector<std::pair<int64_t, TermPtr>> bind;

  bool walk(const TermPtr& g, const TermPtr& s) {
    if (g->is_var()) {
      for (const auto& [id, t] : bind) {
        if (id == g->var_id()) return term_eq(t, s);
      }
      bind.emplace_back(g->var_id(), s);
      return true;
    }
    if (s->is_var()) return false;
    if (g->name != s->name || g->args.size() != s->args.size()) return false;
    for (size_t i = 0; i < g->args.size(); ++i) {
      if (!walk(g->args[i], s->args[i])) return false;
    }
    return true;
  }

  Subst extract() {
    Subst out;
    for (const auto& [id, t] : bind) out.set(id, t);
    return out;
  }
};

}  // namespace

std::optional<Subst> match(const TermPtr& general, const TermPtr& specific) {
  MatchCtx ctx;
  if (!ctx.walk(general, specific)) return std::nullopt;
  return ctx.extract();
}

std::optional<Subst> match(const Atom& general, const Atom& specific) {
  if (general.pred != specific.pred ||
      general.args.size() != specific.args.size()) {
    return std::nullopt;
  }
  MatchCtx ctx;
  for (size_t i = 0; i < general.args.size(); ++i) {
    if (!ctx.walk(general.args[i], specific.args[i])) return std::nullopt;
  }
  return ctx.extract();
}

std::optional<Subst> match_tuple(const std::vector<TermPtr>& general,
                                 const std::vector<TermPtr>& specific) {
  if (general.size() != specific.size()) return std::nullopt;
  MatchCtx ctx;
  for (size_t i = 0; i < general.size(); ++i) {
    if (!ctx.walk(general[i], specific[i])) return std::nullopt;
  }
  return ctx.extract();
}

namespace {

struct RenameCtx {
  std::vector<std::pair<int64_t, TermPtr>> map;

  TermPtr walk(const TermPtr& t) {
    if (t->ground) return t;
    if (t->is_var()) {
      for (const auto& [id, v] : map) {
        if (id == t->var_id()) return v;
      }
      TermPtr v = fresh_var();
      map.emplace_back(t->var_id(), v);
      return v;
    }
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) args.push_back(walk(a));
    return mkfun(t->name, std::move(args));
  }

  Atom walk(const Atom& a) {
    Atom out;
    out.pred = a.pred;
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(walk(t));
    return out;
  }

  void store(Subst* renaming) const {
    if (!renaming) return;
    for (const auto& [id, v] : map) renaming->set(id, v);
  }
};

}  // namespace

TermPtr rename_apart(const TermPtr& t, Subst* renaming) {
  RenameCtx ctx;
  TermPtr out = ctx.walk(t);
  ctx.store(renaming);
  return out;
}

Atom rename_apart(const Atom& a, Subst* renaming) {
  RenameCtx ctx;
  Atom out = ctx.walk(a);
  ctx.store(renaming);
  return out;
}

Clause rename_apart(const Clause& c, Subst* renaming) {
  RenameCtx ctx;
  Clause out;
  out.head = ctx.walk(c.head);
  out.body.reserve(c.body.size());
  for (const auto& a : c.body) out.body.push_back(ctx.walk(a));
  ctx.store(renaming);
  return out;
}

BinClause rename_apart(const BinClause& c, Subst* renaming) {
  RenameCtx ctx;
  BinClause out;
  out.head = ctx.walk(c.head);
  out.body = ctx.walk(c.body);
  ctx.store(renaming);
  return out;
}

bool is_variant(const TermPtr& a, const TermPtr& b) {
  return term_eq(canonical_form(a), canonical_form(b));
}

bool is_variant(const Atom& a, const Atom& b) {
  return atom_eq(canonical_form(a), canonical_form(b));
}

bool is_variant(const BinClause& a, const BinClause& b) {
  BinClause ca = canonical_form(a);
  BinClause cb = canonical_form(b);
  return atom_eq(ca.head, cb.head) && atom_eq(ca.body, cb.body);
}

bool is_instance_of(const TermPtr& t, const TermPtr& u) {
  return match(rename_apart(u), t).has_value();
}

bool is_instance_of(const Atom& a, const Atom& b) {
  return match(rename_apart(b), a).has_value();
}

bool is_more_general(const TermPtr& a, const TermPtr& b) {
  return is_instance_of(b, a);
}

bool is_more_general(const Atom& a, const Atom& b) {
  return is_instance_of(b, a);
}

std::optional<TermPtr> less_general(const TermPtr& s, const TermPtr& t) {
  if (is_instance_of(s, t)) return s;
  if (is_instance_of(t, s)) return t;
  return std::nullopt;
}

}  // namespace lf
