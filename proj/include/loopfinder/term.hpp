#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lf {

struct Term;
using TermPtr = std::shared_ptr<const Term>;
using VarSet = std::set<int64_t>;

// A symbolic term: either a variable or a compound. Constants are compounds of
// arity 0. Terms are immutable once built and shared freely; operations that
// rewrite terms preserve subterm sharing where nothing changed.
struct Term {
  std::optional<int64_t> var;  // set iff the term is a variable
  std::string name;            // variable display name, or the function symbol
  std::vector<TermPtr> args;   // empty for variables and constants
  bool ground = false;         // no variable occurs anywhere below
  // Range of variable ids occurring anywhere below; empty (lo > hi) on ground
  // terms. A variable outside the range cannot occur in the term.
  int64_t var_lo = INT64_MAX;
  int64_t var_hi = INT64_MIN;

  bool is_var() const { return var.has_value(); }
  int64_t var_id() const { return *var; }
  size_t arity() const { return args.size(); }
};

TermPtr mkvar(int64_t id, std::string name = {});
TermPtr mkfun(std::string functor, std::vector<TermPtr> args);
TermPtr mkconst(std::string name);

// Fresh variable ids come from one atomic session counter. Every id is handed
// out exactly once, so freshly renamed structures are disjoint from anything
// built earlier in the process. Canonical forms use a separate negative id
// range and never collide with session variables.
int64_t fresh_var_id();
TermPtr fresh_var(std::string name = {});

struct Atom {
  std::string pred;
  std::vector<TermPtr> args;

  size_t arity() const { return args.size(); }
  bool is_true() const { return pred == "true" && args.empty(); }
  static Atom truth() { return Atom{"true", {}}; }
};

// Definite clause: head plus an ordered body. A fact has an empty body.
struct Clause {
  Atom head;
  std::vector<Atom> body;
};

// Binary clause: exactly one body slot; the reserved atom `true` stands for
// the empty body.
struct BinClause {
  Atom head;
  Atom body;

  bool is_fact() const { return body.is_true(); }
};

Clause to_clause(const BinClause& c);
std::vector<Clause> to_clauses(const std::vector<BinClause>& cs);

// Relation symbol -> arity. Each symbol has a unique arity within a program;
// the parser enforces this.
using Signature = std::map<std::string, size_t>;

std::string pred_indicator(const std::string& name, size_t arity);

struct Program {
  std::vector<Clause> clauses;

  // All relation symbols occurring in heads or bodies, except `true`.
  Signature signature() const;
};

// Substitution: finite map from variable ids to terms, applied simultaneously.
// Bindings are proper (never x -> x); beyond that a binding may mention its own
// variable, which matching legitimately produces.
class Subst {
 public:
  bool is_empty() const { return bind_.empty(); }
  size_t size() const { return bind_.size(); }

  // Null when the variable is unbound.
  const TermPtr* get(int64_t id) const;
  void set(int64_t id, TermPtr t);

  // True when some bound variable id lies in [lo, hi].
  bool binds_in_range(int64_t lo, int64_t hi) const;

  // Pairs stay sorted by variable id.
  const std::vector<std::pair<int64_t, TermPtr>>& bindings() const {
    return bind_;
  }
  VarSet dom() const;

 private:
  std::vector<std::pair<int64_t, TermPtr>> bind_;
};

bool term_eq(const TermPtr& a, const TermPtr& b);
bool atom_eq(const Atom& a, const Atom& b);

void collect_vars(const TermPtr& t, VarSet& out);
void collect_vars(const Atom& a, VarSet& out);
void collect_vars(const Clause& c, VarSet& out);
void collect_vars(const BinClause& c, VarSet& out);

VarSet vars_of(const TermPtr& t);
VarSet vars_of(const Atom& a);
VarSet vars_of(const Clause& c);
VarSet vars_of(const BinClause& c);

bool is_ground(const TermPtr& t);

// Canonical form renumbers variables by first occurrence in a fixed traversal
// (head before body, arguments left to right, depth first) into the reserved
// negative id range with display names A, B, C, ... Two inputs have equal
// canonical forms iff they are variants.
TermPtr canonical_form(const TermPtr& t);
Atom canonical_form(const Atom& a);
Clause canonical_form(const Clause& c);
BinClause canonical_form(const BinClause& c);

// Plain text in the concrete syntax the parser reads back: list sugar, quoted
// names where needed, `:-` between head and body, terminating period.
std::string render(const TermPtr& t);
std::string render(const Atom& a);
std::string render(const Clause& c);
std::string render(const BinClause& c);
std::string render(const Program& p);
std::string render(const Subst& s);

std::string canonical_text(const TermPtr& t);
std::string canonical_text(const Atom& a);
std::string canonical_text(const Clause& c);
std::string canonical_text(const BinClause& c);

}  // namespace lf
