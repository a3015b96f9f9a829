#include "loopfinder/term.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace lf {

namespace {

std::atomic<int64_t> g_var_counter{0};

std::string default_var_name(int64_t id) {
  std::ostringstream os;
  os << "_G" << id;
  return os.str();
}

}  // namespace

TermPtr mkvar(int64_t id, std::string name) {
  auto t = std::make_shared<Term>();
  t->var = id;
  t->name = name.empty() ? default_var_name(id) : std::move(name);
  t->var_lo = id;
  t->var_hi = id;
  return t;
}

TermPtr mkfun(std::string functor, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->name = std::move(functor);
  t->args = std::move(args);
  for (const auto& a : t->args) {
    t->var_lo = std::min(t->var_lo, a->var_lo);
    t->var_hi = std::max(t->var_hi, a->var_hi);
  }
  t->ground = t->var_lo > t->var_hi;
  return t;
}

TermPtr mkconst(std::string name) { return mkfun(std::move(name), {}); }

int64_t fresh_var_id() { return ++g_var_counter; }

TermPtr fresh_var(std::string name) {
  int64_t id = fresh_var_id();
  return mkvar(id, std::move(name));
}

Clause to_clause(const BinClause& c) {
  Clause out;
  out.head = c.head;
  if (!c.body.is_true()) out.body.push_back(c.body);
  return out;
}

std::vector<Clause> to_clauses(const std::vector<BinClause>& cs) {
  std::vector<Clause> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(to_clause(c));
  return out;
}

std::string pred_indicator(const std::string& name, size_t arity) {
  std::ostringstream os;
  os << name << "/" << arity;
  return os.str();
}

Signature Program::signature() const {
  Signature sig;
  for (const auto& c : clauses) {
    sig[c.head.pred] = c.head.arity();
    for (const auto& a : c.body) {
      if (!a.is_true()) sig[a.pred] = a.arity();
    }
  }
  return sig;
}

const TermPtr* Subst::get(int64_t id) const {
  auto it = std::lower_bound(
      bind_.begin(), bind_.end(), id,
      [](const auto& entry, int64_t key) { return entry.first < key; });
  return it == bind_.end() || it->first != id ? nullptr : &it->second;
}

void Subst::set(int64_t id, TermPtr t) {
  if (t->is_var() && t->var_id() == id) return;
  auto it = std::lower_bound(
      bind_.begin(), bind_.end(), id,
      [](const auto& entry, int64_t key) { return entry.first < key; });
  if (it != bind_.end() && it->first == id) {
    it->second = std::move(t);
  } else {
    bind_.insert(it, {id, std::move(t)});
  }
}

bool Subst::binds_in_range(int64_t lo, int64_t hi) const {
  auto it = std::lower_bound(
      bind_.begin(), bind_.end(), lo,
      [](const auto& entry, int64_t key) { return entry.first < key; });
  return it != bind_.end() && it->first <= hi;
}

VarSet Subst::dom() const {
  VarSet out;
  for (const auto& [id, _] : bind_) out.insert(id);
  return out;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->is_var() != b->is_var()) return false;
  if (a->is_var()) return a->var_id() == b->var_id();
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i) {
    if (!term_eq(a->args[i], b->args[i])) return false;
  }
  return true;
}

bool atom_eq(const Atom& a, const Atom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!term_eq(a.args[i], b.args[i])) return false;
  }
  return true;
}

void collect_vars(const TermPtr& t, VarSet& out) {
  if (t->ground) return;
  if (t->is_var()) {
    out.insert(t->var_id());
    return;
  }
  for (const auto& a : t->args) collect_vars(a, out);
}

void collect_vars(const Atom& a, VarSet& out) {
  for (const auto& t : a.args) collect_vars(t, out);
}

void collect_vars(const Clause& c, VarSet& out) {
  collect_vars(c.head, out);
  for (const auto& a : c.body) collect_vars(a, out);
}

void collect_vars(const BinClause& c, VarSet& out) {
  collect_vars(c.head, out);
  collect_vars(c.body, out);
}

VarSet vars_of(const TermPtr& t) {
  VarSet out;
  collect_vars(t, out);
  return out;
}

VarSet vars_of(const Atom& a) {
  VarSet out;
  collect_vars(a, out);
  return out;
}

VarSet vars_of(const Clause& c) {
  VarSet out;
  collect_vars(c, out);
  return out;
}

VarSet vars_of(const BinClause& c) {
  VarSet out;
  collect_vars(c, out);
  return out;
}

bool is_ground(const TermPtr& t) { return t->ground; }

namespace {

// Canonical variable k (0-based) gets id -(k+1) and a spreadsheet-style name:
// A..Z, then A1..Z1, and so on.
std::string canonical_var_name(size_t k) {
  std::string out(1, static_cast<char>('A' + k % 26));
  if (k >= 26) out += std::to_string(k / 26);
  return out;
}

struct Canonicalizer {
  std::unordered_map<int64_t, TermPtr> seen;

  TermPtr walk(const TermPtr& t) {
    if (t->is_var()) {
      auto it = seen.find(t->var_id());
      if (it != seen.end()) return it->second;
      size_t k = seen.size();
      TermPtr v = mkvar(-static_cast<int64_t>(k) - 1, canonical_var_name(k));
      seen.emplace(t->var_id(), v);
      return v;
    }
    if (t->args.empty()) return t;
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    bool changed = false;
    for (const auto& a : t->args) {
      TermPtr w = walk(a);
      changed = changed || w.get() != a.get();
      args.push_back(std::move(w));
    }
    if (!changed) return t;
    return mkfun(t->name, std::move(args));
  }

  Atom walk(const Atom& a) {
    Atom out;
    out.pred = a.pred;
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(walk(t));
    return out;
  }
};

}  // namespace

TermPtr canonical_form(const TermPtr& t) {
  Canonicalizer c;
  return c.walk(t);
}

Atom canonical_form(const Atom& a) {
  Canonicalizer c;
  return c.walk(a);
}

Clause canonical_form(const Clause& c) {
  Canonicalizer cz;
  Clause out;
  out.head = cz.walk(c.head);
  out.body.reserve(c.body.size());
  for (const auto& a : c.body) out.body.push_back(cz.walk(a));
  return out;
}

BinClause canonical_form(const BinClause& c) {
  Canonicalizer cz;
  BinClause out;
  out.head = cz.walk(c.head);
  out.body = cz.walk(c.body);
  return out;
}

namespace {

bool plain_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  }
  return true;
}

std::string quote_name(const std::string& s) {
  if (plain_name(s)) return s;
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'' || ch == '\\') out += '\\';
    out += ch;
  }
  out += "'";
  return out;
}

void render_term(const TermPtr& t, std::ostream& os);

// Lists print in bracket sugar; a non-list tail ends with `|`.
void render_list(const TermPtr& t, std::ostream& os) {
  os << "[";
  const Term* cur = t.get();
  bool first = true;
  while (true) {
    if (!first) os << ",";
    render_term(cur->args[0], os);
    first = false;
    const TermPtr& tail = cur->args[1];
    if (!tail->is_var() && tail->name == "[]" && tail->args.empty()) break;
    if (!tail->is_var() && tail->name == "." && tail->args.size() == 2) {
      cur = tail.get();
      continue;
    }
    os << "|";
    render_term(tail, os);
    break;
  }
  os << "]";
}

void render_term(const TermPtr& t, std::ostream& os) {
  if (t->is_var()) {
    os << t->name;
    return;
  }
  if (t->name == "." && t->args.size() == 2) {
    render_list(t, os);
    return;
  }
  if (t->name == "[]" && t->args.empty()) {
    os << "[]";
    return;
  }
  os << quote_name(t->name);
  if (!t->args.empty()) {
    os << "(";
    for (size_t i = 0; i < t->args.size(); ++i) {
      if (i) os << ", ";
      render_term(t->args[i], os);
    }
    os << ")";
  }
}

void render_atom(const Atom& a, std::ostream& os) {
  os << quote_name(a.pred);
  if (!a.args.empty()) {
    os << "(";
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (i) os << ", ";
      render_term(a.args[i], os);
    }
    os << ")";
  }
}

}  // namespace

std::string render(const TermPtr& t) {
  std::ostringstream os;
  render_term(t, os);
  return os.str();
}

std::string render(const Atom& a) {
  std::ostringstream os;
  render_atom(a, os);
  return os.str();
}

std::string render(const Clause& c) {
  std::ostringstream os;
  render_atom(c.head, os);
  if (!c.body.empty()) {
    os << " :- ";
    for (size_t i = 0; i < c.body.size(); ++i) {
      if (i) os << ", ";
      render_atom(c.body[i], os);
    }
  }
  os << ".";
  return os.str();
}

std::string render(const BinClause& c) {
  std::ostringstream os;
  render_atom(c.head, os);
  os << " :- ";
  render_atom(c.body, os);
  os << ".";
  return os.str();
}

std::string render(const Program& p) {
  std::ostringstream os;
  for (const auto& c : p.clauses) os << render(c) << "\n";
  return os.str();
}

std::string render(const Subst& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [id, t] : s.bindings()) {
    if (!first) os << ", ";
    first = false;
    os << "_G" << id << " -> " << render(t);
  }
  os << "}";
  return os.str();
}

std::string canonical_text(const TermPtr& t) { return render(canonical_form(t)); }
std::string canonical_text(const Atom& a) { return render(canonical_form(a)); }
std::string canonical_text(const Clause& c) { return render(canonical_form(c)); }
std::string canonical_text(const BinClause& c) { return render(canonical_form(c)); }

}  // namespace lf
