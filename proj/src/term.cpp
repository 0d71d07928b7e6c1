#include "mtkit/term.hpp"

#include <atomic>
#include <stdexcept>

#include "mtkit/syntax.hpp"

namespace mtkit {

struct Term::Node {
  Kind kind;
  std::string name;
  std::int64_t value = 0;
  std::vector<Term> args;
  bool ground = true;
};

Term::Term() {
  static const std::shared_ptr<const Node> nil = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->name = std::string(kNil);
    return std::shared_ptr<const Node>(std::move(n));
  }();
  node_ = nil;
}

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Term Term::atom(std::string name) {
  if (name == kNil) return Term();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  n->ground = false;
  return Term(std::move(n));
}

Term Term::integer(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  n->value = value;
  return Term(std::move(n));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (functor.empty()) throw std::invalid_argument("compound functor must be nonempty");
  if (args.empty()) throw std::invalid_argument("compound '" + functor + "' needs at least one argument");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compound;
  n->name = std::move(functor);
  for (const auto& a : args) n->ground = n->ground && a.ground();
  n->args = std::move(args);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::int64_t Term::value() const { return node_->value; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::arity() const { return node_->args.size(); }
const Term& Term::arg(std::size_t i) const { return node_->args.at(i); }
bool Term::ground() const { return node_->ground; }

bool Term::is(std::string_view functor, std::size_t n) const {
  if (n == 0) return is_atom() && name() == functor;
  return is_compound() && arity() == n && name() == functor;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Int:
      return a.value() == b.value();
    case Term::Kind::Var:
    case Term::Kind::Atom:
      return a.name() == b.name();
    case Term::Kind::Compound:
      if (a.name() != b.name() || a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!(a.arg(i) == b.arg(i))) return false;
      return true;
  }
  return false;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Term::Kind::Int:
      return a.value() <=> b.value();
    case Term::Kind::Var:
    case Term::Kind::Atom:
      return a.name().compare(b.name()) <=> 0;
    case Term::Kind::Compound: {
      if (auto c = a.arity() <=> b.arity(); c != 0) return c;
      if (auto c = a.name().compare(b.name()) <=> 0; c != 0) return c;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

Term make_list(const std::vector<Term>& items, const Term& tail) {
  Term out = tail;
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    out = Term::compound(std::string(kCons), {*it, out});
  return out;
}

bool is_nil(const Term& t) { return t.is_atom() && t.name() == kNil; }

std::optional<std::vector<Term>> list_items(const Term& t) {
  std::vector<Term> out;
  const Term* cur = &t;
  while (cur->is(kCons, 2)) {
    out.push_back(cur->arg(0));
    cur = &cur->arg(1);
  }
  if (!is_nil(*cur)) return std::nullopt;
  return out;
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out, std::set<std::string, std::less<>>& seen) {
  if (t.ground()) return;
  if (t.is_var()) {
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out, seen);
}

}  // namespace

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  collect_vars(t, out, seen);
  return out;
}

bool occurs(std::string_view var, const Term& t) {
  if (t.ground()) return false;
  if (t.is_var()) return t.name() == var;
  for (const auto& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      out.insert(t.name());
      break;
    case Term::Kind::Compound:
      out.insert(t.name());
      for (const auto& a : t.args()) collect_constants(a, out);
      break;
    default:
      break;
  }
}

namespace {

int op_priority(const Term& t) {
  if (!t.is_compound() || t.arity() != 2) return 0;
  if (t.name() == "=") return 700;
  if (t.name() == "+" || t.name() == "-") return 500;
  return 0;
}

void print_into(const Term& t, std::string& out, int max_priority);

void print_operand(const Term& t, std::string& out, int max_priority) {
  int p = op_priority(t);
  bool neg = t.is_int() && t.value() < 0;
  if (p > max_priority || neg) {
    out += '(';
    print_into(t, out, 1200);
    out += ')';
  } else {
    print_into(t, out, max_priority);
  }
}

void print_into(const Term& t, std::string& out, int /*max_priority*/) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Int:
      out += std::to_string(t.value());
      return;
    case Term::Kind::Atom:
      out += is_nil(t) ? std::string("[]") : quote_atom(t.name());
      return;
    case Term::Kind::Compound:
      break;
  }
  if (t.is(kCons, 2)) {
    out += '[';
    print_into(t.arg(0), out, 999);
    const Term* cur = &t.arg(1);
    while (cur->is(kCons, 2)) {
      out += ',';
      print_into(cur->arg(0), out, 999);
      cur = &cur->arg(1);
    }
    if (!is_nil(*cur)) {
      out += '|';
      print_into(*cur, out, 999);
    }
    out += ']';
    return;
  }
  if (int p = op_priority(t); p != 0) {
    // yfx for + and -, xfx for =
    print_operand(t.arg(0), out, p == 700 ? p - 1 : p);
    out += t.name();
    print_operand(t.arg(1), out, p - 1);
    return;
  }
  out += quote_atom(t.name());
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    print_into(t.arg(i), out, 999);
  }
  out += ')';
}

Term rename_with(const Term& t, const std::map<std::string, std::string, std::less<>>& names) {
  if (t.ground()) return t;
  if (t.is_var()) return Term::var(names.find(t.name())->second);
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(rename_with(a, names));
  return Term::compound(t.name(), std::move(args));
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out, 1200);
  return out;
}

Term rename_apart(const Term& t, std::uint64_t salt) {
  if (t.ground()) return t;
  std::map<std::string, std::string, std::less<>> names;
  const std::string suffix = "_" + std::to_string(salt);
  for (auto& v : variables(t)) names.emplace(v, v + suffix);
  return rename_with(t, names);
}

std::uint64_t fresh_salt() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

Term canonical_vars(const Term& t) {
  if (t.ground()) return t;
  std::map<std::string, std::string, std::less<>> names;
  std::size_t i = 0;
  for (auto& v : variables(t)) {
    std::string n(1, static_cast<char>('A' + i % 26));
    if (i >= 26) n += std::to_string(i / 26);
    names.emplace(v, n);
    ++i;
  }
  return rename_with(t, names);
}

}  // namespace mtkit
