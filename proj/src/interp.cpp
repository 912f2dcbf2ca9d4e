#include "qpl/interp.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>

#include "qpl/errors.hpp"
#include "qpl/ident.hpp"

namespace qpl {

Value sort_key(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return to_lower(*s);
  return v;
}

bool like_match(std::string_view text, std::string_view pattern) {
  // Iterative wildcard match with backtracking on the last `%`.
  std::size_t t = 0, p = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && pattern[p] == '%') {
      star = p++;
      mark = t;
    } else if (p < pattern.size() &&
               (pattern[p] == '_' || ascii_lower(pattern[p]) == ascii_lower(text[t]))) {
      ++p;
      ++t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '%') ++p;
  return p == pattern.size();
}

Value literal_value(const Literal& l) {
  switch (l.kind) {
    case Literal::Kind::String:
      return l.text;
    case Literal::Kind::Integer: {
      std::int64_t i = 0;
      auto [p, ec] = std::from_chars(l.text.data(), l.text.data() + l.text.size(), i);
      if (ec == std::errc() && p == l.text.data() + l.text.size()) return i;
      [[fallthrough]];
    }
    case Literal::Kind::Decimal: {
      double d = 0;
      std::from_chars(l.text.data(), l.text.data() + l.text.size(), d);
      return d;
    }
  }
  return Null{};
}

namespace {

using Truth = std::optional<bool>;  // nullopt is SQL UNKNOWN

Truth truth_and(Truth a, Truth b) {
  if (a == false || b == false) return false;
  if (!a || !b) return std::nullopt;
  return true;
}

Truth truth_or(Truth a, Truth b) {
  if (a == true || b == true) return true;
  if (!a || !b) return std::nullopt;
  return false;
}

std::string like_text(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* d = std::get_if<double>(&v)) {
    // SQLite renders integral reals with a trailing ".0".
    return to_display(*d);
  }
  return to_display(v);
}

// A column reference bound to a source (0 = first input / table, 1 = second) and index.
struct Slot {
  int source = 0;
  std::size_t index = 0;
};

class Binder {
 public:
  Binder(const QplNode& node, std::vector<const Relation*> sources)
      : node_(node), sources_(std::move(sources)) {}

  Slot bind(const ColumnRef& ref) const {
    int source = 0;
    if (is_binary(node_.op)) {
      if (!ref.step) throw EvalError("unqualified column " + ref.name + " in binary step");
      auto it = std::find(node_.inputs.begin(), node_.inputs.end(), *ref.step);
      if (it == node_.inputs.end()) {
        throw EvalError("#" + std::to_string(*ref.step) + " is not an input");
      }
      source = static_cast<int>(it - node_.inputs.begin());
    }
    int idx = sources_.at(static_cast<std::size_t>(source))->index_of(ref.name);
    if (idx < 0) throw EvalError("unknown column " + ref.name);
    return Slot{source, static_cast<std::size_t>(idx)};
  }

  const RelColumn& column(const Slot& s) const {
    return sources_.at(static_cast<std::size_t>(s.source))->columns.at(s.index);
  }

 private:
  const QplNode& node_;
  std::vector<const Relation*> sources_;
};

struct BoundOperand {
  std::optional<Slot> slot;
  Value literal;
};

struct BoundComparison {
  Connective connective;
  CompareOp op;
  BoundOperand lhs;
  std::optional<BoundOperand> rhs;
};

class BoundPredicate {
 public:
  BoundPredicate(const Predicate& p, const Binder& binder) {
    auto bind = [&](const Operand& o) {
      BoundOperand b;
      if (const auto* ref = std::get_if<ColumnRef>(&o)) {
        b.slot = binder.bind(*ref);
      } else {
        b.literal = literal_value(std::get<Literal>(o));
      }
      return b;
    };
    for (const auto& t : p.terms) {
      BoundComparison c{t.connective, t.comparison.op, bind(t.comparison.lhs), std::nullopt};
      if (t.comparison.rhs) c.rhs = bind(*t.comparison.rhs);
      terms_.push_back(std::move(c));
    }
  }

  // `rows[s]` is the current row of source s.
  Truth eval(const std::vector<const Row*>& rows) const {
    Truth acc;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      Truth t = eval_comparison(terms_[i], rows);
      if (i == 0) {
        acc = t;
      } else {
        acc = terms_[i].connective == Connective::And ? truth_and(acc, t) : truth_or(acc, t);
      }
    }
    return acc;
  }

 private:
  static const Value& value(const BoundOperand& o, const std::vector<const Row*>& rows) {
    if (!o.slot) return o.literal;
    return rows.at(static_cast<std::size_t>(o.slot->source))->at(o.slot->index);
  }

  static Truth eval_comparison(const BoundComparison& c, const std::vector<const Row*>& rows) {
    const Value& a = value(c.lhs, rows);
    if (c.op == CompareOp::IsNull) return is_null(a);
    if (c.op == CompareOp::IsNotNull) return !is_null(a);
    const Value& b = value(*c.rhs, rows);
    if (is_null(a) || is_null(b)) return std::nullopt;
    if (c.op == CompareOp::Like) return like_match(like_text(a), like_text(b));
    if (c.op == CompareOp::NotLike) return !like_match(like_text(a), like_text(b));
    auto ord = compare_values(a, b);
    switch (c.op) {
      case CompareOp::Eq: return ord == 0;
      case CompareOp::Ne: return ord != 0;
      case CompareOp::Lt: return ord < 0;
      case CompareOp::Le: return ord <= 0;
      case CompareOp::Gt: return ord > 0;
      case CompareOp::Ge: return ord >= 0;
      default: break;
    }
    return std::nullopt;
  }

  std::vector<BoundComparison> terms_;
};

struct RowLess {
  bool operator()(const Row& a, const Row& b) const {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      auto c = compare_values(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  }
};

void deduplicate(Relation& r) {
  std::vector<Row> kept;
  // First occurrence wins; a sorted index keeps this O(n log n).
  std::set<Row, RowLess> seen;
  for (auto& row : r.rows) {
    if (seen.insert(row).second) kept.push_back(std::move(row));
  }
  r.rows = std::move(kept);
}

std::vector<RelColumn> header(const QplNode& node, const Binder& binder) {
  std::vector<RelColumn> cols;
  const auto names = output_names(node);
  for (std::size_t i = 0; i < node.output.size(); ++i) {
    SimpleType type = SimpleType::Number;
    if (const auto* ref = std::get_if<ColumnRef>(&node.output[i])) {
      type = binder.column(binder.bind(*ref)).type;
    } else {
      const auto& a = std::get<AggregateExpr>(node.output[i]);
      if (a.argument && (a.func == AggFunc::Min || a.func == AggFunc::Max)) {
        type = binder.column(binder.bind(ColumnRef{std::nullopt, *a.argument})).type;
      }
    }
    cols.push_back(RelColumn{names[i], type});
  }
  return cols;
}

std::vector<Slot> output_slots(const QplNode& node, const Binder& binder) {
  std::vector<Slot> slots;
  for (const auto& o : node.output) {
    const auto* ref = std::get_if<ColumnRef>(&o);
    if (!ref) throw EvalError("aggregate output outside an Aggregate step");
    slots.push_back(binder.bind(*ref));
  }
  return slots;
}

Row project(const std::vector<Slot>& slots, const std::vector<const Row*>& rows) {
  Row out;
  out.reserve(slots.size());
  for (const auto& s : slots) out.push_back(rows.at(static_cast<std::size_t>(s.source))->at(s.index));
  return out;
}

// Scan and Filter: select, project, optionally deduplicate.
Relation select_project(const QplNode& node, const Relation& in) {
  Binder binder(node, {&in});
  Relation out;
  out.columns = header(node, binder);
  auto slots = output_slots(node, binder);
  std::optional<BoundPredicate> pred;
  if (node.predicate) pred.emplace(*node.predicate, binder);
  for (const auto& row : in.rows) {
    std::vector<const Row*> ctx{&row};
    if (pred && pred->eval(ctx) != true) continue;
    out.rows.push_back(project(slots, ctx));
  }
  if (node.distinct.value_or(false)) deduplicate(out);
  return out;
}

Value aggregate(const AggregateExpr& a, const std::vector<const Row*>& group,
                std::optional<std::size_t> arg) {
  if (!arg) return static_cast<std::int64_t>(group.size());
  std::vector<Value> vals;
  for (const Row* r : group) {
    const Value& v = r->at(*arg);
    if (!is_null(v)) vals.push_back(v);
  }
  if (a.distinct) {
    std::vector<Value> unique;
    for (auto& v : vals) {
      if (std::none_of(unique.begin(), unique.end(),
                       [&](const Value& u) { return values_equal(u, v); })) {
        unique.push_back(std::move(v));
      }
    }
    vals = std::move(unique);
  }
  switch (a.func) {
    case AggFunc::Count:
      return static_cast<std::int64_t>(vals.size());
    case AggFunc::Sum:
    case AggFunc::Avg: {
      if (vals.empty()) return Null{};
      bool all_int = true;
      std::int64_t isum = 0;
      double dsum = 0;
      for (const auto& v : vals) {
        if (is_text(v)) throw EvalError(std::string(to_string(a.func)) + " over text value");
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
          if (all_int && __builtin_add_overflow(isum, *i, &isum)) all_int = false;
        } else {
          all_int = false;
        }
        dsum += as_double(v);
      }
      if (a.func == AggFunc::Avg) return dsum / static_cast<double>(vals.size());
      if (all_int) return isum;
      return dsum;
    }
    case AggFunc::Min:
    case AggFunc::Max: {
      if (vals.empty()) return Null{};
      const Value* best = &vals.front();
      for (const auto& v : vals) {
        auto c = compare_values(v, *best);
        if (a.func == AggFunc::Min ? c < 0 : c > 0) best = &v;
      }
      return *best;
    }
  }
  return Null{};
}

Relation eval_aggregate(const QplNode& node, const Relation& in) {
  Binder binder(node, {&in});
  Relation out;
  out.columns = header(node, binder);

  std::vector<std::size_t> keys;
  if (node.group_by) {
    for (const auto& g : *node.group_by) keys.push_back(binder.bind(ColumnRef{std::nullopt, g}).index);
  }

  // Groups in order of first appearance.
  std::vector<std::vector<const Row*>> groups;
  std::map<Row, std::size_t, RowLess> index;
  for (const auto& row : in.rows) {
    Row key;
    for (auto k : keys) key.push_back(row[k]);
    auto [it, inserted] = index.emplace(std::move(key), groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&row);
  }
  if (!node.group_by && groups.empty()) groups.emplace_back();

  for (const auto& group : groups) {
    Row r;
    for (const auto& o : node.output) {
      if (const auto* ref = std::get_if<ColumnRef>(&o)) {
        if (group.empty()) {
          r.push_back(Null{});
        } else {
          r.push_back(group.front()->at(binder.bind(*ref).index));
        }
      } else {
        const auto& a = std::get<AggregateExpr>(o);
        std::optional<std::size_t> arg;
        if (a.argument) arg = binder.bind(ColumnRef{std::nullopt, *a.argument}).index;
        r.push_back(aggregate(a, group, arg));
      }
    }
    out.rows.push_back(std::move(r));
  }
  return out;
}

Relation eval_sort(const QplNode& node, const Relation& in) {
  Binder binder(node, {&in});
  struct Key {
    std::size_t index;
    Direction dir;
  };
  std::vector<Key> keys;
  for (const auto& o : node.order_by) {
    keys.push_back(Key{binder.bind(ColumnRef{std::nullopt, o.column}).index, o.direction});
  }
  std::vector<Row> keyed;  // sort keys per input row
  keyed.reserve(in.rows.size());
  for (const auto& row : in.rows) {
    Row k;
    for (const auto& key : keys) k.push_back(sort_key(row[key.index]));
    keyed.push_back(std::move(k));
  }
  auto cmp_keys = [&](const Row& a, const Row& b) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      auto c = compare_values(a[i], b[i]);
      if (c != 0) return keys[i].dir == Direction::Asc ? c < 0 : c > 0;
    }
    return false;
  };
  std::vector<std::size_t> order(in.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cmp_keys(keyed[a], keyed[b]); });

  std::size_t take = order.size();
  if (node.op == OpKind::TopSort) {
    const auto k = static_cast<std::size_t>(std::max<std::int64_t>(0, node.rows.value_or(0)));
    take = std::min(take, k);
    if (node.with_ties.value_or(false) && take > 0) {
      while (take < order.size() && !cmp_keys(keyed[order[take - 1]], keyed[order[take]])) ++take;
    }
  }

  Relation out;
  out.columns = header(node, binder);
  auto slots = output_slots(node, binder);
  for (std::size_t i = 0; i < take; ++i) {
    std::vector<const Row*> ctx{&in.rows[order[i]]};
    out.rows.push_back(project(slots, ctx));
  }
  return out;
}

Relation eval_join(const QplNode& node, const Relation& left, const Relation& right) {
  Binder binder(node, {&left, &right});
  Relation out;
  out.columns = header(node, binder);
  auto slots = output_slots(node, binder);
  std::optional<BoundPredicate> pred;
  if (node.predicate) pred.emplace(*node.predicate, binder);
  for (const auto& l : left.rows) {
    for (const auto& r : right.rows) {
      std::vector<const Row*> ctx{&l, &r};
      if (pred && pred->eval(ctx) != true) continue;
      out.rows.push_back(project(slots, ctx));
    }
  }
  if (node.distinct.value_or(false)) deduplicate(out);
  return out;
}

// Predicate-free Intersect: equality on columns present (by name) in both inputs.
Predicate natural_predicate(const QplNode& node, const Relation& left, const Relation& right) {
  Predicate p;
  for (const auto& c : left.columns) {
    if (right.index_of(c.name) < 0) continue;
    Comparison cmp{ColumnRef{node.inputs[0], c.name}, CompareOp::Eq,
                   Operand{ColumnRef{node.inputs[1], c.name}}};
    p.terms.push_back(Predicate::Term{Connective::And, std::move(cmp)});
  }
  return p;
}

Relation eval_semi(const QplNode& node, const Relation& left, const Relation& right) {
  Binder binder(node, {&left, &right});
  Relation out;
  out.columns = header(node, binder);
  auto slots = output_slots(node, binder);
  for (const auto& s : slots) {
    if (s.source != 0) throw EvalError("Except/Intersect output must come from the first input");
  }
  const Predicate p = node.predicate ? *node.predicate : natural_predicate(node, left, right);
  std::optional<BoundPredicate> pred;
  if (!p.terms.empty()) pred.emplace(p, binder);
  const bool keep_matched = node.op == OpKind::Intersect;
  for (const auto& l : left.rows) {
    bool matched = false;
    for (const auto& r : right.rows) {
      std::vector<const Row*> ctx{&l, &r};
      if (!pred || pred->eval(ctx) == true) {
        matched = true;
        break;
      }
    }
    if (matched == keep_matched) {
      std::vector<const Row*> ctx{&l, &l};
      out.rows.push_back(project(slots, ctx));
    }
  }
  return out;
}

Relation eval_union(const QplNode& node, const Relation& left, const Relation& right) {
  Binder binder(node, {&left, &right});
  Relation out;
  out.columns = header(node, binder);
  if (left.width() != right.width()) throw EvalError("Union inputs differ in arity");
  std::vector<std::size_t> positions;
  for (const auto& s : output_slots(node, binder)) positions.push_back(s.index);
  for (const Relation* in : {&left, &right}) {
    for (const auto& row : in->rows) {
      Row r;
      for (auto p : positions) r.push_back(row[p]);
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

Relation eval_node(const QplNode& node, const std::vector<const Relation*>& inputs,
                   const Database& db) {
  if (static_cast<int>(inputs.size()) != arity(node.op)) {
    throw EvalError(std::string(to_string(node.op)) + " expects " +
                    std::to_string(arity(node.op)) + " inputs");
  }
  switch (node.op) {
    case OpKind::Scan:
      return select_project(node, db.table(node.table));
    case OpKind::Filter:
      return select_project(node, *inputs[0]);
    case OpKind::Aggregate:
      return eval_aggregate(node, *inputs[0]);
    case OpKind::Sort:
    case OpKind::TopSort:
      return eval_sort(node, *inputs[0]);
    case OpKind::Join:
      return eval_join(node, *inputs[0], *inputs[1]);
    case OpKind::Except:
    case OpKind::Intersect:
      return eval_semi(node, *inputs[0], *inputs[1]);
    case OpKind::Union:
      return eval_union(node, *inputs[0], *inputs[1]);
  }
  throw EvalError("unknown operator");
}

std::vector<Relation> eval_all(const QplPlan& plan, const Database& db,
                               const std::map<int, Relation>& overrides) {
  std::vector<Relation> results(static_cast<std::size_t>(plan.size() + 1));
  for (int k = 1; k <= plan.size(); ++k) {
    auto& slot = results[static_cast<std::size_t>(k)];
    if (auto it = overrides.find(k); it != overrides.end()) {
      slot = it->second;
      continue;
    }
    const QplNode& node = plan.step(k);
    std::vector<const Relation*> inputs;
    for (int i : node.inputs) inputs.push_back(&results[static_cast<std::size_t>(i)]);
    slot = eval_node(node, inputs, db);
  }
  return results;
}

Relation eval_plan(const QplPlan& plan, const Database& db) {
  const int root = plan_root(plan);
  auto all = eval_all(plan, db);
  return std::move(all[static_cast<std::size_t>(root)]);
}

}  // namespace qpl
