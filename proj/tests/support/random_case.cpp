#include "random_case.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qpl::testing {

namespace {

constexpr const char* kWords[] = {"ant", "bee", "cat", "dog", "eel", "fox", "gnu", "hen"};
constexpr const char* kPatterns[] = {"%a%", "b%", "_e_", "%t", "%o%"};

struct Col {
  std::string name;
  SimpleType type;
};

struct Sub {
  int step;
  std::vector<Col> cols;
};

class Generator {
 public:
  Generator(std::mt19937_64& rng, const Database& db, const RandomOptions& options)
      : rng_(rng), db_(db), options_(options) {}

  QplPlan run(OpKind root) {
    gen(options_.max_depth, root);
    return QplPlan(std::move(nodes_));
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  // Non-empty random subset in random order.
  template <class T>
  std::vector<T> subset(std::vector<T> v, int max_size) {
    std::shuffle(v.begin(), v.end(), rng_);
    const int n = uniform(1, std::min<int>(max_size, static_cast<int>(v.size())));
    v.resize(static_cast<std::size_t>(n));
    return v;
  }

  Sub add(QplNode node, const std::vector<SimpleType>& types) {
    const auto names = output_names(node);
    nodes_.push_back(std::move(node));
    Sub s{static_cast<int>(nodes_.size()), {}};
    for (std::size_t i = 0; i < names.size(); ++i) s.cols.push_back({names[i], types[i]});
    return s;
  }

  OpKind choose_op(int depth) {
    if (depth == 0 || chance(0.3)) return OpKind::Scan;
    return kAllOps[static_cast<std::size_t>(uniform(1, 8))];
  }

  Sub gen(int depth, std::optional<OpKind> forced = std::nullopt) {
    const OpKind op = forced ? *forced : choose_op(depth);
    if (depth == 0 || op == OpKind::Scan) return scan();
    switch (op) {
      case OpKind::Filter: return filter(depth);
      case OpKind::Aggregate: return aggregate(depth);
      case OpKind::Sort:
      case OpKind::TopSort: return sort(depth, op);
      case OpKind::Join: return join(depth);
      case OpKind::Except:
      case OpKind::Intersect: return semi(depth, op);
      case OpKind::Union: return union_(depth);
      case OpKind::Scan: break;
    }
    return scan();
  }

  // Operand references are qualified with `step` when set.
  ColumnRef ref(const Col& c, std::optional<int> step) { return ColumnRef{step, c.name}; }

  Literal number_literal() {
    if (chance(0.2)) return Literal{Literal::Kind::Decimal, std::to_string(uniform(0, 9)) + ".5"};
    return Literal::integer(uniform(0, 9));
  }

  Comparison comparison(const std::vector<std::pair<Col, std::optional<int>>>& cols) {
    const auto& [c, step] = pick(cols);
    Comparison cmp;
    cmp.lhs = ref(c, step);
    if (chance(0.1)) {
      cmp.op = chance(0.5) ? CompareOp::IsNull : CompareOp::IsNotNull;
      return cmp;
    }
    std::vector<std::pair<Col, std::optional<int>>> peers;
    for (const auto& p : cols) {
      if (p.first.type == c.type && !(p.first.name == c.name && p.second == step)) peers.push_back(p);
    }
    if (c.type == SimpleType::Number) {
      static const std::vector<CompareOp> ops = {CompareOp::Eq, CompareOp::Ne, CompareOp::Lt,
                                                 CompareOp::Le, CompareOp::Gt, CompareOp::Ge};
      cmp.op = pick(ops);
      if (!peers.empty() && chance(0.3)) {
        const auto& [o, ostep] = pick(peers);
        cmp.rhs = ref(o, ostep);
      } else {
        cmp.rhs = number_literal();
      }
      return cmp;
    }
    const int r = uniform(0, 9);
    if (r < 3) {
      cmp.op = chance(0.7) ? CompareOp::Like : CompareOp::NotLike;
      cmp.rhs = Literal::string(kPatterns[uniform(0, 4)]);
    } else if (r < 5 && !peers.empty()) {
      const auto& [o, ostep] = pick(peers);
      cmp.op = chance(0.7) ? CompareOp::Eq : CompareOp::Ne;
      cmp.rhs = ref(o, ostep);
    } else {
      static const std::vector<CompareOp> ops = {CompareOp::Eq, CompareOp::Eq, CompareOp::Ne,
                                                 CompareOp::Lt, CompareOp::Ge};
      cmp.op = pick(ops);
      cmp.rhs = Literal::string(kWords[uniform(0, 7)]);
    }
    return cmp;
  }

  Predicate predicate(const std::vector<std::pair<Col, std::optional<int>>>& cols, int max_terms) {
    Predicate p;
    const int n = uniform(1, max_terms);
    for (int i = 0; i < n; ++i) {
      const Connective conn = i > 0 && chance(0.3) ? Connective::Or : Connective::And;
      p.terms.push_back({conn, comparison(cols)});
    }
    return p;
  }

  static std::vector<std::pair<Col, std::optional<int>>> unqualified(const std::vector<Col>& cols) {
    std::vector<std::pair<Col, std::optional<int>>> out;
    for (const auto& c : cols) out.emplace_back(c, std::nullopt);
    return out;
  }

  static std::vector<Col> table_cols(const TableDef& t) {
    std::vector<Col> cols;
    for (const auto& c : t.columns) cols.push_back({c.name, c.type});
    return cols;
  }

  Sub scan_of(const TableDef& t, const std::vector<Col>& outputs) {
    QplNode n;
    n.op = OpKind::Scan;
    n.table = t.name;
    if (chance(0.5)) n.predicate = predicate(unqualified(table_cols(t)), 2);
    if (chance(0.15)) n.distinct = true;
    std::vector<SimpleType> types;
    for (const auto& c : outputs) {
      n.output.push_back(ColumnRef{std::nullopt, c.name});
      types.push_back(c.type);
    }
    return add(std::move(n), types);
  }

  Sub scan() {
    const auto& t = pick(db_.schema.tables());
    return scan_of(t, subset(table_cols(t), 4));
  }

  Sub filter(int depth) {
    const Sub child = gen(depth - 1);
    QplNode n;
    n.op = OpKind::Filter;
    n.inputs = {child.step};
    n.predicate = predicate(unqualified(child.cols), 3);
    if (chance(0.2)) n.distinct = true;
    std::vector<SimpleType> types;
    for (const auto& c : subset(child.cols, 4)) {
      n.output.push_back(ColumnRef{std::nullopt, c.name});
      types.push_back(c.type);
    }
    return add(std::move(n), types);
  }

  Sub aggregate(int depth) {
    const Sub child = gen(depth - 1);
    QplNode n;
    n.op = OpKind::Aggregate;
    n.inputs = {child.step};
    const int step = static_cast<int>(nodes_.size()) + 1;
    std::vector<std::pair<OutputExpr, SimpleType>> outs;
    if (chance(0.7)) {
      const auto group = subset(child.cols, 2);
      n.group_by.emplace();
      for (const auto& g : group) {
        n.group_by->push_back(g.name);
        outs.emplace_back(ColumnRef{std::nullopt, g.name}, g.type);
      }
    }
    std::vector<Col> numbers;
    for (const auto& c : child.cols) {
      if (c.type == SimpleType::Number) numbers.push_back(c);
    }
    const int aggs = uniform(1, 2);
    for (int i = 0; i < aggs; ++i) {
      AggregateExpr a;
      a.alias = "agg" + std::to_string(step) + "_" + std::to_string(i + 1);
      SimpleType type = SimpleType::Number;
      const int r = uniform(0, 5);
      if (r == 0) {
        a.func = AggFunc::Count;
      } else if (r == 1) {
        a.func = AggFunc::Count;
        a.argument = pick(child.cols).name;
        a.distinct = chance(0.5);
      } else if (r <= 3 && !numbers.empty()) {
        a.func = r == 2 ? AggFunc::Sum : AggFunc::Avg;
        a.argument = pick(numbers).name;
      } else {
        const Col& c = pick(child.cols);
        a.func = chance(0.5) ? AggFunc::Min : AggFunc::Max;
        a.argument = c.name;
        type = c.type;
      }
      outs.emplace_back(a, type);
    }
    std::shuffle(outs.begin(), outs.end(), rng_);
    std::vector<SimpleType> types;
    for (auto& [o, t] : outs) {
      n.output.push_back(std::move(o));
      types.push_back(t);
    }
    return add(std::move(n), types);
  }

  Sub sort(int depth, OpKind op) {
    const Sub child = gen(depth - 1);
    QplNode n;
    n.op = op;
    n.inputs = {child.step};
    const auto outs = subset(child.cols, 4);
    std::vector<SimpleType> types;
    for (const auto& c : outs) {
      n.output.push_back(ColumnRef{std::nullopt, c.name});
      types.push_back(c.type);
    }
    auto keys = outs;
    std::shuffle(keys.begin(), keys.end(), rng_);
    for (const auto& k : keys) {
      n.order_by.push_back({k.name, chance(0.5) ? Direction::Asc : Direction::Desc});
    }
    if (op == OpKind::TopSort) {
      n.rows = uniform(1, 5);
      const int t = uniform(0, 2);
      if (t > 0) n.with_ties = t == 1;
    }
    return add(std::move(n), types);
  }

  // Generates a right input sharing a column type with `left`, retrying a few times.
  std::pair<Sub, std::vector<std::pair<Col, Col>>> paired_input(int depth, const Sub& left) {
    for (int attempt = 0;; ++attempt) {
      const std::size_t mark = nodes_.size();
      Sub right = gen(depth - 1);
      std::vector<std::pair<Col, Col>> pairs;
      for (const auto& l : left.cols) {
        for (const auto& r : right.cols) {
          if (l.type == r.type) pairs.emplace_back(l, r);
        }
      }
      if (!pairs.empty() || attempt >= 4) return {right, pairs};
      nodes_.resize(mark);
    }
  }

  Predicate binary_predicate(const Sub& left, const Sub& right,
                             const std::vector<std::pair<Col, Col>>& pairs) {
    Predicate p;
    const auto& [l, r] = pick(pairs);
    Comparison eq;
    eq.lhs = ref(l, left.step);
    eq.op = CompareOp::Eq;
    eq.rhs = ref(r, right.step);
    if (chance(0.5)) std::swap(eq.lhs, *eq.rhs);
    p.terms.push_back({Connective::And, eq});
    if (chance(0.3)) {
      std::vector<std::pair<Col, std::optional<int>>> cols;
      for (const auto& c : left.cols) cols.emplace_back(c, left.step);
      for (const auto& c : right.cols) cols.emplace_back(c, right.step);
      p.terms.push_back({chance(0.7) ? Connective::And : Connective::Or, comparison(cols)});
    }
    return p;
  }

  Sub join(int depth) {
    const Sub left = gen(depth - 1);
    const auto [right, pairs] = paired_input(depth, left);
    QplNode n;
    n.op = OpKind::Join;
    n.inputs = {left.step, right.step};
    if (!pairs.empty()) n.predicate = binary_predicate(left, right, pairs);
    if (chance(0.2)) n.distinct = true;
    std::vector<std::pair<Col, int>> all;
    for (const auto& c : left.cols) all.emplace_back(c, left.step);
    for (const auto& c : right.cols) all.emplace_back(c, right.step);
    std::vector<SimpleType> types;
    for (const auto& [c, step] : subset(all, 5)) {
      n.output.push_back(ColumnRef{step, c.name});
      types.push_back(c.type);
    }
    return add(std::move(n), types);
  }

  Sub semi(int depth, OpKind op) {
    for (;;) {
      const std::size_t mark = nodes_.size();
      const Sub left = gen(depth - 1);
      const auto [right, pairs] = paired_input(depth, left);
      QplNode n;
      n.op = op;
      n.inputs = {left.step, right.step};
      bool shared_name = false;
      for (const auto& [l, r] : pairs) shared_name = shared_name || l.name == r.name;
      if (op == OpKind::Intersect && shared_name && chance(0.25)) {
        // No predicate: rows match on same-named columns.
      } else if (!pairs.empty()) {
        n.predicate = binary_predicate(left, right, pairs);
      } else {
        // Abandoned inputs would stay unreferenced; drop them and retry.
        nodes_.resize(mark);
        continue;
      }
      std::vector<SimpleType> types;
      for (const auto& c : subset(left.cols, 4)) {
        n.output.push_back(ColumnRef{left.step, c.name});
        types.push_back(c.type);
      }
      return add(std::move(n), types);
    }
  }

  // A table that can supply one distinct column per requested type, in order.
  std::optional<std::vector<Col>> match_signature(const TableDef& t, const std::vector<Col>& sig) {
    std::vector<Col> cols = table_cols(t);
    std::shuffle(cols.begin(), cols.end(), rng_);
    std::vector<Col> out;
    std::vector<bool> used(cols.size(), false);
    for (const auto& s : sig) {
      bool found = false;
      for (std::size_t i = 0; i < cols.size() && !found; ++i) {
        if (!used[i] && cols[i].type == s.type) {
          used[i] = true;
          out.push_back(cols[i]);
          found = true;
        }
      }
      if (!found) return std::nullopt;
    }
    return out;
  }

  Sub union_(int depth) {
    for (;;) {
      const std::size_t mark = nodes_.size();
      const Sub left = gen(depth - 1);
      std::vector<const TableDef*> candidates;
      for (const auto& t : db_.schema.tables()) {
        if (match_signature(t, left.cols)) candidates.push_back(&t);
      }
      if (candidates.empty()) {
        nodes_.resize(mark);
        continue;
      }
      const TableDef& t = *pick(candidates);
      const auto cols = *match_signature(t, left.cols);
      Sub right;
      if (depth >= 2 && chance(0.4)) {
        auto extra = table_cols(t);
        std::shuffle(extra.begin(), extra.end(), rng_);
        std::vector<Col> scan_cols = cols;
        for (const auto& e : extra) {
          if (std::none_of(scan_cols.begin(), scan_cols.end(),
                           [&](const Col& c) { return c.name == e.name; }) &&
              chance(0.3)) {
            scan_cols.push_back(e);
          }
        }
        const Sub inner = scan_of(t, scan_cols);
        QplNode f;
        f.op = OpKind::Filter;
        f.inputs = {inner.step};
        f.predicate = predicate(unqualified(inner.cols), 2);
        std::vector<SimpleType> types;
        for (const auto& c : cols) {
          f.output.push_back(ColumnRef{std::nullopt, c.name});
          types.push_back(c.type);
        }
        right = add(std::move(f), types);
      } else {
        right = scan_of(t, cols);
      }
      QplNode n;
      n.op = OpKind::Union;
      n.inputs = {left.step, right.step};
      std::vector<SimpleType> types;
      std::vector<Col> outs = left.cols;
      if (outs.size() > 1 && chance(0.3)) outs.resize(outs.size() - 1);
      for (const auto& c : outs) {
        n.output.push_back(ColumnRef{left.step, c.name});
        types.push_back(c.type);
      }
      return add(std::move(n), types);
    }
  }

  std::mt19937_64& rng_;
  const Database& db_;
  RandomOptions options_;
  std::vector<QplNode> nodes_;
};

Value random_value(std::mt19937_64& rng, SimpleType type) {
  std::uniform_int_distribution<int> pct(0, 99);
  const int r = pct(rng);
  if (r < 8) return Null{};
  if (type == SimpleType::Number) {
    if (r < 20) return std::uniform_int_distribution<int>(0, 40)(rng) * 0.25;
    return static_cast<std::int64_t>(std::uniform_int_distribution<int>(0, 9)(rng));
  }
  return std::string(kWords[std::uniform_int_distribution<int>(0, 7)(rng)]);
}

}  // namespace

Database random_database(std::mt19937_64& rng, const RandomOptions& options) {
  std::uniform_int_distribution<int> ntables(2, 3);
  std::vector<TableDef> tables;
  std::map<std::string, Relation, ILess> rels;
  const int n = ntables(rng);
  for (int t = 1; t <= n; ++t) {
    TableDef def;
    def.name = "t" + std::to_string(t);
    const int width = std::uniform_int_distribution<int>(4, std::max(4, options.max_columns))(rng);
    const int numbers = std::uniform_int_distribution<int>(2, width - 2)(rng);
    for (int i = 0; i < width; ++i) {
      const bool is_num = i < numbers;
      const int ordinal = is_num ? i + 1 : i - numbers + 1;
      def.columns.push_back({(is_num ? "n" : "s") + std::to_string(ordinal),
                             is_num ? SimpleType::Number : SimpleType::Text, std::nullopt});
    }
    std::shuffle(def.columns.begin(), def.columns.end(), rng);
    Relation rel;
    for (const auto& c : def.columns) rel.columns.push_back({c.name, c.type});
    const int rows = std::bernoulli_distribution(0.05)(rng)
                         ? 0
                         : std::uniform_int_distribution<int>(1, options.max_rows)(rng);
    for (int r = 0; r < rows; ++r) {
      Row row;
      for (const auto& c : def.columns) row.push_back(random_value(rng, c.type));
      rel.rows.push_back(std::move(row));
    }
    rels.emplace(def.name, std::move(rel));
    tables.push_back(std::move(def));
  }
  Database db;
  db.schema = SchemaCatalog("random", std::move(tables));
  db.tables = std::move(rels);
  return db;
}

QplPlan random_plan(std::mt19937_64& rng, const Database& db, OpKind root,
                    const RandomOptions& options) {
  return Generator(rng, db, options).run(root);
}

RandomCase random_case(std::mt19937_64& rng, OpKind root, const RandomOptions& options) {
  RandomCase c;
  c.db = random_database(rng, options);
  c.plan = random_plan(rng, c.db, root, options);
  return c;
}

int plan_depth(const QplPlan& plan, int k) {
  int d = 0;
  for (int i : plan.step(k).inputs) d = std::max(d, 1 + plan_depth(plan, i));
  return d;
}

}  // namespace qpl::testing
