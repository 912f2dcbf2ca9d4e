#include "qpl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>

#include "qpl/errors.hpp"
#include "qpl/ident.hpp"

namespace qpl {

std::string_view to_string(ParseOutcome::Status s) {
  switch (s) {
    case ParseOutcome::Status::Complete: return "complete";
    case ParseOutcome::Status::Continuable: return "continuable";
    case ParseOutcome::Status::Rejected: return "rejected";
  }
  return "?";
}

namespace {

//---------------------------------------------------------------------------
// Lexer
//---------------------------------------------------------------------------

enum class Tok {
  Hash, Equals, LBracket, RBracket, Comma, Dot, LParen, RParen, Star,
  Lt, Le, Ne, Gt, Ge,
  Ident, Integer, Decimal, String,
  Error
};

struct Token {
  Tok kind;
  std::string text;  // identifier/number lexeme, unescaped string contents
  std::size_t offset;
  std::size_t end;
  // Token touches the end of a prefix and could still grow into a different
  // token (longer identifier, more digits, `<=`, an escaped quote...).
  bool partial = false;
  // Lexeme is not a token on its own (unterminated string, lone `-`, `12.`).
  bool incomplete = false;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  auto push = [&](Tok k, std::string text, std::size_t start, bool partial = false) {
    out.push_back(Token{k, std::move(text), start, i, partial});
  };
  while (i < n) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const bool after_hash = !out.empty() && out.back().kind == Tok::Hash;
    switch (c) {
      case '#': ++i; push(Tok::Hash, "#", start); continue;
      case '=': ++i; push(Tok::Equals, "=", start); continue;
      case '[': ++i; push(Tok::LBracket, "[", start); continue;
      case ']': ++i; push(Tok::RBracket, "]", start); continue;
      case ',': ++i; push(Tok::Comma, ",", start); continue;
      case '.': ++i; push(Tok::Dot, ".", start); continue;
      case '(': ++i; push(Tok::LParen, "(", start); continue;
      case ')': ++i; push(Tok::RParen, ")", start); continue;
      case '*': ++i; push(Tok::Star, "*", start); continue;
      case '<':
        ++i;
        if (i < n && s[i] == '=') { ++i; push(Tok::Le, "<=", start); }
        else if (i < n && s[i] == '>') { ++i; push(Tok::Ne, "<>", start); }
        else push(Tok::Lt, "<", start, i == n);
        continue;
      case '>':
        ++i;
        if (i < n && s[i] == '=') { ++i; push(Tok::Ge, ">=", start); }
        else push(Tok::Gt, ">", start, i == n);
        continue;
      case '\'': {
        ++i;
        std::string text;
        bool closed = false;
        while (i < n) {
          if (s[i] == '\'') {
            if (i + 1 < n && s[i + 1] == '\'') {
              text.push_back('\'');
              i += 2;
              continue;
            }
            ++i;
            closed = true;
            break;
          }
          text.push_back(s[i++]);
        }
        // A closed string at the very end may still continue as `''`.
        push(Tok::String, std::move(text), start, !closed || i == n);
        out.back().incomplete = !closed;
        continue;
      }
      default: break;
    }
    if (is_ident_start(c)) {
      while (i < n && is_ident_char(s[i])) ++i;
      push(Tok::Ident, std::string(s.substr(start, i - start)), start, i == n);
      continue;
    }
    if (is_digit(c) || (c == '-' && !after_hash)) {
      if (c == '-') ++i;
      while (i < n && is_digit(s[i])) ++i;
      Tok kind = Tok::Integer;
      if (!after_hash && i < n && s[i] == '.' && i > start && is_digit(s[i - 1]) &&
          (i + 1 == n || is_digit(s[i + 1]))) {
        ++i;
        while (i < n && is_digit(s[i])) ++i;
        kind = Tok::Decimal;
      }
      std::string text(s.substr(start, i - start));
      if (text == "-") {
        if (i == n) {
          push(Tok::Integer, text, start, true);
          out.back().incomplete = true;
        } else {
          push(Tok::Error, text, start);
          return out;
        }
        continue;
      }
      const bool dangling_dot = text.back() == '.';
      push(kind, std::move(text), start, i == n);
      out.back().incomplete = dangling_dot;
      continue;
    }
    ++i;
    push(Tok::Error, std::string(1, c), start);
    return out;
  }
  return out;
}

//---------------------------------------------------------------------------
// Parser
//---------------------------------------------------------------------------

struct NeedMore {};

struct Reject {
  std::size_t position;
  std::vector<std::string> expected;
  std::string message;
};

std::string quote(std::string_view kw) { return "'" + std::string(kw) + "'"; }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::String: return "string literal";
    case Tok::Error: return "invalid character '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

const char* punct_text(Tok k) {
  switch (k) {
    case Tok::Hash: return "#";
    case Tok::Equals: return "=";
    case Tok::LBracket: return "[";
    case Tok::RBracket: return "]";
    case Tok::Comma: return ",";
    case Tok::Dot: return ".";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::Star: return "*";
    default: return "?";
  }
}

bool has_prefix(std::string_view word, std::string_view prefix) {
  return word.substr(0, prefix.size()) == prefix;
}

/// Some positive integer in [lo, hi] has `digits` as a decimal prefix.
bool some_integer_with_prefix(std::string_view digits, std::int64_t lo, std::int64_t hi) {
  if (digits.empty()) return lo <= hi;
  if (digits[0] == '0' || digits[0] == '-') return false;
  if (digits.size() > 18) return false;
  std::int64_t p = std::stoll(std::string(digits));
  for (std::int64_t scale = 1; scale <= 1'000'000'000'000'000'000LL / 10; scale *= 10) {
    std::int64_t a = p * scale, b = p * scale + scale - 1;
    if (a > hi) return false;
    if (b >= lo) return true;
  }
  return false;
}

const std::vector<std::string>& operator_keywords() {
  static const std::vector<std::string> kws = {"Scan",   "Aggregate", "Filter",
                                               "Sort",   "TopSort",   "Join",
                                               "Except", "Intersect", "Union"};
  return kws;
}

const std::vector<std::string>& agg_names() {
  static const std::vector<std::string> names = {"COUNT", "SUM", "AVG", "MIN", "MAX"};
  return names;
}

AggFunc agg_func(std::string_view name) {
  if (name == "COUNT") return AggFunc::Count;
  if (name == "SUM") return AggFunc::Sum;
  if (name == "AVG") return AggFunc::Avg;
  if (name == "MIN") return AggFunc::Min;
  return AggFunc::Max;
}

class Parser {
 public:
  Parser(std::string_view text, bool prefix_mode, const SchemaCatalog* schema)
      : text_(text), tokens_(lex(text)), prefix_(prefix_mode), schema_(schema) {}

  QplPlan run() {
    std::vector<QplNode> steps;
    int line = 1;
    for (;;) {
      steps.push_back(parse_line(line));
      if (at_end()) break;
      ++line;
    }
    return QplPlan(std::move(steps));
  }

 private:
  //--- token access --------------------------------------------------------

  bool at_end() const { return pos_ >= tokens_.size(); }

  // Current token; signals end of input (prefix mode: more text is needed).
  const Token& current(const std::vector<std::string>& expected) {
    if (at_end()) {
      if (prefix_) throw NeedMore{};
      throw Reject{text_.size(), expected, "unexpected end of input"};
    }
    const Token& t = tokens_[pos_];
    if (t.kind == Tok::Error) {
      throw Reject{t.offset, expected, describe(t)};
    }
    if (t.incomplete && !prefix_) {
      throw Reject{t.offset, expected, "incomplete token '" + t.text + "'"};
    }
    return t;
  }

  bool partial(const Token& t) const { return prefix_ && t.partial; }

  [[noreturn]] void reject(const Token& t, std::vector<std::string> expected) {
    std::string msg = "unexpected " + describe(t);
    if (!expected.empty()) {
      msg += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
      }
    }
    throw Reject{t.offset, std::move(expected), msg};
  }

  void expect_punct(Tok kind) {
    std::vector<std::string> exp{quote(punct_text(kind))};
    const Token& t = current(exp);
    if (t.kind == kind) {
      ++pos_;
      return;
    }
    reject(t, exp);
  }

  bool peek_punct(Tok kind) {
    const Token& t = current({quote(punct_text(kind))});
    return t.kind == kind;
  }

  // Consumes one of `words` (exact, case-sensitive) and returns it.
  std::string expect_keyword(const std::vector<std::string>& words,
                             std::vector<std::string> extra_expected = {}) {
    std::vector<std::string> exp;
    for (const auto& w : words) exp.push_back(quote(w));
    exp.insert(exp.end(), extra_expected.begin(), extra_expected.end());
    const Token& t = current(exp);
    if (t.kind == Tok::Ident) {
      if (partial(t)) {
        for (const auto& w : words) {
          if (has_prefix(w, t.text)) throw NeedMore{};
        }
      } else {
        for (const auto& w : words) {
          if (t.text == w) {
            ++pos_;
            return w;
          }
        }
      }
    }
    reject(t, exp);
  }

  // Returns the keyword among `words` at the cursor without consuming it,
  // or "" if the token is something else that is complete.
  std::string peek_keyword(const std::vector<std::string>& words,
                           const std::vector<std::string>& exp) {
    const Token& t = current(exp);
    if (t.kind != Tok::Ident) return {};
    if (partial(t)) {
      for (const auto& w : words) {
        if (has_prefix(w, t.text)) throw NeedMore{};
      }
      return {};
    }
    for (const auto& w : words) {
      if (t.text == w) return w;
    }
    return {};
  }

  std::string expect_identifier(const char* what) {
    const Token& t = current({what});
    if (t.kind != Tok::Ident) reject(t, {what});
    if (partial(t)) throw NeedMore{};
    ++pos_;
    return t.text;
  }

  // Positive integer without leading zeros, within [lo, hi].
  std::int64_t expect_integer(const char* what, std::int64_t lo, std::int64_t hi) {
    const Token& t = current({what});
    if (t.kind == Tok::Integer) {
      if (partial(t)) {
        if (some_integer_with_prefix(t.text, lo, hi)) throw NeedMore{};
        reject(t, {what});
      }
      if (t.text[0] != '0' && t.text[0] != '-' && t.text.size() <= 18) {
        std::int64_t v = std::stoll(t.text);
        if (v >= lo && v <= hi) {
          ++pos_;
          return v;
        }
      }
    }
    reject(t, {what});
  }

  //--- grammar -------------------------------------------------------------

  QplNode parse_line(int line) {
    expect_punct(Tok::Hash);
    const std::string step_what = "step number " + std::to_string(line);
    expect_integer(step_what.c_str(), line, line);
    expect_punct(Tok::Equals);
    line_ = line;

    // The first step has nothing to consume, so it can only be a Scan.
    const std::string op =
        expect_keyword(line == 1 ? std::vector<std::string>{"Scan"} : operator_keywords());
    QplNode n;
    if (op == "Scan") {
      n.op = OpKind::Scan;
      expect_keyword({"Table"});
      expect_punct(Tok::LBracket);
      n.table = parse_table_name();
      expect_punct(Tok::RBracket);
      auto kw = peek_keyword({"Predicate", "Distinct", "Output"},
                             {quote("Predicate"), quote("Distinct"), quote("Output")});
      if (kw == "Predicate") {
        n.predicate = parse_predicate();
        kw = peek_keyword({"Distinct", "Output"}, {quote("Distinct"), quote("Output")});
      }
      if (kw == "Distinct") n.distinct = parse_flag("Distinct");
      n.output = parse_output(false, n.table);
    } else if (op == "Aggregate") {
      n.op = OpKind::Aggregate;
      n.inputs = parse_inputs(1);
      auto kw = peek_keyword({"GroupBy", "Output"}, {quote("GroupBy"), quote("Output")});
      if (kw == "GroupBy") n.group_by = parse_group_by();
      n.output = parse_output(false, {});
    } else if (op == "Filter") {
      n.op = OpKind::Filter;
      n.inputs = parse_inputs(1);
      n.predicate = parse_predicate();
      auto kw = peek_keyword({"Distinct", "Output"}, {quote("Distinct"), quote("Output")});
      if (kw == "Distinct") n.distinct = parse_flag("Distinct");
      n.output = parse_output(false, {});
    } else if (op == "Sort" || op == "TopSort") {
      n.op = op == "Sort" ? OpKind::Sort : OpKind::TopSort;
      n.inputs = parse_inputs(1);
      if (n.op == OpKind::TopSort) {
        expect_keyword({"Rows"});
        expect_punct(Tok::LBracket);
        n.rows = expect_integer("row count", 1, 999'999'999'999'999'999LL);
        expect_punct(Tok::RBracket);
      }
      n.order_by = parse_order_by();
      auto kw = peek_keyword({"WithTies", "Output"}, {quote("WithTies"), quote("Output")});
      if (kw == "WithTies") n.with_ties = parse_flag("WithTies");
      n.output = parse_output(false, {});
    } else {
      n.op = op == "Join"     ? OpKind::Join
             : op == "Except" ? OpKind::Except
             : op == "Intersect" ? OpKind::Intersect
                                 : OpKind::Union;
      n.inputs = parse_inputs(2);
      if (n.op == OpKind::Except) {
        n.predicate = parse_predicate();
      } else if (n.op == OpKind::Join || n.op == OpKind::Intersect) {
        std::vector<std::string> words{"Predicate", "Output"};
        if (n.op == OpKind::Join) words.insert(words.begin() + 1, "Distinct");
        std::vector<std::string> exp;
        for (const auto& w : words) exp.push_back(quote(w));
        auto kw = peek_keyword(words, exp);
        if (kw == "Predicate") {
          n.predicate = parse_predicate();
          if (n.op == OpKind::Join) {
            kw = peek_keyword({"Distinct", "Output"}, {quote("Distinct"), quote("Output")});
          }
        }
        if (n.op == OpKind::Join && kw == "Distinct") n.distinct = parse_flag("Distinct");
      }
      n.output = parse_output(true, {});
    }
    return n;
  }

  std::string parse_table_name() {
    const Token& t = current({"table name"});
    if (t.kind != Tok::Ident) reject(t, {"table name"});
    if (schema_) {
      bool ok = false;
      for (const auto& table : schema_->tables()) {
        if (partial(t) ? istarts_with(table.name, t.text) : iequals(table.name, t.text)) {
          ok = true;
          break;
        }
      }
      if (!ok) throw Reject{t.offset, {"table name"}, "unknown table '" + t.text + "'"};
    }
    if (partial(t)) throw NeedMore{};
    ++pos_;
    return t.text;
  }

  std::vector<int> parse_inputs(int count) {
    expect_punct(Tok::LBracket);
    std::vector<int> inputs;
    for (int i = 0; i < count; ++i) {
      if (i) expect_punct(Tok::Comma);
      inputs.push_back(parse_step_ref());
    }
    expect_punct(Tok::RBracket);
    return inputs;
  }

  int parse_step_ref() {
    expect_punct(Tok::Hash);
    if (line_ <= 1) {
      const Token& t = current({"step reference"});
      throw Reject{t.offset, {"step reference"}, "step #1 has no earlier step to reference"};
    }
    return static_cast<int>(expect_integer("earlier step number", 1, line_ - 1));
  }

  bool parse_flag(const char* keyword) {
    expect_keyword({keyword});
    expect_punct(Tok::LBracket);
    bool v = expect_keyword({"true", "false"}) == "true";
    expect_punct(Tok::RBracket);
    return v;
  }

  std::vector<std::string> parse_group_by() {
    expect_keyword({"GroupBy"});
    expect_punct(Tok::LBracket);
    std::vector<std::string> cols;
    for (;;) {
      cols.push_back(expect_identifier("column name"));
      if (!comma_or_close()) break;
    }
    return cols;
  }

  std::vector<OrderItem> parse_order_by() {
    expect_keyword({"OrderBy"});
    expect_punct(Tok::LBracket);
    std::vector<OrderItem> items;
    for (;;) {
      OrderItem item;
      item.column = expect_identifier("column name");
      item.direction = expect_keyword({"ASC", "DESC"}) == "ASC" ? Direction::Asc : Direction::Desc;
      items.push_back(std::move(item));
      if (!comma_or_close()) break;
    }
    return items;
  }

  // After a list element: consumes `,` (returns true) or `]` (returns false).
  bool comma_or_close() {
    std::vector<std::string> exp{quote(","), quote("]")};
    const Token& t = current(exp);
    if (t.kind == Tok::Comma) {
      ++pos_;
      return true;
    }
    if (t.kind == Tok::RBracket) {
      ++pos_;
      return false;
    }
    reject(t, exp);
  }

  Predicate parse_predicate() {
    expect_keyword({"Predicate"});
    expect_punct(Tok::LBracket);
    Predicate p;
    Connective conn = Connective::And;
    for (;;) {
      p.terms.push_back({conn, parse_comparison()});
      std::vector<std::string> exp{quote("AND"), quote("OR"), quote("]")};
      const Token& t = current(exp);
      if (t.kind == Tok::RBracket) {
        ++pos_;
        break;
      }
      conn = expect_keyword({"AND", "OR"}, {quote("]")}) == "AND" ? Connective::And
                                                                  : Connective::Or;
    }
    return p;
  }

  Comparison parse_comparison() {
    Comparison c;
    c.lhs = parse_operand();
    static const std::vector<std::string> exp = {"comparison operator"};
    const Token& t = current(exp);
    switch (t.kind) {
      case Tok::Equals: c.op = CompareOp::Eq; break;
      case Tok::Ne: c.op = CompareOp::Ne; break;
      case Tok::Le: c.op = CompareOp::Le; break;
      case Tok::Ge: c.op = CompareOp::Ge; break;
      case Tok::Lt:
        if (partial(t)) throw NeedMore{};
        c.op = CompareOp::Lt;
        break;
      case Tok::Gt:
        if (partial(t)) throw NeedMore{};
        c.op = CompareOp::Gt;
        break;
      case Tok::Ident: {
        auto kw = expect_keyword({"LIKE", "NOT", "IS"}, {"comparison operator"});
        if (kw == "LIKE") {
          c.op = CompareOp::Like;
        } else if (kw == "NOT") {
          expect_keyword({"LIKE"});
          c.op = CompareOp::NotLike;
        } else {
          auto next = expect_keyword({"NULL", "NOT"});
          if (next == "NOT") expect_keyword({"NULL"});
          c.op = next == "NULL" ? CompareOp::IsNull : CompareOp::IsNotNull;
          return c;
        }
        c.rhs = parse_operand();
        return c;
      }
      default: reject(t, exp);
    }
    ++pos_;
    c.rhs = parse_operand();
    return c;
  }

  Operand parse_operand() {
    static const std::vector<std::string> exp = {"column name", "#n.column", "literal"};
    const Token& t = current(exp);
    switch (t.kind) {
      case Tok::Ident:
        if (partial(t)) throw NeedMore{};
        ++pos_;
        return ColumnRef{std::nullopt, t.text};
      case Tok::Hash: return parse_qualified_column();
      case Tok::String:
        if (partial(t)) throw NeedMore{};
        ++pos_;
        return Literal{Literal::Kind::String, t.text};
      case Tok::Integer:
      case Tok::Decimal:
        if (partial(t)) throw NeedMore{};
        ++pos_;
        return Literal{t.kind == Tok::Integer ? Literal::Kind::Integer : Literal::Kind::Decimal,
                       t.text};
      default: reject(t, exp);
    }
  }

  ColumnRef parse_qualified_column() {
    expect_punct(Tok::Hash);
    auto step = expect_integer("step number", 1, 999'999'999);
    expect_punct(Tok::Dot);
    return ColumnRef{static_cast<int>(step), expect_identifier("column name")};
  }

  std::vector<OutputExpr> parse_output(bool qualified, const std::string& scan_table) {
    expect_keyword({"Output"});
    expect_punct(Tok::LBracket);
    std::vector<OutputExpr> out;
    for (;;) {
      if (qualified) {
        out.emplace_back(parse_qualified_column());
      } else {
        out.push_back(parse_output_item(scan_table));
      }
      if (!comma_or_close()) break;
    }
    return out;
  }

  OutputExpr parse_output_item(const std::string& scan_table) {
    const Token& t = current({"column name", "aggregate"});
    if (t.kind != Tok::Ident) reject(t, {"column name", "aggregate"});
    const TableDef* table =
        schema_ && !scan_table.empty() ? schema_->find_table(scan_table) : nullptr;
    if (partial(t)) {
      if (table) {
        bool ok = std::any_of(table->columns.begin(), table->columns.end(),
                              [&](const ColumnDef& c) { return istarts_with(c.name, t.text); }) ||
                  std::any_of(agg_names().begin(), agg_names().end(),
                              [&](const std::string& a) { return has_prefix(a, t.text); });
        if (!ok) {
          throw Reject{t.offset, {"column of " + table->name},
                       "table " + table->name + " has no column '" + t.text + "'"};
        }
      }
      throw NeedMore{};
    }
    const bool is_agg = std::find(agg_names().begin(), agg_names().end(), t.text) !=
                        agg_names().end();
    if (is_agg) {
      if (pos_ + 1 >= tokens_.size()) {
        if (prefix_) throw NeedMore{};
      } else if (tokens_[pos_ + 1].kind == Tok::LParen) {
        return parse_aggregate();
      }
    }
    if (table && !table->find_column(t.text)) {
      throw Reject{t.offset, {"column of " + table->name},
                   "table " + table->name + " has no column '" + t.text + "'"};
    }
    ++pos_;
    return ColumnRef{std::nullopt, t.text};
  }

  AggregateExpr parse_aggregate() {
    AggregateExpr a;
    const std::string name = tokens_[pos_].text;
    a.func = agg_func(name);
    ++pos_;
    expect_punct(Tok::LParen);
    std::vector<std::string> exp{"column name"};
    if (a.func == AggFunc::Count) exp.insert(exp.begin(), quote("*"));
    exp.push_back(quote("DISTINCT"));
    const Token& t = current(exp);
    if (t.kind == Tok::Star && a.func == AggFunc::Count) {
      ++pos_;
    } else if (t.kind == Tok::Ident) {
      if (partial(t)) throw NeedMore{};
      if (t.text == "DISTINCT") {
        ++pos_;
        a.distinct = true;
      }
      a.argument = expect_identifier("column name");
    } else {
      reject(t, exp);
    }
    expect_punct(Tok::RParen);
    expect_keyword({"AS"});
    a.alias = expect_identifier("alias");
    return a;
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  bool prefix_;
  const SchemaCatalog* schema_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

ParseOutcome run_prefix(std::string_view text, const SchemaCatalog* schema) {
  ParseOutcome out;
  try {
    Parser p(text, true, schema);
    out.plan = p.run();
    out.status = ParseOutcome::Status::Complete;
  } catch (const NeedMore&) {
    out.status = ParseOutcome::Status::Continuable;
  } catch (const Reject& r) {
    out.status = ParseOutcome::Status::Rejected;
    out.position = r.position;
    out.expected = r.expected;
    out.message = r.message;
  } catch (const StructureError& e) {
    out.status = ParseOutcome::Status::Rejected;
    out.position = text.size();
    out.message = e.what();
  }
  return out;
}

}  // namespace

QplPlan parse(std::string_view text) {
  try {
    Parser p(text, false, nullptr);
    return p.run();
  } catch (const Reject& r) {
    throw SyntaxError(r.position, r.expected,
                      "syntax error at offset " + std::to_string(r.position) + ": " + r.message);
  } catch (const NeedMore&) {
    throw SyntaxError(text.size(), {}, "unexpected end of input");
  }
}

ParseOutcome parse_prefix(std::string_view text) { return run_prefix(text, nullptr); }

ParseOutcome parse_prefix_schema_aware(std::string_view text, const SchemaCatalog& schema) {
  return run_prefix(text, &schema);
}

}  // namespace qpl
