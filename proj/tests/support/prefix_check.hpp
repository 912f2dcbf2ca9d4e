#pragma once

// Corpus and single-token mutation checks for the incremental parser.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace qpl::testing {

/// Valid plan texts: fixture dataset gold plans, the golden figures, the
/// bundled prompt examples, then random plans until `count` is reached.
std::vector<std::string> corpus_plans(std::size_t count, std::uint64_t seed);

struct Token {
  std::size_t begin;
  std::size_t end;
};

/// Independent lexer for mutation targets: brackets, commas, `#`, `=`, `.`,
/// parentheses, comparison operators, quoted strings and words.
std::vector<Token> lex(const std::string& text);

struct Mutation {
  std::string text;
  std::size_t anchor;  // offset of the changed token in `text`
  std::string kind;    // substitute, delete or insert
};

Mutation mutate(const std::string& text, std::mt19937_64& rng);

enum class MutationVerdict {
  StillParses,     // mutated text is a program; every prefix accepted
  RejectedEarly,   // rejected at or before the anchor
  RejectedLater,   // the prefix through the changed token is viable; rejected at the parse() error offset
  Truncated,       // text is a viable prefix of a longer program (Continuable) and parse() agrees it is incomplete
  Violation,       // anything else
};

const char* to_string(MutationVerdict v);

struct MutationResult {
  MutationVerdict verdict;
  std::string detail;
};

/// Classifies one mutation, checking the parser against itself and against parse().
MutationResult check_mutation(const Mutation& m);

/// True when every character prefix of `text` is Continuable or Complete,
/// and the whole text is Complete.
bool prefixes_accepted(const std::string& text, std::string* failure = nullptr);

}  // namespace qpl::testing
