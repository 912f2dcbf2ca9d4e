#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qpl/encode.hpp"
#include "qpl/plan.hpp"

namespace qpl {

struct PromptAsset {
  std::string_view name;
  std::string_view text;
};

/// Bundled prompt files, sorted by file name: preamble, grammar, six
/// examples, and the trailer with `{schema}`, `{question}` and `{qpl}` slots.
const std::vector<PromptAsset>& prompt_assets();

/// Throws Error for an unknown name.
std::string_view prompt_asset(std::string_view name);

/// The assets joined by blank lines, with the trailer slots filled by the
/// schema text, the question and pretty_print(plan). Slot markers inside the
/// substituted values are left alone.
std::string build_qd_prompt(const EncodedSchema& schema, std::string_view question,
                            const QplPlan& plan);

/// Splits model output into `#k = ...` steps. Lines before the first marker
/// are dropped; continuation lines are joined to their step with one space.
/// Throws MalformedResponse when there is no marker.
std::vector<std::string> split_qd_steps(std::string_view text);

}  // namespace qpl
