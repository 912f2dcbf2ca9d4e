#include "qpl/prompt.hpp"

#include <cctype>
#include <sstream>

#include "qpl/errors.hpp"
#include "qpl/printer.hpp"

namespace qpl {

std::string_view prompt_asset(std::string_view name) {
  for (const auto& a : prompt_assets()) {
    if (a.name == name) return a.text;
  }
  throw Error("no prompt asset named " + std::string(name));
}

namespace {

std::string trim_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::string fill_slots(std::string_view tmpl, std::string_view schema, std::string_view question,
                       std::string_view qpl) {
  const std::pair<std::string_view, std::string_view> slots[] = {
      {"{schema}", schema}, {"{question}", question}, {"{qpl}", qpl}};
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    bool replaced = false;
    for (const auto& [marker, value] : slots) {
      if (tmpl.substr(i, marker.size()) == marker) {
        out += value;
        i += marker.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(tmpl[i++]);
  }
  return out;
}

bool starts_step(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (i >= line.size() || line[i] != '#') return false;
  std::size_t j = i + 1;
  while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
  if (j == i + 1) return false;
  while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j]))) ++j;
  return j < line.size() && line[j] == '=';
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

std::string build_qd_prompt(const EncodedSchema& schema, std::string_view question,
                            const QplPlan& plan) {
  const auto& assets = prompt_assets();
  std::string out;
  for (std::size_t i = 0; i < assets.size(); ++i) {
    const bool last = i + 1 == assets.size();
    if (i) out += "\n";
    if (last) {
      out += fill_slots(assets[i].text, trim_trailing_newlines(schema.text), question,
                        trim_trailing_newlines(pretty_print(plan)));
    } else {
      out += assets[i].text;
    }
  }
  return out;
}

std::vector<std::string> split_qd_steps(std::string_view text) {
  std::vector<std::string> steps;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (starts_step(line)) {
      steps.push_back(trim(line));
    } else if (!steps.empty()) {
      const std::string t = trim(line);
      if (t.empty()) continue;
      steps.back() += " " + t;
    }
  }
  if (steps.empty()) throw MalformedResponse("response contains no `#k = ...` step");
  return steps;
}

}  // namespace qpl
