#include "boxfact/numeralize.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string_view>
#include <unordered_map>

namespace boxfact {

namespace {

enum class WordClass { kZero, kUnit, kTeen, kTens, kHundred, kAnd, kHyphen };

struct Word {
  WordClass cls;
  int value;
};

const std::unordered_map<std::string, Word> &Lexicon() {
  static const std::unordered_map<std::string, Word> lex = {
      {"zero", {WordClass::kZero, 0}},
      {"one", {WordClass::kUnit, 1}},
      {"two", {WordClass::kUnit, 2}},
      {"three", {WordClass::kUnit, 3}},
      {"four", {WordClass::kUnit, 4}},
      {"five", {WordClass::kUnit, 5}},
      {"six", {WordClass::kUnit, 6}},
      {"seven", {WordClass::kUnit, 7}},
      {"eight", {WordClass::kUnit, 8}},
      {"nine", {WordClass::kUnit, 9}},
      {"ten", {WordClass::kTeen, 10}},
      {"eleven", {WordClass::kTeen, 11}},
      {"twelve", {WordClass::kTeen, 12}},
      {"thirteen", {WordClass::kTeen, 13}},
      {"fourteen", {WordClass::kTeen, 14}},
      {"fifteen", {WordClass::kTeen, 15}},
      {"sixteen", {WordClass::kTeen, 16}},
      {"seventeen", {WordClass::kTeen, 17}},
      {"eighteen", {WordClass::kTeen, 18}},
      {"nineteen", {WordClass::kTeen, 19}},
      {"twenty", {WordClass::kTens, 20}},
      {"thirty", {WordClass::kTens, 30}},
      {"forty", {WordClass::kTens, 40}},
      {"fifty", {WordClass::kTens, 50}},
      {"sixty", {WordClass::kTens, 60}},
      {"seventy", {WordClass::kTens, 70}},
      {"eighty", {WordClass::kTens, 80}},
      {"ninety", {WordClass::kTens, 90}},
      {"hundred", {WordClass::kHundred, 100}},
      {"and", {WordClass::kAnd, 0}},
      {"-", {WordClass::kHyphen, 0}},
  };
  return lex;
}

// A piece of a token: hyphenated tokens ("twenty-five") split into several
// atoms so that they parse like their spaced form.
struct Atom {
  std::size_t token;
  bool token_end;  // last atom of its token
  std::optional<Word> word;
};

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<Word> Classify(std::string_view piece) {
  const auto &lex = Lexicon();
  auto it = lex.find(Lower(piece));
  if (it == lex.end()) return std::nullopt;
  return it->second;
}

std::vector<Atom> Atomize(std::span<const std::string> tokens) {
  std::vector<Atom> atoms;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    std::string_view tok = tokens[t];
    bool splittable = tok.size() > 2 && tok.find('-') != std::string_view::npos &&
                      tok.front() != '-' && tok.back() != '-';
    if (!splittable) {
      atoms.push_back({t, true, Classify(tok)});
      continue;
    }
    std::size_t start = 0;
    while (true) {
      std::size_t dash = tok.find('-', start);
      std::string_view piece = tok.substr(start, dash - start);
      atoms.push_back({t, false, Classify(piece)});
      if (dash == std::string_view::npos) break;
      atoms.push_back({t, false, Word{WordClass::kHyphen, 0}});
      start = dash + 1;
    }
    atoms.back().token_end = true;
  }
  return atoms;
}

struct Parse {
  std::size_t end;  // one past the last atom
  int value;
};

bool Is(const std::vector<Atom> &a, std::size_t i, WordClass cls) {
  return i < a.size() && a[i].word && a[i].word->cls == cls;
}

// Every parse of a number below one hundred starting at atom i.
void BelowHundred(const std::vector<Atom> &a, std::size_t i,
                  std::vector<Parse> *out) {
  if (i >= a.size() || !a[i].word) return;
  const Word &w = *a[i].word;
  switch (w.cls) {
    case WordClass::kUnit:
    case WordClass::kTeen:
      out->push_back({i + 1, w.value});
      break;
    case WordClass::kTens:
      out->push_back({i + 1, w.value});
      if (Is(a, i + 1, WordClass::kUnit)) {
        out->push_back({i + 2, w.value + a[i + 1].word->value});
      }
      if (Is(a, i + 1, WordClass::kHyphen) && Is(a, i + 2, WordClass::kUnit)) {
        out->push_back({i + 3, w.value + a[i + 2].word->value});
      }
      break;
    default:
      break;
  }
}

std::vector<Parse> Cardinal(const std::vector<Atom> &a, std::size_t i) {
  std::vector<Parse> out;
  if (Is(a, i, WordClass::kZero)) {
    out.push_back({i + 1, 0});
    return out;
  }
  BelowHundred(a, i, &out);
  if (Is(a, i, WordClass::kUnit) && Is(a, i + 1, WordClass::kHundred)) {
    int base = a[i].word->value * 100;
    out.push_back({i + 2, base});
    std::size_t rest = i + 2;
    std::vector<Parse> tail;
    BelowHundred(a, rest, &tail);
    if (Is(a, rest, WordClass::kAnd)) BelowHundred(a, rest + 1, &tail);
    for (const Parse &p : tail) out.push_back({p.end, base + p.value});
  }
  return out;
}

}  // namespace

NumeralizeResult NumeralizeTokens(std::span<const std::string> tokens) {
  NumeralizeResult result;
  const std::vector<Atom> atoms = Atomize(tokens);
  // First atom of each token.
  std::vector<std::size_t> first_atom(tokens.size() + 1, atoms.size());
  for (std::size_t i = atoms.size(); i-- > 0;) first_atom[atoms[i].token] = i;

  std::size_t t = 0;
  while (t < tokens.size()) {
    std::size_t ai = first_atom[t];
    std::optional<Parse> best;
    for (const Parse &p : Cardinal(atoms, ai)) {
      if (!atoms[p.end - 1].token_end) continue;
      if (!best || p.end > best->end) best = p;
    }
    if (!best) {
      result.tokens.push_back(tokens[t]);
      ++t;
      continue;
    }
    std::size_t end_token = atoms[best->end - 1].token + 1;
    NumeralSpan span;
    span.start = t;
    span.end = end_token;
    span.value = best->value;
    span.original_tokens.assign(tokens.begin() + t, tokens.begin() + end_token);
    result.tokens.push_back(std::to_string(best->value));
    result.spans.push_back(std::move(span));
    t = end_token;
  }
  return result;
}

std::vector<std::size_t> ReindexBounds(
    std::span<const std::size_t> bounds, std::size_t token_count,
    std::span<const std::pair<std::size_t, std::size_t>> spans,
    std::span<const std::size_t> replacement_sizes) {
  // position[p] = new index of old token p; tokens inside a rewritten span map
  // to the span's first new token.
  std::vector<std::size_t> position(token_count + 1);
  std::size_t out = 0;
  std::size_t p = 0;
  std::size_t si = 0;
  while (p < token_count) {
    if (si < spans.size() && spans[si].first == p) {
      for (std::size_t q = spans[si].first; q < spans[si].second; ++q) {
        position[q] = out;
      }
      out += replacement_sizes[si];
      p = spans[si].second;
      ++si;
    } else {
      position[p++] = out++;
    }
  }
  position[token_count] = out;

  std::vector<std::size_t> result{0};
  for (std::size_t b : bounds) {
    std::size_t mapped = position[std::min(b, token_count)];
    if (mapped > result.back() && mapped < out) result.push_back(mapped);
  }
  return result;
}

Summary Numeralize(const Summary &summary) {
  NumeralizeResult r = NumeralizeTokens(summary.tokens);
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::vector<std::size_t> sizes;
  for (const NumeralSpan &s : r.spans) {
    spans.emplace_back(s.start, s.end);
    sizes.push_back(1);
  }
  Summary out;
  out.sentence_bounds = ReindexBounds(summary.sentence_bounds,
                                      summary.tokens.size(), spans, sizes);
  out.tokens = std::move(r.tokens);
  return out;
}

std::optional<double> RectifyPercent(double summary_value, double table_value,
                                     double tolerance) {
  if (std::fabs(std::round(summary_value) - std::round(table_value)) <=
      tolerance) {
    return table_value;
  }
  return std::nullopt;
}

}  // namespace boxfact
