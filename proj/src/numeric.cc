// Copyright 2026 The tabkb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabkb/numeric.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "tabkb/text.h"

namespace tabkb {
namespace {

constexpr std::string_view kTimes = "\xC3\x97";     // U+00D7
constexpr std::string_view kDivide = "\xC3\xB7";    // U+00F7
constexpr std::string_view kPlusMinus = "\xC2\xB1";  // U+00B1
constexpr std::string_view kMiddleDot = "\xC2\xB7";  // U+00B7
constexpr std::string_view kApprox = "\xE2\x89\x88";  // U+2248
constexpr std::string_view kLessEq = "\xE2\x89\xA4";
constexpr std::string_view kGreaterEq = "\xE2\x89\xA5";

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool StartsWithAt(std::string_view s, size_t i, std::string_view p) {
  return s.substr(i, p.size()) == p;
}

size_t SkipSpaces(std::string_view s, size_t i) {
  while (i < s.size() && s[i] == ' ') ++i;
  return i;
}

// Drops "[12]", "[3, 4]", "[5-7]" citation markers.
std::string StripCitations(std::string_view s) {
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '[') {
      size_t j = i + 1;
      bool citation = true;
      bool any_digit = false;
      while (j < s.size() && s[j] != ']') {
        const char c = s[j];
        if (IsDigit(c)) {
          any_digit = true;
        } else if (c != ',' && c != ' ' && c != '-') {
          citation = false;
        }
        ++j;
      }
      if (j < s.size() && citation && any_digit) {
        i = j + 1;
        continue;
      }
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

struct Scanned {
  std::string text;  // mantissa digits, normalized for strtod
  size_t end = 0;
};

// Unsigned decimal mantissa at i, with optional thousands separators.
std::optional<Scanned> ScanMantissa(std::string_view s, size_t i) {
  size_t j = i;
  std::string digits;
  while (j < s.size() && IsDigit(s[j])) digits.push_back(s[j++]);
  // Thousands separators: 1-3 leading digits followed by ",ddd" groups.
  if (!digits.empty() && digits.size() <= 3) {
    size_t k = j;
    std::string grouped = digits;
    bool any = false;
    while (k + 3 < s.size() && s[k] == ',' && IsDigit(s[k + 1]) && IsDigit(s[k + 2]) &&
           IsDigit(s[k + 3]) && (k + 4 >= s.size() || !IsDigit(s[k + 4]))) {
      grouped.append(s.substr(k + 1, 3));
      k += 4;
      any = true;
    }
    if (any) {
      digits = grouped;
      j = k;
    }
  }
  if (j < s.size() && s[j] == '.' && j + 1 < s.size() && IsDigit(s[j + 1])) {
    digits.push_back('.');
    ++j;
    while (j < s.size() && IsDigit(s[j])) digits.push_back(s[j++]);
  } else if (!digits.empty() && j < s.size() && s[j] == '.' &&
             (j + 1 >= s.size() || !IsAlpha(s[j + 1]))) {
    ++j;  // "12." trailing point
  }
  if (digits.empty()) return std::nullopt;
  return Scanned{digits, j};
}

// Exponent suffix after a mantissa: "e-3", "E+05", "x10^-6", "x 10-6",
// "*10(-6)". Returns the exponent text and the new end.
std::optional<Scanned> ScanExponent(std::string_view s, size_t i) {
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    size_t j = i + 1;
    std::string exp;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) exp.push_back(s[j++]);
    if (j < s.size() && IsDigit(s[j])) {
      while (j < s.size() && IsDigit(s[j])) exp.push_back(s[j++]);
      if (j >= s.size() || !IsAlpha(s[j])) return Scanned{exp, j};
    }
    return std::nullopt;
  }
  size_t j = SkipSpaces(s, i);
  size_t after_op = std::string_view::npos;
  if (StartsWithAt(s, j, kTimes)) {
    after_op = j + kTimes.size();
  } else if (StartsWithAt(s, j, kMiddleDot)) {
    after_op = j + kMiddleDot.size();
  } else if (j < s.size() && (s[j] == 'x' || s[j] == 'X' || s[j] == '*')) {
    after_op = j + 1;
  }
  if (after_op == std::string_view::npos) return std::nullopt;
  j = SkipSpaces(s, after_op);
  if (!StartsWithAt(s, j, "10")) return std::nullopt;
  j += 2;
  j = SkipSpaces(s, j);
  if (j < s.size() && s[j] == '^') j = SkipSpaces(s, j + 1);
  bool paren = false;
  if (j < s.size() && (s[j] == '(' || s[j] == '{')) {
    paren = true;
    ++j;
  }
  std::string exp;
  if (j < s.size() && (s[j] == '-' || s[j] == '+')) exp.push_back(s[j++]);
  if (j >= s.size() || !IsDigit(s[j])) return std::nullopt;
  while (j < s.size() && IsDigit(s[j])) exp.push_back(s[j++]);
  if (paren && j < s.size() && (s[j] == ')' || s[j] == '}')) ++j;
  return Scanned{exp, j};
}

struct Number {
  double value = 0.0;
  bool had_exponent = false;
  size_t end = 0;
};

// Signed number (mantissa + optional exponent) starting exactly at i.
std::optional<Number> ScanNumber(std::string_view s, size_t i, bool allow_sign) {
  bool negative = false;
  size_t j = i;
  if (allow_sign && j < s.size() && (s[j] == '-' || s[j] == '+')) {
    negative = s[j] == '-';
    ++j;
  }
  std::optional<Scanned> mantissa;
  if (j < s.size() && s[j] == '.' && j + 1 < s.size() && IsDigit(s[j + 1])) {
    auto frac = ScanMantissa(s, j + 1);
    if (!frac) return std::nullopt;
    mantissa = Scanned{"0." + frac->text, frac->end};
  } else {
    mantissa = ScanMantissa(s, j);
  }
  if (!mantissa) return std::nullopt;
  std::string text = (negative ? "-" : "") + mantissa->text;
  Number out;
  out.end = mantissa->end;
  if (auto exp = ScanExponent(s, out.end)) {
    text += "e" + exp->text;
    out.end = exp->end;
    out.had_exponent = true;
  }
  out.value = std::strtod(text.c_str(), nullptr);
  if (!std::isfinite(out.value)) return std::nullopt;
  return out;
}

bool SignStartsNumber(std::string_view s, size_t i) {
  if (s[i] != '-' && s[i] != '+') return false;
  if (i > 0 && (std::isalnum(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == ')'))
    return false;
  const size_t k = i + 1;
  return k < s.size() &&
         (IsDigit(s[k]) || (s[k] == '.' && k + 1 < s.size() && IsDigit(s[k + 1])));
}

std::optional<NumericParse> ParseFrom(const std::string& s, size_t start) {
  for (size_t i = start; i < s.size(); ++i) {
    const bool digit_start =
        IsDigit(s[i]) || (s[i] == '.' && i + 1 < s.size() && IsDigit(s[i + 1]) &&
                          (i == 0 || !IsDigit(s[i - 1])));
    if (!digit_start && !SignStartsNumber(s, i)) continue;
    auto first = ScanNumber(s, i, /*allow_sign=*/true);
    if (!first) continue;

    NumericParse out;
    out.raw = s;
    out.value = first->value;
    out.had_exponent = first->had_exponent;
    size_t pos = first->end;

    // "2.5(3)" uncertainty in the last digits.
    if (pos < s.size() && s[pos] == '(') {
      size_t k = pos + 1;
      while (k < s.size() && IsDigit(s[k])) ++k;
      if (k > pos + 1 && k < s.size() && s[k] == ')') {
        out.had_uncertainty = true;
        pos = k + 1;
      }
    }

    size_t k = SkipSpaces(s, pos);
    size_t after_pm = std::string_view::npos;
    if (StartsWithAt(s, k, kPlusMinus)) {
      after_pm = k + kPlusMinus.size();
    } else if (StartsWithAt(s, k, "+/-")) {
      after_pm = k + 3;
    } else if (StartsWithAt(s, k, "+-")) {
      after_pm = k + 2;
    }
    if (after_pm != std::string_view::npos) {
      size_t m = SkipSpaces(s, after_pm);
      if (ScanNumber(s, m, false)) {
        out.had_uncertainty = true;
        return out;
      }
    }

    // Ranges "500-600", "500 - 600", "500 to 600".
    size_t sep_end = std::string_view::npos;
    if (k < s.size() && (s[k] == '-' || s[k] == '~')) {
      sep_end = k + 1;
    } else if (StartsWithAt(s, k, "to ")) {
      sep_end = k + 2;
    }
    if (sep_end != std::string_view::npos) {
      size_t m = SkipSpaces(s, sep_end);
      if (m < s.size() && (IsDigit(s[m]) || s[m] == '.')) {
        if (auto second = ScanNumber(s, m, false)) {
          if (second->value >= out.value) {
            out.value = 0.5 * (out.value + second->value);
            out.had_uncertainty = true;
            out.was_range = true;
            out.had_exponent = out.had_exponent || second->had_exponent;
          }
        }
      }
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::optional<NumericParse> FindNum(std::string_view cell) {
  const std::string s = StripCitations(NormalizeCompat(cell));
  return ParseFrom(s, 0);
}

std::optional<NumericParse> ParseValueCell(std::string_view cell) {
  const std::string s = StripCitations(NormalizeCompat(cell));
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '(' || s[i] == '~' || s[i] == '<' || s[i] == '>' ||
        s[i] == '=' || s[i] == '*') {
      ++i;
    } else if (StartsWithAt(s, i, kApprox)) {
      i += kApprox.size();
    } else if (StartsWithAt(s, i, kLessEq) || StartsWithAt(s, i, kGreaterEq)) {
      i += 3;
    } else {
      break;
    }
  }
  if (i >= s.size()) return std::nullopt;
  const bool leads = IsDigit(s[i]) || (s[i] == '.' && i + 1 < s.size() && IsDigit(s[i + 1])) ||
                     ((s[i] == '-' || s[i] == '+') && SignStartsNumber(s, i));
  if (!leads) return std::nullopt;
  auto parsed = ParseFrom(s, i);
  if (parsed) parsed->raw = std::string(cell);
  return parsed;
}

size_t FirstNumericCell(std::span<const std::string> line) {
  for (size_t i = 0; i < line.size(); ++i) {
    if (IsNumericCell(line[i])) return i;
  }
  return line.size();
}

std::vector<double> LineValues(std::span<const std::string> line, size_t begin) {
  std::vector<double> out;
  for (size_t i = begin; i < line.size(); ++i) {
    if (auto v = ParseValueCell(line[i])) out.push_back(v->value);
  }
  return out;
}

std::optional<double> Median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double Mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double StdDev(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double mu = Mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / static_cast<double>(values.size()));
}

namespace {

class ArithmeticParser {
 public:
  explicit ArithmeticParser(std::string s) : s_(std::move(s)) {}

  std::optional<double> Parse() {
    auto v = Expr();
    Skip();
    if (!v || pos_ != s_.size() || !std::isfinite(*v)) return std::nullopt;
    return v;
  }

 private:
  void Skip() { pos_ = SkipSpaces(s_, pos_); }

  bool Eat(std::string_view tok) {
    Skip();
    if (StartsWithAt(s_, pos_, tok)) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  std::optional<double> Expr() {
    auto lhs = Term();
    while (lhs) {
      if (Eat("+")) {
        auto rhs = Term();
        if (!rhs) return std::nullopt;
        *lhs += *rhs;
      } else if (Eat("-")) {
        auto rhs = Term();
        if (!rhs) return std::nullopt;
        *lhs -= *rhs;
      } else {
        break;
      }
    }
    return lhs;
  }

  std::optional<double> Term() {
    auto lhs = Power();
    while (lhs) {
      if (Eat("*") || Eat(kTimes) || Eat("x") || Eat(kMiddleDot)) {
        auto rhs = Power();
        if (!rhs) return std::nullopt;
        *lhs *= *rhs;
      } else if (Eat("/") || Eat(kDivide)) {
        auto rhs = Power();
        if (!rhs || *rhs == 0.0) return std::nullopt;
        *lhs /= *rhs;
      } else {
        break;
      }
    }
    return lhs;
  }

  std::optional<double> Power() {
    auto base = Unary();
    if (base && Eat("^")) {
      auto exp = Power();
      if (!exp) return std::nullopt;
      return std::pow(*base, *exp);
    }
    return base;
  }

  std::optional<double> Unary() {
    if (Eat("-")) {
      auto v = Unary();
      if (!v) return std::nullopt;
      return -*v;
    }
    if (Eat("+")) return Unary();
    if (Eat("(")) {
      auto v = Expr();
      if (!v || !Eat(")")) return std::nullopt;
      return v;
    }
    Skip();
    // Plain decimal literal with optional e-notation; the "x 10^k" form is
    // handled by Term/Power.
    size_t j = pos_;
    std::string text;
    while (j < s_.size() && (IsDigit(s_[j]) || s_[j] == '.')) text.push_back(s_[j++]);
    if (text.empty() || text == ".") return std::nullopt;
    if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
      size_t k = j + 1;
      std::string exp = "e";
      if (k < s_.size() && (s_[k] == '-' || s_[k] == '+')) exp.push_back(s_[k++]);
      if (k < s_.size() && IsDigit(s_[k])) {
        while (k < s_.size() && IsDigit(s_[k])) exp.push_back(s_[k++]);
        text += exp;
        j = k;
      }
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) return std::nullopt;
    pos_ = j;
    return v;
  }

  std::string s_;
  size_t pos_ = 0;
};

}  // namespace

std::optional<double> EvaluateArithmetic(std::string_view expr) {
  return ArithmeticParser(NormalizeCompat(expr)).Parse();
}

std::string FormatDouble(double v) {
  char buf[64];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

}  // namespace tabkb
