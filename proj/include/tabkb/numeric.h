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

#ifndef TABKB_NUMERIC_H_
#define TABKB_NUMERIC_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tabkb {

struct NumericParse {
  double value = 0.0;
  bool had_uncertainty = false;  // a +/- part, "(3)" suffix, or a range
  bool had_exponent = false;     // e-notation or "x 10^k"
  bool was_range = false;        // "a-b" collapsed to its midpoint
  std::string raw;
};

// Central numeric value of a cell. Handles e-notation, "x10^k" forms
// (including Unicode superscripts and minus), +/- uncertainties, "2.5(3)"
// uncertainty suffixes, ranges "a-b" / "a to b" (midpoint), thousands
// separators, citation brackets and surrounding text. Returns nullopt when
// the cell holds no number.
std::optional<NumericParse> FindNum(std::string_view cell);

// Stricter variant for data cells: the number must lead the cell (after an
// optional comparator or approximation sign). "SiO2 (mol%)" and "G1" are
// not values.
std::optional<NumericParse> ParseValueCell(std::string_view cell);

inline bool IsNumericCell(std::string_view cell) {
  return ParseValueCell(cell).has_value();
}

// Index of the first cell ParseValueCell accepts; line.size() when none.
size_t FirstNumericCell(std::span<const std::string> line);

// Parsed values of the cells in [begin, line.size()).
std::vector<double> LineValues(std::span<const std::string> line, size_t begin);

// np.median semantics; nullopt on empty input.
std::optional<double> Median(std::vector<double> values);

double Mean(std::span<const double> values);
// Population standard deviation.
double StdDev(std::span<const double> values);

// Arithmetic over numbers, + - * / ^, x and the multiplication/division
// signs, and parentheses. Anything else yields nullopt.
std::optional<double> EvaluateArithmetic(std::string_view expr);

// Shortest "%.*g" rendering that reads back to the same double.
std::string FormatDouble(double v);

}  // namespace tabkb

#endif  // TABKB_NUMERIC_H_
