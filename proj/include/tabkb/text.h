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

#ifndef TABKB_TEXT_H_
#define TABKB_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace tabkb {

std::string_view Trim(std::string_view s);
std::string AsciiLower(std::string_view s);

// NFKC compatibility normalization followed by a fold of typographic
// variants NFKC keeps distinct: U+2212 and dash punctuation become '-',
// middle dots and dot operators become U+00B7, the ohm sign becomes
// U+03A9. Invalid UTF-8 is passed through byte-wise.
std::string NormalizeCompat(std::string_view s);

// NormalizeCompat + ASCII lower-casing + whitespace collapsing.
std::string NormalizeForMatch(std::string_view s);

// True when `needle` occurs in `haystack` and is not glued to an ASCII
// letter or digit on either side. Both arguments should already be
// normalized for matching.
bool ContainsToken(std::string_view haystack, std::string_view needle);

// Removes (...) and [...] spans, including nested ones.
std::string RemoveBracketed(std::string_view s);

// Content of the last balanced (...) or [...] group, if any.
std::string LastBracketed(std::string_view s);

std::vector<std::string> SplitOn(std::string_view s, char sep);

// Decodes UTF-8 into code points; malformed bytes map to U+FFFD.
std::u32string DecodeUtf8(std::string_view s);
std::string EncodeUtf8(std::u32string_view s);

}  // namespace tabkb

#endif  // TABKB_TEXT_H_
