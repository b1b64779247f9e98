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

#include "tabkb/text.h"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <cctype>

namespace tabkb {
namespace {

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsAsciiAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

char32_t FoldCodePoint(char32_t c) {
  switch (c) {
    case 0x2212:  // minus sign
    case 0x2010:  // hyphen
    case 0x2011:  // non-breaking hyphen
    case 0x2012:  // figure dash
    case 0x2013:  // en dash
    case 0x2014:  // em dash
    case 0x2015:  // horizontal bar
    case 0xFE63:
    case 0xFF0D:
      return U'-';
    case 0x2022:  // bullet
    case 0x2219:  // bullet operator
    case 0x22C5:  // dot operator
    case 0x2027:
    case 0x30FB:
      return 0x00B7;
    case 0x2126:  // ohm sign
      return 0x03A9;
    case 0x2044:  // fraction slash
    case 0x2215:  // division slash
      return U'/';
    case 0x00A0:
    case 0x2009:
    case 0x200A:
    case 0x202F:
      return U' ';
    case 0x2032:  // prime
    case 0x2019:
    case 0x2018:
      return U'\'';
    default:
      return c;
  }
}

}  // namespace

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsAsciiSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsAsciiSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::u32string DecodeUtf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::string NormalizeCompat(std::string_view s) {
  bool ascii = true;
  for (char c : s) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return std::string(s);

  std::string nfkc;
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFKCInstance(status);
  if (U_SUCCESS(status)) {
    icu::UnicodeString src = icu::UnicodeString::fromUTF8(
        icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    icu::UnicodeString dst = norm->normalize(src, status);
    if (U_SUCCESS(status)) dst.toUTF8String(nfkc);
  }
  if (!U_SUCCESS(status)) nfkc.assign(s);

  std::u32string cps = DecodeUtf8(nfkc);
  for (char32_t& c : cps) c = FoldCodePoint(c);
  return EncodeUtf8(cps);
}

std::string NormalizeForMatch(std::string_view s) {
  std::string folded = AsciiLower(NormalizeCompat(s));
  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  for (char c : folded) {
    if (IsAsciiSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

bool ContainsToken(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    const bool left_ok =
        pos == 0 || !IsAsciiAlnum(haystack[pos - 1]) || !IsAsciiAlnum(needle.front());
    const size_t end = pos + needle.size();
    const bool right_ok = end >= haystack.size() || !IsAsciiAlnum(haystack[end]) ||
                          !IsAsciiAlnum(needle.back());
    if (left_ok && right_ok) return true;
    pos = haystack.find(needle, pos + 1);
  }
  return false;
}

std::string RemoveBracketed(std::string_view s) {
  std::string out;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') {
      ++depth;
      continue;
    }
    if ((c == ')' || c == ']') && depth > 0) {
      --depth;
      continue;
    }
    if (depth == 0) out.push_back(c);
  }
  return std::string(Trim(out));
}

std::string LastBracketed(std::string_view s) {
  // Scan from the right for a closing bracket and walk back to its opener.
  for (size_t end = s.size(); end-- > 0;) {
    if (s[end] != ')' && s[end] != ']') continue;
    int depth = 0;
    for (size_t i = end + 1; i-- > 0;) {
      if (s[i] == ')' || s[i] == ']') ++depth;
      if (s[i] == '(' || s[i] == '[') {
        if (--depth == 0) return std::string(Trim(s.substr(i + 1, end - i - 1)));
      }
    }
    return {};
  }
  return {};
}

std::vector<std::string> SplitOn(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace tabkb
