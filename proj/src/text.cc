// Copyright 2026 The pnmt Authors.
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

#include "pnmt/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <fstream>
#include <istream>
#include <ostream>

#include "pnmt/error.h"

namespace pnmt {
namespace {

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Letters NFKD leaves intact but which read as Latin letter sequences.
const char* LatinExpansion(UChar32 c) {
  switch (c) {
    case 0x00DF: return "SS";  // ß
    case 0x1E9E: return "SS";  // ẞ
    case 0x00C6: case 0x00E6: return "AE";
    case 0x0152: case 0x0153: return "OE";
    case 0x00D8: case 0x00F8: return "O";
    case 0x0110: case 0x0111: return "D";
    case 0x0141: case 0x0142: return "L";
    case 0x00DE: case 0x00FE: return "TH";
    case 0x0131: return "I";  // dotless i
    default: return nullptr;
  }
}

}  // namespace

Sentence SplitWhitespace(std::string_view line) {
  Sentence out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsAsciiSpace(line[i])) ++i;
    size_t j = i;
    while (j < line.size() && !IsAsciiSpace(line[j])) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string JoinTokens(const Sentence& tokens, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(tokens[i]);
  }
  return out;
}

std::vector<std::string> SplitCodePoints(std::string_view text) {
  std::vector<std::string> out;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) i = start + 1;
    out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string FoldToAsciiLetters(std::string_view token) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkd = icu::Normalizer2::getNFKDInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidArgument, "ICU NFKD normalizer unavailable");
  }
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(token.data(), static_cast<int32_t>(token.size())));
  const icu::UnicodeString decomposed = nfkd->normalize(source, status);
  if (U_FAILURE(status)) return {};

  std::string out;
  for (int32_t i = 0; i < decomposed.length();) {
    const UChar32 c = decomposed.char32At(i);
    i += U16_LENGTH(c);
    if (c < 0x80) {
      if (c >= 'a' && c <= 'z') {
        out.push_back(static_cast<char>(c - 'a' + 'A'));
      } else if (c >= 'A' && c <= 'Z') {
        out.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (u_getCombiningClass(c) != 0 || u_charType(c) == U_NON_SPACING_MARK) {
      continue;
    }
    if (const char* expansion = LatinExpansion(c)) out.append(expansion);
  }
  return out;
}

Corpus ReadCorpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) corpus.push_back(SplitWhitespace(line));
  return corpus;
}

Corpus ReadCorpusFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadCorpus(in);
}

void WriteCorpus(std::ostream& out, const Corpus& corpus) {
  for (const Sentence& s : corpus) out << JoinTokens(s) << '\n';
}

void WriteCorpusFile(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  WriteCorpus(out, corpus);
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace pnmt
