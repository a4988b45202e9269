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

#include "pnmt/codecs.h"

#include <fstream>
#include <sstream>

#include "pnmt/error.h"
#include "pnmt/text.h"

namespace pnmt {
namespace {

std::string FoldOrThrow(std::string_view token) {
  std::string letters = FoldToAsciiLetters(token);
  if (letters.empty()) {
    throw Error(ErrorCode::kNonAlphabeticToken,
                "no alphabetic content in '" + std::string(token) + "'");
  }
  return letters;
}

char SoundexDigit(char c) {
  switch (c) {
    case 'B': case 'F': case 'P': case 'V':
      return '1';
    case 'C': case 'G': case 'J': case 'K': case 'Q': case 'S': case 'X':
    case 'Z':
      return '2';
    case 'D': case 'T':
      return '3';
    case 'L':
      return '4';
    case 'M': case 'N':
      return '5';
    case 'R':
      return '6';
    default:
      return 0;
  }
}

bool IsUpperVowel(char c) {
  return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U';
}

bool IsLowerVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool OneOf(char c, std::string_view set) {
  return c != 0 && set.find(c) != std::string_view::npos;
}

}  // namespace

std::string SoundexEncode(std::string_view token) {
  const std::string s = FoldOrThrow(token);
  std::string code(1, s[0]);
  char last = SoundexDigit(s[0]);
  for (size_t i = 1; i < s.size() && code.size() < 4; ++i) {
    const char digit = SoundexDigit(s[i]);
    if (digit != 0) {
      if (digit != last) code.push_back(digit);
      last = digit;
    } else if (s[i] != 'H' && s[i] != 'W') {
      // Vowels separate; H and W do not.
      last = 0;
    }
  }
  code.resize(4, '0');
  return code;
}

std::string NysiisEncode(std::string_view token, NysiisOptions options) {
  std::string s = FoldOrThrow(token);

  // Prefixes.
  if (s.starts_with("MAC")) {
    s.replace(0, 3, "MCC");
  } else if (s.starts_with("KN")) {
    s.erase(0, 1);
  } else if (s.starts_with("K")) {
    s[0] = 'C';
  } else if (s.starts_with("PH") || s.starts_with("PF")) {
    s.replace(0, 2, "FF");
  } else if (s.starts_with("SCH")) {
    s.replace(0, 3, "SSS");
  }

  // Suffixes.
  if (s.ends_with("IE") || s.ends_with("EE")) {
    s.replace(s.size() - 2, 2, "Y");
  } else if (s.ends_with("DT") || s.ends_with("RT") || s.ends_with("RD") ||
             s.ends_with("NT") || s.ends_with("ND")) {
    s.replace(s.size() - 2, 2, "D");
  }

  std::string key(1, s[0]);
  const size_t n = s.size();
  for (size_t i = 1; i < n; ++i) {
    const char c = s[i];
    const char next = i + 1 < n ? s[i + 1] : 0;
    std::string piece(1, c);
    if (c == 'E' && next == 'V') {
      piece = "AF";
      ++i;
    } else if (IsUpperVowel(c)) {
      piece = "A";
    } else if (c == 'Q') {
      piece = "G";
    } else if (c == 'Z') {
      piece = "S";
    } else if (c == 'M') {
      piece = "N";
    } else if (c == 'K') {
      piece = next == 'N' ? "N" : "C";
    } else if (c == 'S' && s.compare(i + 1, 2, "CH") == 0) {
      piece = "SS";
      i += 2;
    } else if (c == 'P' && next == 'H') {
      piece = "F";
      ++i;
    } else if (c == 'H' && (!IsUpperVowel(s[i - 1]) ||
                            (next != 0 && !IsUpperVowel(next)) || next == 0)) {
      piece = IsUpperVowel(s[i - 1]) ? "A" : std::string(1, s[i - 1]);
    } else if (c == 'W' && IsUpperVowel(s[i - 1])) {
      piece = std::string(1, s[i - 1]);
    }
    if (piece.back() != key.back()) key += piece;
  }

  if (key.ends_with('S') && key != "S") key.pop_back();
  if (key.ends_with("AY")) key.replace(key.size() - 2, 2, "Y");
  if (key.ends_with('A') && key != "A") key.pop_back();
  if (options.truncate_to_six && key.size() > 6) key.resize(6);
  return key;
}

std::string MetaphoneEncode(std::string_view token) {
  std::string s = FoldOrThrow(token);
  for (char& c : s) c = static_cast<char>(c - 'A' + 'a');

  if (s.starts_with("kn") || s.starts_with("gn") || s.starts_with("pn") ||
      s.starts_with("wr") || s.starts_with("ae")) {
    s.erase(0, 1);
  }

  std::string out;
  const size_t n = s.size();
  for (size_t i = 0; i < n; ++i) {
    const char c = s[i];
    const char next = i + 1 < n ? s[i + 1] : 0;
    const char after = i + 2 < n ? s[i + 2] : 0;
    const char prev = i > 0 ? s[i - 1] : 0;

    // Doubled letters collapse, except C.
    if (c == next && c != 'c') continue;

    switch (c) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        if (i == 0) out.push_back(c);
        break;
      case 'b':
        // Silent in a word-final MB.
        if (!(prev == 'm' && next == 0)) out.push_back('b');
        break;
      case 'c':
        if ((next == 'i' && after == 'a') || next == 'h') {
          out.push_back('x');
          ++i;
        } else if (OneOf(next, "iey")) {
          out.push_back('s');
          ++i;
        } else {
          out.push_back('k');
        }
        break;
      case 'd':
        if (next == 'g' && OneOf(after, "iey")) {
          out.push_back('j');
          i += 2;
        } else {
          out.push_back('t');
        }
        break;
      case 'f': case 'j': case 'l': case 'm': case 'n': case 'r':
        out.push_back(c);
        break;
      case 'g':
        if (OneOf(next, "iey")) {
          out.push_back('j');
        } else if (next == 'h' && !IsLowerVowel(after)) {
          // GH not followed by a vowel is silent (both letters).
          ++i;
        } else if (next == 'n' && after == 0) {
          // Silent G in a word-final GN; the N is still coded.
        } else {
          out.push_back('k');
        }
        break;
      case 'h':
        if (i == 0 || IsLowerVowel(next) || !IsLowerVowel(prev)) {
          out.push_back('h');
        }
        break;
      case 'k':
        if (i == 0 || prev != 'c') out.push_back('k');
        break;
      case 'p':
        if (next == 'h') {
          out.push_back('f');
          ++i;
        } else {
          out.push_back('p');
        }
        break;
      case 'q':
        out.push_back('k');
        break;
      case 's':
        if (next == 'h') {
          out.push_back('x');
          ++i;
        } else if (next == 'i' && OneOf(after, "oa")) {
          out.push_back('x');
          i += 2;
        } else {
          out.push_back('s');
        }
        break;
      case 't':
        if (next == 'i' && OneOf(after, "oa")) {
          out.push_back('x');
        } else if (next == 'h') {
          out.push_back('0');
          ++i;
        } else if (!(next == 'c' && after == 'h')) {
          out.push_back('t');
        }
        break;
      case 'v':
        out.push_back('f');
        break;
      case 'w':
        if (i == 0 && next == 'h') {
          out.push_back('w');
          ++i;
        } else if (IsLowerVowel(next)) {
          out.push_back('w');
        }
        break;
      case 'x':
        if (i == 0) {
          out.push_back(next == 'h' || (next == 'i' && OneOf(after, "oa"))
                            ? 'x'
                            : 's');
        } else {
          out += "ks";
        }
        break;
      case 'y':
        if (IsLowerVowel(next)) out.push_back('y');
        break;
      case 'z':
        out.push_back('s');
        break;
      default:
        break;
    }
  }
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::string PhoneticEncode(PhoneticCodec codec, std::string_view token) {
  switch (codec) {
    case PhoneticCodec::kSoundex:
      return SoundexEncode(token);
    case PhoneticCodec::kNysiis:
      return NysiisEncode(token);
    case PhoneticCodec::kMetaphone:
      return MetaphoneEncode(token);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown phonetic codec");
}

CodeTable CodeTable::Parse(std::string_view contents, TableKind kind) {
  Entries entries;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < contents.size()) {
    size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kMalformedTableLine,
                  "line " + std::to_string(line_no) +
                      ": expected character<TAB>code");
    }
    const std::string_view key = line.substr(0, tab);
    const std::string_view code = line.substr(tab + 1);
    if (SplitCodePoints(key).size() != 1 ||
        SplitWhitespace(code).size() != 1) {
      throw Error(ErrorCode::kMalformedTableLine,
                  "line " + std::to_string(line_no) +
                      ": key must be one character and code one token");
    }
    entries[std::string(key)].emplace_back(code);
  }
  if (entries.empty()) throw Error(ErrorCode::kEmptyTable, "no table entries");
  return CodeTable(kind, std::move(entries));
}

CodeTable CodeTable::Load(const std::string& path, TableKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Parse(buffer.str(), kind);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

const std::vector<std::string>* CodeTable::Find(
    std::string_view character) const {
  auto it = entries_.find(character);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> CodeTable::DefaultCode(
    std::string_view character) const {
  const auto* codes = Find(character);
  if (codes == nullptr) return std::nullopt;
  return codes->front();
}

std::vector<std::string> TableEncode(std::string_view token,
                                     const CodeTable& table,
                                     Granularity granularity) {
  std::vector<std::string> out;
  for (std::string& ch : SplitCodePoints(token)) {
    const auto* codes = table.Find(ch);
    std::string code = codes != nullptr ? codes->front() : std::move(ch);
    if (granularity == Granularity::kPerCharacter) {
      out.push_back(std::move(code));
    } else {
      for (std::string& piece : SplitCodePoints(code)) {
        out.push_back(std::move(piece));
      }
    }
  }
  return out;
}

std::vector<std::string> Encoder::EncodeOrPassThrough(
    std::string_view token, bool* passed_through) const {
  if (passed_through != nullptr) *passed_through = false;
  try {
    return Encode(token);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonAlphabeticToken) throw;
    if (passed_through != nullptr) *passed_through = true;
    return {std::string(token)};
  }
}

std::string Encoder::UnitKey(std::string_view token) const {
  return JoinTokens(EncodeOrPassThrough(token, nullptr));
}

namespace {

class PhoneticEncoder : public Encoder {
 public:
  PhoneticEncoder(PhoneticCodec codec, NysiisOptions nysiis)
      : codec_(codec), nysiis_(nysiis) {}

  std::vector<std::string> Encode(std::string_view token) const override {
    if (codec_ == PhoneticCodec::kNysiis) return {NysiisEncode(token, nysiis_)};
    return {PhoneticEncode(codec_, token)};
  }

  std::string Name() const override {
    return std::string(PhoneticCodecName(codec_));
  }

 private:
  PhoneticCodec codec_;
  NysiisOptions nysiis_;
};

class TableEncoder : public Encoder {
 public:
  TableEncoder(std::shared_ptr<const CodeTable> table, Granularity granularity)
      : table_(std::move(table)), granularity_(granularity) {}

  std::vector<std::string> Encode(std::string_view token) const override {
    return TableEncode(token, *table_, granularity_);
  }

  std::string Name() const override {
    std::string name = table_->kind() == TableKind::kPinyin ? "pinyin" : "wubi";
    if (granularity_ == Granularity::kLetters) name += "-letters";
    return name;
  }

  bool IsTokenAligned() const override { return false; }

 private:
  std::shared_ptr<const CodeTable> table_;
  Granularity granularity_;
};

}  // namespace

std::unique_ptr<Encoder> MakePhoneticEncoder(PhoneticCodec codec,
                                             NysiisOptions nysiis) {
  return std::make_unique<PhoneticEncoder>(codec, nysiis);
}

std::unique_ptr<Encoder> MakeTableEncoder(std::shared_ptr<const CodeTable> table,
                                          Granularity granularity) {
  return std::make_unique<TableEncoder>(std::move(table), granularity);
}

std::optional<PhoneticCodec> ParsePhoneticCodec(std::string_view name) {
  if (name == "soundex") return PhoneticCodec::kSoundex;
  if (name == "nysiis") return PhoneticCodec::kNysiis;
  if (name == "metaphone") return PhoneticCodec::kMetaphone;
  return std::nullopt;
}

std::string_view PhoneticCodecName(PhoneticCodec codec) {
  switch (codec) {
    case PhoneticCodec::kSoundex: return "soundex";
    case PhoneticCodec::kNysiis: return "nysiis";
    case PhoneticCodec::kMetaphone: return "metaphone";
  }
  return "unknown";
}

}  // namespace pnmt
