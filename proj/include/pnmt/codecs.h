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

// Phonetic (Soundex, NYSIIS, Metaphone) and table-driven (Pinyin, Wubi)
// token encoders.
//
// The phonetic codecs first fold the token to ASCII letters (see
// FoldToAsciiLetters) and throw Error{kNonAlphabeticToken} when nothing is
// left. Callers that want pass-through behaviour catch that and keep the
// surface form; Encoder::EncodeOrPassThrough does exactly that.

#ifndef PNMT_CODECS_H_
#define PNMT_CODECS_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pnmt {

// American Soundex: letter + 3 digits, H/W do not separate equal digits.
std::string SoundexEncode(std::string_view token);

struct NysiisOptions {
  // Truncate the key to 6 characters, as in the original 1970 card format.
  bool truncate_to_six = false;
};

std::string NysiisEncode(std::string_view token, NysiisOptions options = {});

// Original (1990) Metaphone. '0' stands for the TH sound, 'X' for SH/CH.
std::string MetaphoneEncode(std::string_view token);

enum class PhoneticCodec { kSoundex, kNysiis, kMetaphone };

std::string PhoneticEncode(PhoneticCodec codec, std::string_view token);

enum class TableKind { kPinyin, kWubi };

// Character -> ordered code list. Immutable after loading.
class CodeTable {
 public:
  using Entries = std::map<std::string, std::vector<std::string>, std::less<>>;

  CodeTable(TableKind kind, Entries entries)
      : kind_(kind), entries_(std::move(entries)) {}

  // `character<TAB>code` per line; '#' lines and blank lines are skipped.
  // Repeated characters accumulate codes in file order.
  static CodeTable Load(const std::string& path, TableKind kind);
  static CodeTable Parse(std::string_view contents, TableKind kind);

  TableKind kind() const { return kind_; }
  size_t size() const { return entries_.size(); }

  // nullptr when the character is not in the table.
  const std::vector<std::string>* Find(std::string_view character) const;

  // First listed code, or nullopt.
  std::optional<std::string> DefaultCode(std::string_view character) const;

 private:
  TableKind kind_;
  Entries entries_;
};

enum class Granularity {
  kPerCharacter,  // one code per character
  kLetters,       // every code further split into single characters
};

// Characters missing from the table are passed through unchanged.
std::vector<std::string> TableEncode(std::string_view token,
                                     const CodeTable& table,
                                     Granularity granularity);

// Uniform interface used by clustering and the pipeline.
class Encoder {
 public:
  virtual ~Encoder() = default;

  // Codes for one token (usually exactly one). May throw
  // Error{kNonAlphabeticToken}.
  virtual std::vector<std::string> Encode(std::string_view token) const = 0;

  virtual std::string Name() const = 0;

  // True when every token maps to exactly one code.
  virtual bool IsTokenAligned() const { return true; }

  // Encode, falling back to the surface form on kNonAlphabeticToken.
  // `passed_through` is set when the fallback was taken.
  std::vector<std::string> EncodeOrPassThrough(std::string_view token,
                                               bool* passed_through) const;

  // A single key for grouping: the codes joined by a space.
  std::string UnitKey(std::string_view token) const;
};

std::unique_ptr<Encoder> MakePhoneticEncoder(PhoneticCodec codec,
                                             NysiisOptions nysiis = {});
std::unique_ptr<Encoder> MakeTableEncoder(std::shared_ptr<const CodeTable> table,
                                          Granularity granularity);

std::optional<PhoneticCodec> ParsePhoneticCodec(std::string_view name);
std::string_view PhoneticCodecName(PhoneticCodec codec);

}  // namespace pnmt

#endif  // PNMT_CODECS_H_
