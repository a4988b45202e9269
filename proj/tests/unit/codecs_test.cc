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


#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pnmt/codecs.h"
#include "pnmt/error.h"
#include "pnmt/text.h"

namespace pnmt {
namespace {

const std::string kData = PNMT_SOURCE_DIR "/data";

struct Vector {
  std::string codec, input, expected;
};

std::vector<Vector> LoadVectors() {
  std::vector<Vector> out;
  for (const std::string& line : ReadLines(PNMT_SOURCE_DIR "/tests/data/codec_vectors.tsv")) {
    if (line.empty() || line[0] == '#') continue;
    const size_t a = line.find('\t'), b = line.find('\t', a + 1);
    out.push_back({line.substr(0, a), line.substr(a + 1, b - a - 1), line.substr(b + 1)});
  }
  return out;
}

TEST(SoundexTest, HomophoneGroups) {
  for (const char* w : {"body", "but", "bad"}) EXPECT_EQ(SoundexEncode(w), "B300") << w;
  for (const char* w : {"speak", "space", "suppose", "speech"}) EXPECT_EQ(SoundexEncode(w), "S120") << w;
  for (const char* w : {"car", "care", "chair", "cherry", "choir", "cry", "crow", "core"}) {
    EXPECT_EQ(SoundexEncode(w), "C600") << w;
  }
}

TEST(SoundexTest, Basics) {
  EXPECT_EQ(SoundexEncode("a"), "A000");
  EXPECT_EQ(SoundexEncode("Robert"), "R163");
  EXPECT_EQ(SoundexEncode("Rupert"), "R163");
  EXPECT_EQ(SoundexEncode("Ashcraft"), "A261");
  EXPECT_EQ(SoundexEncode("Tymczak"), "T522");
  EXPECT_EQ(SoundexEncode("Pfister"), "P236");
  EXPECT_EQ(SoundexEncode("BODY"), SoundexEncode("body"));
}

TEST(SoundexTest, FoldsDiacritics) {
  EXPECT_EQ(SoundexEncode("café"), SoundexEncode("cafe"));
  EXPECT_EQ(SoundexEncode("Müller"), SoundexEncode("Muller"));
  EXPECT_EQ(SoundexEncode("straße"), SoundexEncode("strasse"));
}

TEST(SoundexTest, NonAlphabeticThrows) {
  try {
    SoundexEncode("1234");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonAlphabeticToken);
  }
  EXPECT_THROW(NysiisEncode("--"), Error);
  EXPECT_THROW(MetaphoneEncode("42"), Error);
}

TEST(NysiisTest, ReferenceExamples) {
  EXPECT_EQ(NysiisEncode("KNIGHT"), "NAGT");
  EXPECT_EQ(NysiisEncode("MACINTOSH"), "MCANT");
  EXPECT_EQ(NysiisEncode("A"), "A");
}

TEST(NysiisTest, TruncationFlag) {
  const std::string full = NysiisEncode("Christopher");
  const std::string cut = NysiisEncode("Christopher", NysiisOptions{true});
  EXPECT_LE(cut.size(), 6u);
  EXPECT_EQ(full.substr(0, cut.size()), cut);
}

TEST(MetaphoneTest, ReferenceExamples) {
  EXPECT_EQ(MetaphoneEncode("this"), "0S");
  EXPECT_EQ(MetaphoneEncode("building"), "BLTNK");
  EXPECT_EQ(MetaphoneEncode("B"), "B");
}

// Word-final MB, word-final GN and GH before a consonant.
TEST(MetaphoneTest, SilentLetterCases) {
  EXPECT_EQ(MetaphoneEncode("dumb"), "TM");
  EXPECT_EQ(MetaphoneEncode("lamb"), "LM");
  EXPECT_EQ(MetaphoneEncode("sign"), "SN");
  EXPECT_EQ(MetaphoneEncode("through"), "0R");
  EXPECT_EQ(MetaphoneEncode("high"), "H");
}

TEST(CodecVectorsTest, MatchReferenceImplementation) {
  const std::vector<Vector> vectors = LoadVectors();
  std::map<std::string, int> per_codec;
  for (const Vector& v : vectors) {
    const auto codec = ParsePhoneticCodec(v.codec);
    ASSERT_TRUE(codec.has_value()) << v.codec;
    EXPECT_EQ(PhoneticEncode(*codec, v.input), v.expected) << v.codec << " " << v.input;
    ++per_codec[v.codec];
  }
  for (const char* c : {"soundex", "nysiis", "metaphone"}) EXPECT_GE(per_codec[c], 50) << c;
}

TEST(CodeTableTest, ParseKeepsOrderAndDefault) {
  const CodeTable t = CodeTable::Parse("# header\n笑\txiao4\n长\tchang2\n长\tzhang3\n", TableKind::kPinyin);
  EXPECT_EQ(t.size(), 2u);
  ASSERT_NE(t.Find("长"), nullptr);
  EXPECT_EQ(*t.Find("长"), (std::vector<std::string>{"chang2", "zhang3"}));
  EXPECT_EQ(t.DefaultCode("长"), "chang2");
  EXPECT_EQ(t.Find("x"), nullptr);
  EXPECT_FALSE(t.DefaultCode("x").has_value());
}

TEST(CodeTableTest, Errors) {
  try {
    CodeTable::Parse("笑\txiao4\nbad line\n", TableKind::kPinyin);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedTableLine);
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
  try {
    CodeTable::Parse("", TableKind::kWubi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyTable);
  }
  EXPECT_THROW(CodeTable::Parse("ab\tx\n", TableKind::kPinyin), Error);
}

TEST(CodeTableTest, BundledPinyinHomophones) {
  const CodeTable t = CodeTable::Load(kData + "/pinyin.tsv", TableKind::kPinyin);
  for (const char* c : {"笑", "校", "孝", "效"}) EXPECT_EQ(t.DefaultCode(c), "xiao4") << c;
  for (const char* c : {"氏", "事", "市", "视"}) EXPECT_EQ(t.DefaultCode(c), "shi4") << c;
}

TEST(CodeTableTest, BundledWubi) {
  const CodeTable t = CodeTable::Load(kData + "/wubi.tsv", TableKind::kWubi);
  EXPECT_EQ(t.DefaultCode("这"), "p");
  EXPECT_EQ(t.DefaultCode("是"), "j");
  EXPECT_EQ(t.DefaultCode("个"), "wh");
}

TEST(TableEncodeTest, Granularities) {
  const CodeTable t = CodeTable::Parse("笑\txiao4\n市\tshi4\n", TableKind::kPinyin);
  EXPECT_EQ(TableEncode("笑", t, Granularity::kPerCharacter), (std::vector<std::string>{"xiao4"}));
  EXPECT_EQ(TableEncode("市", t, Granularity::kLetters),
            (std::vector<std::string>{"s", "h", "i", "4"}));
  EXPECT_EQ(TableEncode("笑市", t, Granularity::kPerCharacter),
            (std::vector<std::string>{"xiao4", "shi4"}));
  const CodeTable w = CodeTable::Parse("这\tp\n", TableKind::kWubi);
  EXPECT_EQ(TableEncode("abc", w, Granularity::kPerCharacter),
            (std::vector<std::string>{"a", "b", "c"}));
}

TEST(EncoderTest, PassThroughAndKeys) {
  const auto enc = MakePhoneticEncoder(PhoneticCodec::kSoundex);
  bool passed = false;
  EXPECT_EQ(enc->EncodeOrPassThrough("42", &passed), (std::vector<std::string>{"42"}));
  EXPECT_TRUE(passed);
  EXPECT_EQ(enc->EncodeOrPassThrough("body", &passed), (std::vector<std::string>{"B300"}));
  EXPECT_FALSE(passed);
  EXPECT_TRUE(enc->IsTokenAligned());
  auto table = std::make_shared<const CodeTable>(CodeTable::Parse("笑\txiao4\n", TableKind::kPinyin));
  const auto tenc = MakeTableEncoder(table, Granularity::kLetters);
  EXPECT_EQ(tenc->Name(), "pinyin-letters");
  EXPECT_FALSE(tenc->IsTokenAligned());
  EXPECT_EQ(tenc->UnitKey("笑"), "x i a o 4");
}

TEST(EncoderTest, Determinism) {
  for (PhoneticCodec c : {PhoneticCodec::kSoundex, PhoneticCodec::kNysiis, PhoneticCodec::kMetaphone}) {
    for (const char* w : {"knight", "schmidt", "phonetic", "translation"}) {
      EXPECT_EQ(PhoneticEncode(c, w), PhoneticEncode(c, w));
    }
  }
}

TEST(SoundexTest, CodeShapeProperty) {
  for (const std::string& w : ReadLines(kData + "/words_5k.txt")) {
    const std::string code = SoundexEncode(w);
    ASSERT_EQ(code.size(), 4u) << w;
    EXPECT_TRUE(code[0] >= 'A' && code[0] <= 'Z') << w;
    for (int i = 1; i < 4; ++i) EXPECT_TRUE(code[i] >= '0' && code[i] <= '6') << w;
  }
}

}  // namespace
}  // namespace pnmt
