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

// UTF-8 helpers and the corpus line format shared by every module.

#ifndef PNMT_TEXT_H_
#define PNMT_TEXT_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pnmt {

using Sentence = std::vector<std::string>;
using Corpus = std::vector<Sentence>;

// Splits on ASCII whitespace; never returns empty tokens.
Sentence SplitWhitespace(std::string_view line);

std::string JoinTokens(const Sentence& tokens, std::string_view sep = " ");

// Splits a UTF-8 string into code points, each returned as its own UTF-8
// string. Invalid bytes are returned one byte at a time.
std::vector<std::string> SplitCodePoints(std::string_view text);

// Compatibility-decomposes `token`, drops combining marks, expands the few
// Latin letters that have no decomposition (ß, æ, œ, ø, ...) and returns the
// remaining ASCII letters uppercased. Everything else is discarded, so an
// empty result means the token had no alphabetic content.
std::string FoldToAsciiLetters(std::string_view token);

Corpus ReadCorpus(std::istream& in);
Corpus ReadCorpusFile(const std::string& path);
void WriteCorpus(std::ostream& out, const Corpus& corpus);
void WriteCorpusFile(const std::string& path, const Corpus& corpus);

// Reads all lines (without trailing '\n' or '\r').
std::vector<std::string> ReadLines(const std::string& path);

}  // namespace pnmt

#endif  // PNMT_TEXT_H_
