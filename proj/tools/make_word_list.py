#!/usr/bin/env python3
# Copyright 2026 The pnmt Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/words_5k.txt: the 5000 most frequent purely alphabetic
English words (lowercase, length >= 2, plus "a" and "i"), one per line in
frequency order.

    pip install wordfreq
    python3 tools/make_word_list.py > data/words_5k.txt
"""

import wordfreq

SIZE = 5000


def main():
    words = []
    for w in wordfreq.iter_wordlist("en"):
        if not (w.isascii() and w.isalpha() and w.islower()):
            continue
        if len(w) < 2 and w not in ("a", "i"):
            continue
        words.append(w)
        if len(words) == SIZE:
            break
    print("\n".join(words))


if __name__ == "__main__":
    main()
