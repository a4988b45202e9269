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
"""Regenerates data/desk_corpus.en, the bundled 10k-sentence analysis corpus.

The corpus is a seeded topic mixture over real English words: every content
word belongs to exactly one topic, and a sentence draws most of its content
words from a single topic. Topic membership is independent of spelling, so
distributional embeddings group words by topic while phonetic codes cut
across topics.

    pip install jellyfish wordfreq
    python3 tools/make_desk_corpus.py > data/desk_corpus.en
"""

import collections
import random

import jellyfish

import wordfreq

SEED = 20190704
NUM_SENTENCES = 10000
NUM_TOPICS = 50
NUM_CONTENT_WORDS = 2000
MIN_CODE_SHARE = 6
FUNCTION_WORDS = (
    "the of and to a in is that for it as was with be by on not he this are or "
    "his from at which but have an they you were her she there been one all we "
    "their has would when if so no will"
).split()


def main():
    rng = random.Random(SEED)
    stop = set(FUNCTION_WORDS)
    ranked = [w for w in wordfreq.top_n_list("en", 12000)
              if w.isascii() and w.isalpha() and len(w) >= 4 and w not in stop][150:]
    # Keep words whose Soundex code is shared by several candidates, so that
    # phonetic groups have enough members to span a hull.
    by_code = collections.Counter(jellyfish.soundex(w) for w in ranked)
    content = [w for w in ranked if by_code[jellyfish.soundex(w)] >= MIN_CODE_SHARE]
    content = content[:NUM_CONTENT_WORDS]
    topics = [[] for _ in range(NUM_TOPICS)]
    shuffled = content[:]
    rng.shuffle(shuffled)
    for i, w in enumerate(shuffled):
        topics[i % NUM_TOPICS].append(w)
    fw_weights = [1.0 / (r + 1) for r in range(len(FUNCTION_WORDS))]
    for _ in range(NUM_SENTENCES):
        topic = topics[rng.randrange(NUM_TOPICS)]
        length = rng.randint(8, 16)
        words = []
        for _ in range(length):
            u = rng.random()
            if u < 0.3:
                words.append(rng.choices(FUNCTION_WORDS, fw_weights)[0])
            elif u < 0.92:
                words.append(rng.choice(topic))
            else:
                words.append(rng.choice(content))
        print(" ".join(words))


if __name__ == "__main__":
    main()
