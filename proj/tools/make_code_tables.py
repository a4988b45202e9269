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
"""Regenerates data/pinyin.tsv and data/wubi.tsv for the GB2312 character set.

    pip install pypinyin pywubi
    python3 tools/make_code_tables.py data/

Pinyin readings keep pypinyin's order (most common reading first) with the
tone as a trailing digit, 5 for the neutral tone. Wubi (86) codes are listed
shortest first so the default code is the short form typists use.
"""

import json
import os
import sys

import pywubi
from pypinyin import Style, pinyin


def gb2312_chars():
    for hi in range(0xB0, 0xF8):
        for lo in range(0xA1, 0xFF):
            try:
                yield bytes([hi, lo]).decode("gb2312")
            except UnicodeDecodeError:
                continue


def main(out_dir):
    wubi_path = os.path.join(os.path.dirname(pywubi.__file__), "data", "wubi_86.json")
    with open(wubi_path, encoding="utf-8") as f:
        wubi = json.load(f)
    chars = list(gb2312_chars())
    with open(os.path.join(out_dir, "pinyin.tsv"), "w", encoding="utf-8") as out:
        out.write("# character<TAB>pinyin (numeric tone, 5 = neutral); first line per character is the default\n")
        for ch in chars:
            readings = pinyin(ch, style=Style.TONE3, heteronym=True, neutral_tone_with_five=True)[0]
            for r in readings:
                if r and r != ch and r[-1] in "12345":
                    out.write(f"{ch}\t{r}\n")
    with open(os.path.join(out_dir, "wubi.tsv"), "w", encoding="utf-8") as out:
        out.write("# character<TAB>wubi-86 keystrokes; first line per character is the default\n")
        for ch in chars:
            codes = sorted(set(wubi.get(ch, [])), key=lambda c: (len(c), c))
            for c in codes:
                out.write(f"{ch}\t{c}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
