#!/usr/bin/env python3
# Copyright 2026 The PatSTEG Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Convert the LINQS Cora release (cora.cites / cora.content) to patsteg inputs.

Writes:
  cora.edges.tsv    citing<TAB>cited
  cora.text.tsv     paper<TAB>abstract<TAB>w<k> ... (one token per present word)
  cora.vectors.txt  (optional, --vectors) one-hot word vectors, so that the
                    mean text embedding equals the row-normalized feature vector
"""
import argparse
import pathlib


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("raw_dir", type=pathlib.Path)
    ap.add_argument("out_dir", type=pathlib.Path)
    ap.add_argument("--vectors", action="store_true")
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    vocab_size = None
    with open(args.raw_dir / "cora.content") as src, \
            open(args.out_dir / "cora.text.tsv", "w") as dst:
        for line in src:
            fields = line.strip().split("\t")
            if len(fields) < 3:
                continue
            bits = fields[1:-1]
            vocab_size = len(bits)
            tokens = [f"w{k}" for k, b in enumerate(bits) if b == "1"]
            dst.write(f"{fields[0]}\tabstract\t{' '.join(tokens)}\n")

    # cora.cites lines are "cited citing".
    with open(args.raw_dir / "cora.cites") as src, \
            open(args.out_dir / "cora.edges.tsv", "w") as dst:
        for line in src:
            fields = line.split()
            if len(fields) == 2:
                dst.write(f"{fields[1]}\t{fields[0]}\n")

    if args.vectors:
        with open(args.out_dir / "cora.vectors.txt", "w") as dst:
            for k in range(vocab_size):
                row = ["0"] * vocab_size
                row[k] = "1"
                dst.write(f"w{k} {' '.join(row)}\n")


if __name__ == "__main__":
    main()
