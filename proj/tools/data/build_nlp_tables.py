#!/usr/bin/env python3
"""Regenerate data/nlp/tag_lexicon.tsv and data/nlp/lemma_exceptions.tsv.

Sources (download once, pass their unpacked locations on the command line):

  --brill   en-lexicon.txt from the pattern3 sdist (Brill tagger lexicon,
            Brown + Penn Treebank, MIT license)
  --verbs   en-verbs.txt from the same sdist (verb inflection table)
  --wn-exc  en_lemma_exc.json.gz from spacy-lookups-data (WordNet 3.0
            morphological exception lists, WordNet license)

The output is deterministic: entries are sorted by key.
"""

import argparse
import gzip
import json
import re

# Brill / Penn tags folded into the closed tag set used at runtime.
TAG_MAP = {
    "JJR": "JJ", "JJS": "JJ",
    "RBR": "RB", "RBS": "RB", "RP": "RB",
    "NNPS": "NNP",
    "PRP$": "PRP", "PP": "PRP",
    "WDT": "WP", "WP$": "WP",
    "PDT": "DT",
    "EX": "OTHER", "POS": "OTHER", "SYM": "OTHER", "LS": "OTHER",
}
CLOSED = {"NN", "NNS", "NNP", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD",
          "JJ", "RB", "PRP", "DT", "IN", "CC", "CD", "TO", "UH", "WP", "WRB",
          "OTHER"}
WORD = re.compile(r"[a-z][a-z'-]*")

# Brill's most-frequent tag is wrong for a handful of words that matter for
# conversational input; these override it.
OVERRIDES = {
    "hello": "UH",
    "please": "UH",
    "sorry": "JJ",
}


def build_tag_lexicon(path):
    lexicon = {}
    with open(path, encoding="utf-8", errors="replace") as f:
        for line in f:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) < 2 or parts[0] in lexicon:
                continue
            word = parts[0]
            if not WORD.fullmatch(word) or word.endswith(("-", "'")):
                continue
            tag = parts[1].split("|")[0]
            if tag == "FW":
                continue
            tag = TAG_MAP.get(tag, tag)
            if tag not in CLOSED:
                continue
            lexicon[word] = tag
    lexicon.update(OVERRIDES)
    return lexicon


def build_exceptions(verbs_path, wn_path):
    table = {}

    def put(form, lemma, pos):
        if form and lemma and form != lemma and WORD.fullmatch(form):
            table.setdefault((form, pos), lemma)

    wn = json.load(gzip.open(wn_path))
    for pos in ("noun", "verb", "adj", "adv"):
        for form, lemmas in wn.get(pos, {}).items():
            put(form, lemmas[0], pos)

    with open(verbs_path, encoding="utf-8") as f:
        for line in f:
            if line.startswith(";"):
                continue
            cells = line.strip().split(",")
            lemma = cells[0]
            for form in cells[1:]:
                # negated forms ("isn't") are expanded before lemmatization
                if " " in form or "'" in form:
                    continue
                put(form, lemma, "verb")

    # Collapse chains so a lemma never appears as a form of the same class.
    changed = True
    while changed:
        changed = False
        for (form, pos), lemma in list(table.items()):
            nxt = table.get((lemma, pos))
            if nxt is not None and nxt != lemma and nxt != form:
                table[(form, pos)] = nxt
                changed = True
    for (form, pos), lemma in list(table.items()):
        if table.get((lemma, pos)) == form:
            del table[(lemma, pos)]
    return table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--brill", required=True)
    ap.add_argument("--verbs", required=True)
    ap.add_argument("--wn-exc", required=True)
    ap.add_argument("--out", default="data/nlp")
    args = ap.parse_args()

    lexicon = build_tag_lexicon(args.brill)
    with open(f"{args.out}/tag_lexicon.tsv", "w", encoding="utf-8") as f:
        for word in sorted(lexicon):
            f.write(f"{word}\t{lexicon[word]}\n")

    exceptions = build_exceptions(args.verbs, args.wn_exc)
    with open(f"{args.out}/lemma_exceptions.tsv", "w", encoding="utf-8") as f:
        for (form, pos) in sorted(exceptions):
            f.write(f"{form}\t{exceptions[(form, pos)]}\t{pos}\n")

    print(f"tag lexicon: {len(lexicon)} entries; exceptions: {len(exceptions)}")


if __name__ == "__main__":
    main()
