"""Deterministic synthetic network generation for scale and latency tests.

Builds a valid bilingual network of a requested size: leaf concepts with
lexical pairs (several synonyms per concept, so the lexicon outnumbers the
concept inventory), category concepts for hierarchy depth, phrase-level
sequence pairs that sentences can embed, and sentence-level pairs using the
full mix of element types.  Each sentence sequence opens with a unique
literal anchor so large networks stay sharply parseable.  Sample sentences
are appended as ``# sample`` comment lines so benchmarks can replay them.
"""

from __future__ import annotations

import random

from markermt.network import EN, KO, ElementType

_CONSONANTS = "kmnpstlch"
_VOWELS = "aeiou"
_SYLLABLES = [c + v for c in _CONSONANTS for v in _VOWELS]


def _word(language: str, index: int, length: int = 3) -> str:
    syls = []
    n = index
    for _ in range(length):
        syls.append(_SYLLABLES[n % len(_SYLLABLES)])
        n //= len(_SYLLABLES)
    return "-".join(syls) if language == KO else "".join(syls)


def synth_network(num_lex_pairs: int, num_cs_pairs: int, seed: int, samples: int = 100) -> str:
    """Network file text for the requested size, byte-stable per arguments."""
    if num_lex_pairs < 1 or num_cs_pairs < 1:
        raise ValueError("counts must be >= 1")
    rng = random.Random(seed)
    lines = [
        f"# synthetic network: {num_lex_pairs} lexical pairs, "
        f"{num_cs_pairs} sequence pairs, seed {seed}"
    ]

    n_leaf = max(1, num_lex_pairs // 3) if num_lex_pairs >= 3 else num_lex_pairs
    n_cat = max(1, n_leaf // 10)
    categories = [f"cat{j}" for j in range(n_cat)]
    for cat in categories:
        lines.append(f"concept {cat}")
    for i in range(n_leaf):
        lines.append(f"concept c{i} isa cat{i % n_cat}")
    for i in range(num_lex_pairs):
        concept = f"c{i % n_leaf}"
        lines.append(f"lex k{i} {KO} {_word(KO, i)} isa {concept}")
        lines.append(f"lex e{i} {EN} {_word(EN, i)} isa {concept}")

    n_phrase = min(num_cs_pairs // 4, n_cat)
    n_sentence = num_cs_pairs - n_phrase
    phrase_parts: dict[str, list[str]] = {}
    for p in range(n_phrase):
        owner = f"ph{p}"
        parts = [categories[rng.randrange(n_cat)] for _ in range(rng.randint(1, 2))]
        phrase_parts[owner] = parts
        lines.append(f"concept {owner} isa cat{p % n_cat}")
        elems = " ".join(f"{c}(CX)" for c in parts)
        lines.append(f"cs pk{p} {KO} of {owner} pair pe{p} : {elems}")
        lines.append(f"cs pe{p} {EN} of {owner} pair pk{p} : {elems}")

    sentence_specs = []
    for s in range(n_sentence):
        owner = f"sn{s}"
        stype = "question" if s % 3 == 0 else "statement"
        lines.append(f"concept {owner} sentence-type {stype}")
        fillers = []
        etypes = []
        for k in range(rng.randint(2, 4)):
            pool = categories + list(phrase_parts)
            filler = pool[rng.randrange(len(pool))]
            if k == 0 or filler in phrase_parts:
                etype = "CX"  # anchor slot and embedded phrases stay required
            else:
                etype = rng.choices(["CX", "CF", "OX", "OF"], weights=[6, 2, 1, 1])[0]
            fillers.append(filler)
            etypes.append(etype)
        ko_lit, en_lit = f"w{s}x", f"v{s}x"
        ko_elems = [f'"{ko_lit}"(CX)'] + [f"{f}({t})" for f, t in zip(fillers, etypes)]
        en_elems = [f'"{en_lit}"(CX)']
        for f, t in zip(fillers, etypes):
            default = f"=e{_leaf_index(f, n_cat)}" if ElementType.omissible(t) else ""
            en_elems.append(f"{f}(CX){default}")
        lines.append(f"cs sk{s} {KO} of {owner} pair se{s} : " + " ".join(ko_elems))
        lines.append(f"cs se{s} {EN} of {owner} pair sk{s} : " + " ".join(en_elems))
        sentence_specs.append((fillers, etypes, ko_lit, en_lit))

    lines.extend(
        _samples(rng, sentence_specs, phrase_parts, n_leaf, n_cat, num_lex_pairs, samples)
    )
    return "\n".join(lines) + "\n"


def _leaf_index(filler: str, n_cat: int) -> int:
    # lexical pair i sits on concept c{i % n_leaf}; leaf c{j} is under cat{j % n_cat},
    # so the first leaf below cat{j} is c{j} and pair j realizes it
    return int(filler[3:]) if filler.startswith("cat") else int(filler[1:])


def _samples(rng, sentence_specs, phrase_parts, n_leaf, n_cat, num_lex_pairs, count):
    if not sentence_specs or count <= 0:
        return []
    out = ["# sample sentences"]

    def leaf_under(category):
        j = int(category[3:])
        choices = range(j, n_leaf, n_cat)
        return rng.choice(list(choices))

    def item_word(language, leaf):
        pairs = list(range(leaf, num_lex_pairs, n_leaf))
        return _word(language, rng.choice(pairs))

    def realize(language, filler, words):
        if filler in phrase_parts:
            for cat in phrase_parts[filler]:
                words.append(item_word(language, leaf_under(cat)))
        else:
            words.append(item_word(language, leaf_under(filler)))

    for k in range(count):
        fillers, etypes, ko_lit, en_lit = sentence_specs[k % len(sentence_specs)]
        language, lit = (KO, ko_lit) if k % 2 == 0 else (EN, en_lit)
        words = [lit]
        for f, t in zip(fillers, etypes):
            if language == EN or not ElementType.omissible(t) or rng.random() < 0.7:
                realize(language, f, words)
        direction = f"{language}-{EN if language == KO else KO}"
        out.append(f"# sample {direction}\t{' '.join(words)}")
    return out


def parse_samples(network_text: str) -> list[tuple[str, str]]:
    """Extract (direction, sentence) pairs from ``# sample`` comment lines."""
    samples = []
    for line in network_text.splitlines():
        if line.startswith("# sample ") and "\t" in line:
            head, sentence = line[len("# sample "):].split("\t", 1)
            samples.append((head.strip(), sentence.strip()))
    return samples
