"""Shared helpers: drive the marker engine directly and build mini networks."""

from __future__ import annotations

import random

from markermt.markers import MarkerState
from markermt.network import ElementType, load_network, lookup_lexical


def run_engine(net, tokens, source="ko", target="en") -> MarkerState:
    """Feed surface tokens through a session and return it unclosed."""
    state = MarkerState(net, source, target)
    state.initial_prediction()
    literals = net.literals(source)
    morph = net.morphology
    for i, word in enumerate(tokens):
        items = []
        for seq in morph.segment(source, word):
            for item_id in sorted(lookup_lexical(net, source, seq.forms)):
                if item_id not in items:
                    items.append(item_id)
        state.activate(items, i, literal=(word if word in literals else None))
        state.step_collisions()
    return state


def engine_accepts(net, cs_id, tokens, source="ko", target="en") -> bool:
    state = run_engine(net, tokens, source, target)
    ok = any(
        inst.status == "accepted"
        and inst.cs == cs_id
        and inst.start == 0
        and inst.end == len(tokens)
        for inst in state.instances
    )
    state.close()
    return ok


def mini_net(elements: str, extra: str = ""):
    """Network with one ko test sequence over concepts a..e and literals.

    ``elements`` is the element list of the test sequence, e.g.
    ``a(CX) b(OX) c(CX)``; each single-letter concept x has ko word ``wx``
    and en word ``vx``.
    """
    lines = []
    for c in "abcde":
        lines.append(f"concept {c}")
        lines.append(f"lex k-{c} ko w{c} isa {c}")
        lines.append(f"lex e-{c} en v{c} isa {c}")
    lines.append("concept top")
    lines.append(f"cs test ko of top pair mirror : {elements}")
    lines.append("cs mirror en of top pair test : a(CX)")
    if extra:
        lines.append(extra)
    return load_network("\n".join(lines))


def random_case(rng: random.Random):
    """One random (network, test sequence, element specs, alphabet) tuple."""
    n_concepts = rng.randint(2, 4)
    n_elements = rng.randint(1, 6)
    lines = []
    for i in range(n_concepts):
        lines.append(f"concept x{i}")
        lines.append(f"lex kx{i} ko w{i} isa x{i}")
        lines.append(f"lex ex{i} en v{i} isa x{i}")
    lines.append("concept top")
    specs = []  # (filler-or-literal, etype, surface word)
    for j in range(n_elements):
        etype = rng.choice(ElementType.ALL)
        if rng.random() < 0.2:
            specs.append((f'"q{j}"', etype, f"q{j}"))
        else:
            c = rng.randrange(n_concepts)
            specs.append((f"x{c}", etype, f"w{c}"))
    if not any(t in ("CX", "CF") for _, t, _ in specs):
        filler, _, word = specs[0]
        specs[0] = (filler, "CX", word)
    lines.append("cs test ko of top pair mirror : " + " ".join(f"{f}({t})" for f, t, _ in specs))
    lines.append("cs mirror en of top pair test : x0(CX)")
    net = load_network("\n".join(lines))
    alphabet = [f"w{i}" for i in range(n_concepts)] + [w for f, _, w in specs if f.startswith('"')]
    return net, specs, alphabet


def random_tokens(rng: random.Random, specs, alphabet, mode: int) -> list[str]:
    if mode == 0:
        return [rng.choice(alphabet) for _ in range(rng.randint(1, 6))]
    tokens = [w for _, t, w in specs if not ElementType.omissible(t) or rng.random() < 0.6]
    if mode == 2 and len(tokens) > 1:
        rng.shuffle(tokens)
    if rng.random() < 0.3 and tokens:
        tokens[rng.randrange(len(tokens))] = rng.choice(alphabet)
    return tokens or [rng.choice(alphabet)]
