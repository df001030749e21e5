"""Marker-engine acceptance must equal the brute-force recognizer.

The full 1000-case sweep lives in the acceptance suite; this module keeps a
fast seeded sample plus an exhaustive sweep over small tricky shapes.
"""

import itertools
import random

from markermt.oracle import recognize_oracle

from helpers import engine_accepts, mini_net, random_case, random_tokens


def test_random_sample_agrees():
    rng = random.Random(2024)
    for case in range(300):
        net, specs, alphabet = random_case(rng)
        tokens = random_tokens(rng, specs, alphabet, case % 3)
        want = recognize_oracle(net, net.sequences["test"], tokens)
        got = engine_accepts(net, "test", tokens)
        assert want == got, f"{[s[:2] for s in specs]} on {tokens}: oracle={want} engine={got}"


EXHAUSTIVE_SHAPES = [
    "a(CX) b(CX)",
    "a(OX) b(CX)",
    "a(CF) b(CX)",
    "a(OF) b(CF)",
    "a(OF) a(CF)",        # same filler on two free elements
    "a(OX) a(OX) b(CX)",  # omissible run sharing a filler
    "a(CF) b(OX) a(CX)",
    '"q0"(OX) a(CX) b(OF)',
]


def test_exhaustive_small_shapes():
    alphabet = ["wa", "wb", "q0"]
    for shape in EXHAUSTIVE_SHAPES:
        net = mini_net(shape)
        cs = net.sequences["test"]
        for n in range(1, 5):
            for tokens in itertools.product(alphabet, repeat=n):
                want = recognize_oracle(net, cs, list(tokens))
                got = engine_accepts(net, "test", list(tokens))
                assert want == got, f"{shape} on {tokens}: oracle={want} engine={got}"
