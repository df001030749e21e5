"""End-to-end translation: tokenize, segment, pass markers, realize.

The same orchestration serves both directions; nothing here branches on a
particular language, only on the source/target tags carried by the
direction argument (language-specific behavior lives in the morphology
profiles).
"""

from __future__ import annotations

from dataclasses import dataclass

from markermt.markers import GA, GP, CsInstance, MarkerState
from markermt.morphology import MorphologyError, tokenize
from markermt.network import ElementType, LANGUAGES, MemoryNetwork, lookup_lexical

SUCCESS = "success"
NO_PARSE = "no-parse"
UNKNOWN_WORD = "unknown-word"


def parse_direction(direction: str) -> tuple[str, str]:
    src, sep, tgt = direction.partition("-")
    if not sep or src not in LANGUAGES or tgt not in LANGUAGES or src == tgt:
        raise ValueError(f"bad direction '{direction}', expected one of "
                         + ", ".join(f"{a}-{b}" for a in LANGUAGES for b in LANGUAGES if a != b))
    return src, tgt


def reverse_direction(direction: str) -> str:
    src, tgt = parse_direction(direction)
    return f"{tgt}-{src}"


@dataclass(frozen=True)
class TreeFill:
    """One element of an instantiated sequence in the concept tree."""

    filler: str | None  # element's concept, None for literals
    literal: str | None
    etype: str
    kind: str  # lex | lit | sub | omitted | default
    item: str | None = None
    item_concept: str | None = None
    span: tuple[int, int] | None = None
    child: "TreeNode | None" = None

    @property
    def required(self) -> bool:
        return not ElementType.omissible(self.etype)


@dataclass(frozen=True)
class TreeNode:
    concept: str
    source_cs: str
    target_cs: str
    fills: tuple[TreeFill, ...]


@dataclass
class TranslationResult:
    status: str
    direction: str
    source_sentence: str
    target_sentence: str = ""
    concept_tree: TreeNode | None = None
    trace: tuple = ()
    error_position: int | None = None  # 1-based token index for unknown-word
    debug_state: MarkerState | None = None

    @property
    def ok(self) -> bool:
        return self.status == SUCCESS


class GenerationGap(Exception):
    """A required target element had no source counterpart and no default."""


def translate(net: MemoryNetwork, sentence: str, direction: str, keep_state: bool = False) -> TranslationResult:
    """Translate one sentence; failures come back in ``status``, not raised.

    Steps: initial prediction over every sequence of both languages, then
    per token segmentation + lexical lookup + activation + collision
    draining, then realization of the paired target sequence tree of the
    widest accepted instance anchored at the sentence start.
    """
    src, tgt = parse_direction(direction)
    morph = net.morphology
    result = TranslationResult(status=NO_PARSE, direction=direction, source_sentence=sentence)

    try:
        toks = tokenize(src, sentence)
    except MorphologyError:
        return result

    state = MarkerState(net, src, tgt)
    state.initial_prediction()
    literals = net.literals(src)

    try:
        for i, word in enumerate(toks.words):
            item_ids: list[str] = []
            for seq in morph.segment(src, word):
                for item_id in sorted(
                    lookup_lexical(net, src, seq.forms), key=_lexicon_order(net)
                ):
                    if item_id not in item_ids:
                        item_ids.append(item_id)
            literal = word if word in literals else None
            if not item_ids and literal is None:
                result.status = UNKNOWN_WORD
                result.error_position = i + 1
                return result
            state.activate(item_ids, i, literal=literal, surface=toks.surfaces[i])
            state.step_collisions()
            assert not state.agenda, "agenda must be quiescent between tokens"

        winner = state.best_result(len(toks.words))
        if winner is not None:
            try:
                text, tree = _realize(net, state, winner, tgt)
            except GenerationGap as gap:
                state.emit("note", None, "generation", str(gap))
            else:
                result.status = SUCCESS
                result.target_sentence = text
                result.concept_tree = tree
    finally:
        result.trace = tuple(state.trace)
        state.close()
        if keep_state:
            result.debug_state = state
    return result


def round_trip(net: MemoryNetwork, sentence: str, direction: str):
    """Translate forward, then translate the output back.

    The pair of results lets a caller compare the two concept trees; see
    :func:`trees_isomorphic`.
    """
    forward = translate(net, sentence, direction)
    if not forward.ok:
        raise ValueError(
            f"forward translation failed: {forward.status}"
            + (f" (token {forward.error_position})" if forward.error_position else "")
        )
    back = translate(net, forward.target_sentence, reverse_direction(direction))
    return forward, back


def trees_isomorphic(a: TreeNode | None, b: TreeNode | None) -> bool:
    """Instance isomorphism: same concepts, same sequence pairs, same filled
    content (recursively), compared by filler concept.

    A default-generated fill counts like a lexical fill of the same concept,
    so a sentence whose omissible subject was dropped and then restored by
    default generation still round-trips as isomorphic."""
    if a is None or b is None:
        return a is b
    return _node_sig(a) == _node_sig(b)


def _node_sig(node: TreeNode):
    fills = []
    for f in node.fills:
        if f.kind in ("lex", "default"):
            fills.append((f.filler, "lex", f.item_concept))
        elif f.kind == "sub":
            fills.append((f.filler, "sub", _node_sig(f.child)))
    return (node.concept, frozenset((node.source_cs, node.target_cs)), tuple(sorted(fills, key=repr)))


def _lexicon_order(net):
    cache = net._caches.setdefault("lexidx", {})
    if not cache:
        for i, lid in enumerate(net.lexicon):
            cache[lid] = i
    return cache.__getitem__


def _realize(net, state: MarkerState, winner: CsInstance, target_lang: str):
    words: list[str] = []
    tree = _walk(net, state, winner, target_lang, words)
    source_cs = net.sequences[winner.cs]
    owner = net.concepts[source_cs.owner]
    text = " ".join(words)
    profile = _profile(target_lang)
    if profile.capitalize_sentences and text:
        text = text[0].upper() + text[1:]
    if owner.sentence_type == "question":
        text += "?"
    elif owner.sentence_type == "statement":
        text += "."
    return text, tree


def _profile(language):
    from markermt.morphology import PROFILES

    return PROFILES[language]


def _walk(net, state, inst: CsInstance, target_lang, words) -> TreeNode:
    """Emit the paired target sequence of one accepted instance, in the
    target's declared element order, consuming the source fills by concept."""
    morph = net.morphology
    source_cs = net.sequences[inst.cs]
    target_cs = net.sequences[source_cs.paired]

    builders: list[dict] = []
    supply: list[dict] = []  # conceptual source fills, in source element order
    for idx, (el, fill) in enumerate(zip(source_cs.elements, inst.fills)):
        entry = {
            "filler": el.concept,
            "literal": el.literal,
            "etype": el.etype,
            "kind": "omitted" if fill is None or fill.kind == "omitted" else fill.kind,
            "item": None,
            "item_concept": None,
            "span": None,
            "child": None,
            "fill": fill,
            "used": False,
        }
        if entry["kind"] in ("lex", "lit"):
            entry["span"] = (fill.start, fill.end)
            if fill.kind == "lex":
                entry["item"] = fill.item
                entry["item_concept"] = net.lexicon[fill.item].concept
        builders.append(entry)
        if entry["kind"] in ("lex", "sub"):
            supply.append(entry)

    extras: list[TreeFill] = []
    mirror_cursor = inst.target.cursor
    for k, el in enumerate(target_cs.elements):
        loc = f"cs:{target_cs.id}#{k}"
        if el.is_literal:
            words.append(el.literal)
            if k >= mirror_cursor:
                state.emit("generate", GP, loc)
            continue
        entry = None
        for cand in supply:
            if not cand["used"] and el.concept in net.ancestors(cand["fill"].concept):
                entry = cand
                break
        if entry is not None:
            entry["used"] = True
            fill = entry["fill"]
            if fill.kind == "sub":
                entry["child"] = _walk(net, state, state.instances[fill.sub], target_lang, words)
            else:
                words.append(_emit_item(net, morph, target_lang, fill.concept, el, target_cs))
            if k >= mirror_cursor:
                state.emit("generate", GA, loc, fill.binding())
        elif el.default_item is not None:
            item = net.lexicon[el.default_item]
            words.append(morph.word_for_morphemes(target_lang, item.morphemes))
            state.emit("generate", GP, loc)  # no source counterpart: GP only
            extras.append(
                TreeFill(
                    filler=el.concept,
                    literal=None,
                    etype=el.etype,
                    kind="default",
                    item=item.id,
                    item_concept=item.concept,
                )
            )
        elif ElementType.omissible(el.etype):
            continue
        else:
            raise GenerationGap(
                f"required element {target_cs.id}#{k} ({el.concept}) has no source fill"
            )

    fills = tuple(
        TreeFill(
            filler=b["filler"],
            literal=b["literal"],
            etype=b["etype"],
            kind=b["kind"],
            item=b["item"],
            item_concept=b["item_concept"],
            span=b["span"],
            child=b["child"],
        )
        for b in builders
    ) + tuple(extras)
    return TreeNode(
        concept=source_cs.owner,
        source_cs=source_cs.id,
        target_cs=target_cs.id,
        fills=fills,
    )


def _emit_item(net, morph, target_lang, concept, element, target_cs) -> str:
    items = net.items_of_concept(target_lang, concept)
    if not items:
        raise GenerationGap(
            f"concept '{concept}' has no {target_lang} lexical item for {target_cs.id}"
        )
    item = net.lexicon[items[0]]
    return morph.word_for_morphemes(target_lang, item.morphemes)
