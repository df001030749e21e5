"""Bilingual memory network: concepts, lexical pairs, paired concept sequences.

The network is the whole linguistic knowledge base.  Concept nodes form an
IS-A hierarchy shared by both languages; lexical items hang off concepts in
morphologically segmented form; each concept that realizes a phrase or a
sentence owns one concept sequence per language, and the two sequences of a
pair may differ in length and in element order.

Networks are described in a line-oriented text format (see ``load_network``)
and are immutable once loaded, so any number of translation sessions may
read one concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

KO = "ko"
EN = "en"
LANGUAGES = (KO, EN)

SENTENCE_TYPES = ("question", "statement")

ROLES = (
    "root",
    "suffix",
    "case-marker",
    "verb-ending",
    "prefinal-ending",
    "plural",
    "tense",
)


class NetworkError(Exception):
    """Raised for unloadable network files (syntax, references, duplicates)."""


class NetworkSyntaxError(NetworkError):
    def __init__(self, message, line, column=None):
        loc = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ConceptNode:
    id: str
    name: str
    parents: tuple[str, ...] = ()
    sentence_type: str | None = None


@dataclass(frozen=True)
class LexicalItem:
    id: str
    language: str
    morphemes: tuple[str, ...]
    concept: str


class ElementType:
    """Element discipline: required vs omissible, fixed order vs free order.

    The codes CX, CF, OX and OF are the wire form used in network files and
    in traces: C/O for compulsory/omissible, X/F for fixed/free order.
    """

    REQUIRED_FIXED = "CX"
    REQUIRED_FREE = "CF"
    OMISSIBLE_FIXED = "OX"
    OMISSIBLE_FREE = "OF"

    ALL = (REQUIRED_FIXED, REQUIRED_FREE, OMISSIBLE_FIXED, OMISSIBLE_FREE)

    @staticmethod
    def omissible(code: str) -> bool:
        return code in ("OX", "OF")

    @staticmethod
    def free(code: str) -> bool:
        return code in ("CF", "OF")


@dataclass(frozen=True)
class SequenceElement:
    """One slot of a concept sequence.

    Exactly one of ``concept`` and ``literal`` is set.  A conceptual element
    is filled by anything below its concept in the IS-A hierarchy; a literal
    element matches one surface function word verbatim.  ``default_item``
    names the lexical item to emit when the element must be generated with
    no source-language counterpart.
    """

    etype: str
    concept: str | None = None
    literal: str | None = None
    default_item: str | None = None

    @property
    def is_literal(self) -> bool:
        return self.literal is not None

    def label(self) -> str:
        body = f'"{self.literal}"' if self.is_literal else str(self.concept)
        return f"{body}({self.etype})"


@dataclass(frozen=True)
class ConceptSequence:
    id: str
    language: str
    owner: str
    elements: tuple[SequenceElement, ...]
    paired: str


@dataclass(frozen=True)
class AffixDecl:
    language: str
    morpheme: str
    role: str
    after: tuple[str, ...] = ("root",)


@dataclass(frozen=True)
class MorphRuleDecl:
    """Boundary rewrite: a root ending in ``root_class`` followed by ``affix``
    surfaces as stem-minus-class + ``surface`` (the fragment covers the affix)."""

    language: str
    root_class: str
    affix: str
    surface: str


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass
class MemoryNetwork:
    """Fully indexed, immutable-by-convention bilingual network."""

    concepts: dict[str, ConceptNode] = field(default_factory=dict)
    lexicon: dict[str, LexicalItem] = field(default_factory=dict)
    sequences: dict[str, ConceptSequence] = field(default_factory=dict)
    affixes: list[AffixDecl] = field(default_factory=list)
    morph_rules: list[MorphRuleDecl] = field(default_factory=list)
    morpheme_index: dict[tuple[str, tuple[str, ...]], frozenset[str]] = field(
        default_factory=dict
    )

    def __post_init__(self):
        self._caches: dict = {}

    # -- derived indexes -------------------------------------------------

    def build_indexes(self):
        index: dict[tuple[str, tuple[str, ...]], set[str]] = {}
        for item in self.lexicon.values():
            index.setdefault((item.language, item.morphemes), set()).add(item.id)
        self.morpheme_index = {k: frozenset(v) for k, v in index.items()}
        self._caches = {}

    def ancestors(self, concept_id: str) -> frozenset[str]:
        """Reflexive-transitive IS-A closure upward."""
        cache = self._caches.setdefault("anc", {})
        if concept_id in cache:
            return cache[concept_id]
        seen: set[str] = set()
        stack = [concept_id]
        while stack:
            cid = stack.pop()
            if cid in seen or cid not in self.concepts:
                continue
            seen.add(cid)
            stack.extend(self.concepts[cid].parents)
        result = frozenset(seen)
        cache[concept_id] = result
        return result

    def descendants(self, concept_id: str) -> frozenset[str]:
        """Reflexive-transitive IS-A closure downward."""
        cache = self._caches.setdefault("desc", {})
        if concept_id in cache:
            return cache[concept_id]
        children: dict[str, list[str]] = self._caches.get("children", {})
        if not children:
            for node in self.concepts.values():
                for p in node.parents:
                    children.setdefault(p, []).append(node.id)
            self._caches["children"] = children
        seen: set[str] = set()
        stack = [concept_id]
        while stack:
            cid = stack.pop()
            if cid in seen:
                continue
            seen.add(cid)
            stack.extend(children.get(cid, ()))
        result = frozenset(seen)
        cache[concept_id] = result
        return result

    def items_of_concept(self, language: str, concept_id: str) -> tuple[str, ...]:
        """Lexical items attached to exactly this concept, declaration order."""
        cache = self._caches.setdefault("items_of", {})
        key = (language, concept_id)
        if key not in cache:
            cache[key] = tuple(
                it.id
                for it in self.lexicon.values()
                if it.language == language and it.concept == concept_id
            )
        return cache[key]

    def items_below(self, language: str, concept_id: str) -> tuple[str, ...]:
        """Lexical items of this concept or any descendant, declaration order."""
        cache = self._caches.setdefault("items_below", {})
        key = (language, concept_id)
        if key not in cache:
            down = self.descendants(concept_id)
            cache[key] = tuple(
                it.id
                for it in self.lexicon.values()
                if it.language == language and it.concept in down
            )
        return cache[key]

    def sequences_of_owner(self, language: str, concept_id: str) -> tuple[str, ...]:
        cache = self._caches.setdefault("seq_of", {})
        key = (language, concept_id)
        if key not in cache:
            cache[key] = tuple(
                cs.id
                for cs in self.sequences.values()
                if cs.language == language and cs.owner == concept_id
            )
        return cache[key]

    def sequences_below(self, language: str, concept_id: str) -> tuple[str, ...]:
        cache = self._caches.setdefault("seq_below", {})
        key = (language, concept_id)
        if key not in cache:
            down = self.descendants(concept_id)
            cache[key] = tuple(
                cs.id
                for cs in self.sequences.values()
                if cs.language == language and cs.owner in down
            )
        return cache[key]

    def literals(self, language: str) -> frozenset[str]:
        """All literal element strings used by sequences of one language."""
        cache = self._caches.setdefault("literals", {})
        if language not in cache:
            cache[language] = frozenset(
                el.literal
                for cs in self.sequences.values()
                if cs.language == language
                for el in cs.elements
                if el.is_literal
            )
        return cache[language]

    def declaration_index(self, cs_id: str) -> int:
        cache = self._caches.setdefault("declidx", {})
        if not cache:
            for i, cid in enumerate(self.sequences):
                cache[cid] = i
        return cache[cs_id]

    @property
    def morphology(self):
        if "morphology" not in self._caches:
            from markermt.morphology import Morphology

            self._caches["morphology"] = Morphology.from_network(self)
        return self._caches["morphology"]


# -- public operations ---------------------------------------------------


def lookup_lexical(net: MemoryNetwork, language: str, morphemes) -> frozenset[str]:
    """Exact-match lexical lookup by segmented morpheme tuple."""
    return net.morpheme_index.get((language, tuple(morphemes)), frozenset())


_ID = r"[A-Za-z][A-Za-z0-9_.-]*"
_ELEMENT_RE = re.compile(
    r'^(?:"(?P<lit>[^"]+)"|(?P<con>%s))'
    r"\((?P<type>CX|CF|OX|OF)\)"
    r"(?:=(?P<dflt>%s))?$" % (_ID, _ID)
)


def load_network(source: str) -> MemoryNetwork:
    """Parse a network file into a fully indexed :class:`MemoryNetwork`.

    Grammar, one declaration per line (``#`` starts a comment)::

        concept <id> [isa <parent>,<parent>] [sentence-type question|statement]
        lex <id> <ko|en> <morpheme>[+<morpheme>...] isa <concept-id>
        cs <id> <ko|en> of <concept-id> pair <cs-id> : <element> ...
        affix <ko|en> <morpheme> role <role> [after <role>,<role>]
        morphrule <ko|en> <root-class>+<affix> -> <surface>

    A ``cs`` element is ``<concept-id>(CX|CF|OX|OF)`` or
    ``"<literal>"(CX|CF|OX|OF)``, optionally suffixed ``=<lex-id>`` to name
    the default item generated when the element has no source counterpart.

    Raises :class:`NetworkError` on syntax errors (with line/column),
    dangling references, duplicate ids, and degenerate files.  Semantic
    invariants beyond that are the business of :func:`validate_network`.
    """
    net = MemoryNetwork()
    pending_refs: list[tuple[str, str, int]] = []  # (kind, id, line)

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        try:
            if head == "concept":
                _parse_concept(net, tokens, lineno, pending_refs)
            elif head == "lex":
                _parse_lex(net, tokens, lineno, pending_refs)
            elif head == "cs":
                _parse_cs(net, tokens, lineno, pending_refs)
            elif head == "affix":
                _parse_affix(net, tokens, lineno)
            elif head == "morphrule":
                _parse_morphrule(net, tokens, lineno)
            else:
                raise NetworkSyntaxError(
                    f"unknown declaration '{head}'", lineno, raw.find(head) + 1
                )
        except IndexError:
            raise NetworkSyntaxError("truncated declaration", lineno) from None

    if not net.concepts:
        raise NetworkError("no concepts declared")

    _resolve_references(net, pending_refs)
    net.build_indexes()
    # building the morphology tables also validates that every non-initial
    # morpheme of a lexical item is a declared affix
    from markermt.morphology import MorphologyError

    try:
        net.morphology
    except MorphologyError as exc:
        raise NetworkError(str(exc)) from None
    return net


def _parse_concept(net, tokens, lineno, pending):
    cid = tokens[1]
    if cid in net.concepts:
        raise NetworkError(f"duplicate concept id '{cid}' (line {lineno})")
    parents: tuple[str, ...] = ()
    sentence_type = None
    i = 2
    while i < len(tokens):
        if tokens[i] == "isa":
            parents = tuple(tokens[i + 1].split(","))
            i += 2
        elif tokens[i] == "sentence-type":
            sentence_type = tokens[i + 1]
            if sentence_type not in SENTENCE_TYPES:
                raise NetworkSyntaxError(
                    f"bad sentence-type '{sentence_type}'", lineno
                )
            i += 2
        else:
            raise NetworkSyntaxError(f"unexpected token '{tokens[i]}'", lineno)
    net.concepts[cid] = ConceptNode(id=cid, name=cid, parents=parents, sentence_type=sentence_type)
    for p in parents:
        pending.append(("concept", p, lineno))


def _parse_lex(net, tokens, lineno, pending):
    lid = tokens[1]
    if lid in net.lexicon:
        raise NetworkError(f"duplicate lexical id '{lid}' (line {lineno})")
    language = tokens[2]
    if language not in LANGUAGES:
        raise NetworkSyntaxError(f"bad language '{language}'", lineno)
    morphemes = tuple(tokens[3].split("+"))
    if not all(morphemes):
        raise NetworkSyntaxError("empty morpheme in lexical item", lineno)
    if tokens[4] != "isa":
        raise NetworkSyntaxError("expected 'isa' in lex declaration", lineno)
    concept = tokens[5]
    net.lexicon[lid] = LexicalItem(id=lid, language=language, morphemes=morphemes, concept=concept)
    pending.append(("concept", concept, lineno))


def _parse_cs(net, tokens, lineno, pending):
    csid = tokens[1]
    if csid in net.sequences:
        raise NetworkError(f"duplicate sequence id '{csid}' (line {lineno})")
    language = tokens[2]
    if language not in LANGUAGES:
        raise NetworkSyntaxError(f"bad language '{language}'", lineno)
    if tokens[3] != "of" or tokens[5] != "pair":
        raise NetworkSyntaxError("expected 'cs <id> <lang> of <cn> pair <cs> : ...'", lineno)
    owner, paired = tokens[4], tokens[6]
    if tokens[7] != ":":
        raise NetworkSyntaxError("expected ':' before element list", lineno)
    elements = []
    for tok in tokens[8:]:
        m = _ELEMENT_RE.match(tok)
        if not m:
            raise NetworkSyntaxError(f"bad element '{tok}'", lineno)
        el = SequenceElement(
            etype=m.group("type"),
            concept=m.group("con"),
            literal=m.group("lit"),
            default_item=m.group("dflt"),
        )
        elements.append(el)
        if el.concept:
            pending.append(("concept", el.concept, lineno))
        if el.default_item:
            pending.append(("lex", el.default_item, lineno))
    if not elements:
        raise NetworkSyntaxError("sequence with no elements", lineno)
    if not any(not ElementType.omissible(e.etype) for e in elements):
        raise NetworkError(
            f"sequence '{csid}' accepts the empty string: every element is omissible (line {lineno})"
        )
    net.sequences[csid] = ConceptSequence(
        id=csid, language=language, owner=owner, elements=tuple(elements), paired=paired
    )
    pending.append(("concept", owner, lineno))
    pending.append(("cs", paired, lineno))


def _parse_affix(net, tokens, lineno):
    language = tokens[1]
    if language not in LANGUAGES:
        raise NetworkSyntaxError(f"bad language '{language}'", lineno)
    morpheme = tokens[2]
    if tokens[3] != "role":
        raise NetworkSyntaxError("expected 'role' in affix declaration", lineno)
    role = tokens[4]
    if role not in ROLES:
        raise NetworkSyntaxError(f"unknown role '{role}'", lineno)
    after: tuple[str, ...] = ("root",)
    if len(tokens) > 5:
        if tokens[5] != "after":
            raise NetworkSyntaxError(f"unexpected token '{tokens[5]}'", lineno)
        after = tuple(tokens[6].split(","))
        for r in after:
            if r not in ROLES:
                raise NetworkSyntaxError(f"unknown role '{r}' in after clause", lineno)
    if any(a.language == language and a.morpheme == morpheme for a in net.affixes):
        raise NetworkError(f"duplicate affix '{morpheme}' for {language} (line {lineno})")
    net.affixes.append(AffixDecl(language=language, morpheme=morpheme, role=role, after=after))


def _parse_morphrule(net, tokens, lineno):
    language = tokens[1]
    if language not in LANGUAGES:
        raise NetworkSyntaxError(f"bad language '{language}'", lineno)
    if "+" not in tokens[2] or tokens[3] != "->":
        raise NetworkSyntaxError("expected 'morphrule <lang> <class>+<affix> -> <surface>'", lineno)
    root_class, affix = tokens[2].split("+", 1)
    surface = tokens[4]
    if any(
        r.language == language and r.root_class == root_class and r.affix == affix
        for r in net.morph_rules
    ):
        raise NetworkError(
            f"duplicate morphrule '{root_class}+{affix}' for {language} (line {lineno})"
        )
    net.morph_rules.append(
        MorphRuleDecl(language=language, root_class=root_class, affix=affix, surface=surface)
    )


def _resolve_references(net, pending):
    for kind, rid, lineno in pending:
        if kind == "concept" and rid not in net.concepts:
            raise NetworkError(f"dangling concept reference '{rid}' (line {lineno})")
        if kind == "lex" and rid not in net.lexicon:
            raise NetworkError(f"dangling lexical reference '{rid}' (line {lineno})")
        if kind == "cs" and rid not in net.sequences:
            raise NetworkError(f"dangling sequence reference '{rid}' (line {lineno})")
    for cs in net.sequences.values():
        mate = net.sequences[cs.paired]
        if mate.id == cs.id or mate.language == cs.language:
            raise NetworkError(
                f"pairing must cross languages: '{cs.id}' is paired with '{mate.id}'"
            )
        for el in cs.elements:
            if el.default_item and net.lexicon[el.default_item].language != cs.language:
                raise NetworkError(
                    f"default item '{el.default_item}' of '{cs.id}' must be a "
                    f"{cs.language} item"
                )


def serialize_network(net: MemoryNetwork) -> str:
    """Render a network back to its file form (stable declaration order)."""
    lines = []
    for cn in net.concepts.values():
        parts = [f"concept {cn.id}"]
        if cn.parents:
            parts.append("isa " + ",".join(cn.parents))
        if cn.sentence_type:
            parts.append(f"sentence-type {cn.sentence_type}")
        lines.append(" ".join(parts))
    for it in net.lexicon.values():
        lines.append(f"lex {it.id} {it.language} {'+'.join(it.morphemes)} isa {it.concept}")
    for a in net.affixes:
        suffix = "" if a.after == ("root",) else " after " + ",".join(a.after)
        lines.append(f"affix {a.language} {a.morpheme} role {a.role}{suffix}")
    for r in net.morph_rules:
        lines.append(f"morphrule {r.language} {r.root_class}+{r.affix} -> {r.surface}")
    for cs in net.sequences.values():
        elems = []
        for el in cs.elements:
            suffix = f"={el.default_item}" if el.default_item else ""
            elems.append(el.label() + suffix)
        lines.append(
            f"cs {cs.id} {cs.language} of {cs.owner} pair {cs.paired} : " + " ".join(elems)
        )
    return "\n".join(lines) + "\n"


def validate_network(net: MemoryNetwork) -> list[Diagnostic]:
    """Structural diagnostics over a loaded (or hand-built) network.

    Empty result means every invariant holds.  Each violation yields one
    diagnostic; the network is not modified.
    """
    diags: list[Diagnostic] = []

    _check_isa_acyclic(net, diags)
    _check_pairing(net, diags)
    _check_english_fixed(net, diags)
    _check_compulsory(net, diags)
    _check_reachability(net, diags)
    _check_generation_supply(net, diags)
    _check_omissible_cycles(net, diags)
    return diags


def _check_isa_acyclic(net, diags):
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {cid: WHITE for cid in net.concepts}

    def visit(cid, path):
        color[cid] = GRAY
        for p in net.concepts[cid].parents:
            if p not in net.concepts:
                diags.append(Diagnostic("dangling-parent", f"concept '{cid}' isa unknown '{p}'"))
                continue
            if color[p] == GRAY:
                cyc = " -> ".join(path + [cid, p])
                diags.append(Diagnostic("isa-cycle", f"IS-A cycle: {cyc}"))
            elif color[p] == WHITE:
                visit(p, path + [cid])
        color[cid] = BLACK

    for cid in net.concepts:
        if color[cid] == WHITE:
            visit(cid, [])


def _check_pairing(net, diags):
    for cs in net.sequences.values():
        mate = net.sequences.get(cs.paired)
        if mate is None:
            diags.append(Diagnostic("dangling-pair", f"'{cs.id}' paired with unknown '{cs.paired}'"))
            continue
        if mate.paired != cs.id:
            diags.append(
                Diagnostic(
                    "asymmetric-pairing",
                    f"'{cs.id}' pairs '{mate.id}' but '{mate.id}' pairs '{mate.paired}'",
                )
            )
        if mate.language == cs.language:
            diags.append(
                Diagnostic("pairing-language", f"'{cs.id}' and '{mate.id}' share a language")
            )


def _check_english_fixed(net, diags):
    for cs in net.sequences.values():
        if cs.language != EN:
            continue
        for i, el in enumerate(cs.elements):
            if el.etype != ElementType.REQUIRED_FIXED:
                diags.append(
                    Diagnostic(
                        "english-cse-type",
                        f"English CSE must be CX: '{cs.id}' element {i} is {el.etype}",
                    )
                )


def _check_compulsory(net, diags):
    for cs in net.sequences.values():
        if all(ElementType.omissible(e.etype) for e in cs.elements):
            diags.append(
                Diagnostic("all-omissible", f"'{cs.id}' accepts the empty string")
            )


def _realizable(net, language, concept_id) -> bool:
    return bool(net.items_below(language, concept_id)) or bool(
        net.sequences_below(language, concept_id)
    )


def _check_reachability(net, diags):
    for cs in net.sequences.values():
        for i, el in enumerate(cs.elements):
            if el.is_literal:
                continue
            if el.concept not in net.concepts:
                continue  # reported as dangling at load
            if not _realizable(net, cs.language, el.concept) and not el.default_item:
                diags.append(
                    Diagnostic(
                        "unreachable-filler",
                        f"'{cs.id}' element {i} ({el.concept}) reaches no {cs.language} "
                        "lexical item or sequence and has no default",
                    )
                )
    # a concept analyzable in one language must be generatable in the other,
    # otherwise analysis can succeed where generation cannot
    for item in net.lexicon.values():
        other = EN if item.language == KO else KO
        if net.items_of_concept(other, item.concept):
            continue
        if net.sequences_of_owner(other, item.concept):
            continue
        if _is_filler_concept(net, item.concept):
            diags.append(
                Diagnostic(
                    "unpaired-concept",
                    f"concept '{item.concept}' has {item.language} item '{item.id}' "
                    f"but no {other} realization",
                )
            )


def _is_filler_concept(net, concept_id) -> bool:
    up = net.ancestors(concept_id)
    for cs in net.sequences.values():
        for el in cs.elements:
            if el.concept and el.concept in up:
                return True
    return False


def _check_generation_supply(net, diags):
    # every compulsory conceptual element of a target sequence needs either a
    # potential source counterpart or a default item
    for cs in net.sequences.values():
        source = net.sequences.get(cs.paired)
        if source is None:
            continue
        src_fillers = [el.concept for el in source.elements if el.concept]
        for i, el in enumerate(cs.elements):
            if el.is_literal or ElementType.omissible(el.etype) or el.default_item:
                continue
            down = net.descendants(el.concept) if el.concept in net.concepts else set()
            supplied = any(
                el.concept in net.concepts
                and f in net.concepts
                and (net.descendants(f) & down)
                for f in src_fillers
            )
            if not supplied:
                diags.append(
                    Diagnostic(
                        "ungeneratable-element",
                        f"'{cs.id}' element {i} ({el.concept}) has no source counterpart "
                        f"in '{source.id}' and no default",
                    )
                )


def _check_omissible_cycles(net, diags):
    # sequence-reference graph restricted to omissible conceptual elements
    edges: dict[str, set[str]] = {cs.id: set() for cs in net.sequences.values()}
    for cs in net.sequences.values():
        for el in cs.elements:
            if el.is_literal or not ElementType.omissible(el.etype):
                continue
            if el.concept not in net.concepts:
                continue
            for sub in net.sequences_below(cs.language, el.concept):
                edges[cs.id].add(sub)

    WHITE, GRAY, BLACK = 0, 1, 2
    color = {cid: WHITE for cid in edges}

    def visit(cid):
        color[cid] = GRAY
        for nxt in sorted(edges[cid]):
            if color[nxt] == GRAY:
                diags.append(
                    Diagnostic(
                        "omissible-cycle",
                        f"all-omissible sequence reference cycle through '{nxt}'",
                    )
                )
            elif color[nxt] == WHITE:
                visit(nxt)
        color[cid] = BLACK

    for cid in edges:
        if color[cid] == WHITE:
            visit(cid)
