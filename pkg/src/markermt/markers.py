"""Four-marker passing engine over the bilingual memory network.

Analysis predicts with AP markers and activates with AA markers; AP-AA
collisions consume input (the shift analogue) and sequence acceptance passes
activation up the hierarchy (the reduce analogue).  Generation mirrors each
analysis step on the paired target sequence with GP/GA markers, so the
target sentence is assembled while the source sentence is parsed.

Element types extend plain left-to-right prediction: free-order elements
(CF, OF) stay predicted from the start until filled, and a run of omissible
fixed elements (OX) is predicted together with the next required element so
it can be skipped, its prediction withdrawn, when a later element is hit
first.

The engine keeps every live alternative (it behaves like a chart
recognizer): a fill never destroys the instance it extends, it derives a new
one.  All scheduling is FIFO, so identical input yields an identical trace.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from markermt.network import ElementType, MemoryNetwork

AP = "AP"  # analysis prediction
AA = "AA"  # analysis activation
GP = "GP"  # generation prediction
GA = "GA"  # generation activation

# trace event kinds; `withdraw` records an omissible fixed element whose
# prediction disappeared because a later element was activated first
EVENTS = ("predict", "activate", "collide", "accept", "generate", "dead", "withdraw", "note")


@dataclass(frozen=True)
class TraceEvent:
    event: str
    marker: str | None
    location: str
    binding: str | None
    token: int

    def line(self) -> str:
        return f"{self.event} {self.marker or '-'} {self.location} {self.binding or '-'} tok={self.token}"


@dataclass(frozen=True)
class Marker:
    kind: str
    location: tuple
    binding: str | None = None

    def __post_init__(self):
        site = self.location[0]
        if self.kind in (AP, AA):
            legal = site in ("lex", "cse", "icse") or (self.kind == AA and site == "cn")
        else:
            legal = site in ("lex", "tcse") or (self.kind == GA and site == "cn")
        if not legal:
            raise ValueError(f"{self.kind} marker cannot sit on {site}")


@dataclass(frozen=True)
class Fill:
    """What one sequence element consumed: a lexical reading, a literal
    word, an accepted sub-instance, or nothing (omitted)."""

    kind: str  # lex | lit | sub | omitted
    start: int = -1
    end: int = -1
    item: str | None = None
    concept: str | None = None
    sub: int | None = None

    def binding(self) -> str | None:
        if self.kind == "lex":
            return f"item:{self.item}@{self.start}"
        if self.kind == "lit":
            return f"tok{self.start}"
        if self.kind == "sub":
            return f"inst:{self.sub}"
        return None


OMITTED = Fill(kind="omitted")


@dataclass(frozen=True)
class TargetState:
    """Paired target-side instance: GP cursor plus pending GA activations."""

    cs: str
    cursor: int = 0
    pool: tuple[tuple[str, str, bool], ...] = ()  # (concept, binding, consumed)


@dataclass(frozen=True)
class CsInstance:
    id: int
    cs: str
    start: int
    end: int
    fills: tuple[Fill | None, ...]
    cursor: int  # element index where the fixed-order scan resumes
    pending_free: tuple[int, ...]
    status: str  # active | accepted | dead
    parent: int | None
    target: TargetState

    def signature(self):
        parts = []
        for f in self.fills:
            if f is None:
                parts.append(None)
            elif f.kind == "omitted":
                parts.append("om")
            elif f.kind == "sub":
                parts.append(("sub", f.sub))
            else:
                parts.append((f.kind, f.item, f.start))
        return (self.cs, self.start, self.end, tuple(parts))


def fixed_frontier(elements, cursor, fills) -> list[int]:
    """Fixed-order slots currently predicted: the run of omissible fixed
    elements from the cursor plus the first required fixed element."""
    out = []
    for i in range(cursor, len(elements)):
        el = elements[i]
        if ElementType.free(el.etype) or fills[i] is not None:
            continue
        out.append(i)
        if not ElementType.omissible(el.etype):
            break
    return out


def initial_slots(cs) -> list[int]:
    fills = [None] * len(cs.elements)
    slots = fixed_frontier(cs.elements, 0, fills)
    slots.extend(i for i, el in enumerate(cs.elements) if ElementType.free(el.etype))
    return sorted(set(slots))


def satisfied(cs, fills) -> bool:
    """Acceptance test: every required element filled (fixed ones are in
    order by construction), omissible ones filled or omitted."""
    for el, f in zip(cs.elements, fills):
        if ElementType.omissible(el.etype):
            continue
        if f is None or f.kind == "omitted":
            return False
    return True


class MarkerState:
    """All live markers, instances and pending collisions of one session.

    A session handles one sentence in one direction.  Sessions over the same
    network are independent; ``close`` empties the state so nothing leaks
    into the next sentence.
    """

    def __init__(self, net: MemoryNetwork, source: str, target: str):
        self.net = net
        self.source = source
        self.target = target
        self.markers: dict[tuple, Marker] = {}
        self.instances: list[CsInstance] = []
        self.agenda: deque = deque()
        self.trace: list[TraceEvent] = []
        self.token_index = -1
        self._by_end: dict[int, list[int]] = {}
        self._sigs: set = set()
        self._passive_seen: set = set()
        self._fills_this_token = 0
        self._dead_reported = False
        self._slot_table = self._build_slot_table()

    # -- bookkeeping -------------------------------------------------------

    def _build_slot_table(self):
        by_literal: dict[str, list[tuple[str, int]]] = {}
        by_filler: dict[str, list[tuple[str, int]]] = {}
        for cs in self.net.sequences.values():
            if cs.language != self.source:
                continue
            for idx in initial_slots(cs):
                el = cs.elements[idx]
                if el.is_literal:
                    by_literal.setdefault(el.literal, []).append((cs.id, idx))
                else:
                    by_filler.setdefault(el.concept, []).append((cs.id, idx))
        return by_literal, by_filler

    def emit(self, event, marker, location, binding=None):
        self.trace.append(
            TraceEvent(event=event, marker=marker, location=location, binding=binding, token=self.token_index)
        )

    def _place(self, kind, location, binding=None) -> bool:
        """Set a marker bit; returns False if it was already present."""
        key = (kind, location, binding)
        if key in self.markers:
            return False
        self.markers[key] = Marker(kind=kind, location=location, binding=binding)
        return True

    def _loc_str(self, location) -> str:
        site = location[0]
        if site == "lex":
            return f"lex:{location[1]}"
        if site == "lit":
            return f"lit:{location[1]}"
        if site == "cn":
            return f"cn:{location[1]}"
        if site in ("cse", "tcse"):
            return f"cs:{location[1]}#{location[2]}"
        if site == "icse":
            inst = self.instances[location[1]]
            return f"inst:{location[1]}@{inst.cs}#{location[2]}"
        return str(location)

    # -- the three phases ----------------------------------------------------

    def initial_prediction(self):
        """AP on every initially predicted source element (and down the
        hierarchy to lexical items), GP on the first element of every target
        sequence."""
        for cs in self.net.sequences.values():
            if cs.language == self.source:
                for idx in initial_slots(cs):
                    loc = ("cse", cs.id, idx)
                    self._place(AP, loc)
                    self.emit("predict", AP, self._loc_str(loc))
                    self._predict_lexical(cs.elements[idx])
            elif cs.language == self.target:
                loc = ("tcse", cs.id, 0)
                self._place(GP, loc)
                self.emit("predict", GP, self._loc_str(loc))

    def _predict_lexical(self, element):
        if element.is_literal:
            return
        for item_id in self.net.items_below(self.source, element.concept):
            if self._place(AP, ("lex", item_id)):
                self.emit("predict", AP, f"lex:{item_id}")

    def activate(self, lexical_items, span: int, literal: str | None = None, surface: str | None = None):
        """AA markers onto one input token's readings; collisions are queued,
        not processed (see :meth:`step_collisions`)."""
        self.token_index = span
        self._fills_this_token = 0
        self._dead_reported = False
        binding = f"tok{span}"
        for item_id in lexical_items:
            item = self.net.lexicon[item_id]
            assert item.language == self.source, f"{item_id} is not a {self.source} item"
            self._place(AA, ("lex", item_id), binding)
            self.emit("activate", AA, f"lex:{item_id}", binding)
            self.agenda.append(("lex", item_id, span))
        if literal is not None:
            self.emit("activate", AA, f"lit:{literal}", binding)
            self.agenda.append(("lit", literal, span))

    def step_collisions(self):
        """Drain the agenda to quiescence.

        A lexical collision passes activation up the IS-A hierarchy and puts
        GA on the paired target items; concept/literal passives then extend
        or create instances; each acceptance feeds a new passive upward.
        A token whose readings produced no fill anywhere is recorded as a
        dead activation (unusable at this position) and the sentence simply
        continues."""
        while self.agenda:
            entry = self.agenda.popleft()
            kind = entry[0]
            if kind == "lex":
                self._process_lexical(entry[1], entry[2])
            elif kind == "lit":
                self._process_passive_literal(entry[1], entry[2])
            elif kind == "sub":
                self._process_sub(entry[1])
        if self._fills_this_token == 0 and self.token_index >= 0 and not self._dead_reported:
            self.emit("dead", AA, f"tok:{self.token_index}")
            self._dead_reported = True

    # -- collision handling --------------------------------------------------

    def _process_lexical(self, item_id, span):
        item = self.net.lexicon[item_id]
        if (AP, ("lex", item_id), None) in self.markers:
            self.emit("collide", AA, f"lex:{item_id}", f"tok{span}")
        # AA climbs the hierarchy; GA lands on the paired target items
        self._place(AA, ("cn", item.concept), f"tok{span}")
        for tgt_item in self.net.items_of_concept(self.target, item.concept):
            if self._place(GA, ("lex", tgt_item), f"tok{span}"):
                self.emit("activate", GA, f"lex:{tgt_item}", f"tok{span}")
        fill = Fill(kind="lex", start=span, end=span + 1, item=item_id, concept=item.concept)
        self._match_passive(concept=item.concept, literal=None, start=span, end=span + 1, fill=fill)

    def _process_passive_literal(self, text, span):
        fill = Fill(kind="lit", start=span, end=span + 1, item=None, concept=None)
        self._match_passive(concept=None, literal=text, start=span, end=span + 1, fill=fill)

    def _process_sub(self, inst_id):
        inst = self.instances[inst_id]
        if inst.status == "dead":
            self.emit("note", None, f"inst:{inst_id}", "dropped: dead instance")
            return
        cs = self.net.sequences[inst.cs]
        key = (cs.owner, inst.start, inst.end, inst.cs)
        if key in self._passive_seen:
            return
        self._passive_seen.add(key)
        self._place(AA, ("cn", cs.owner), f"inst:{inst_id}")
        for anc in sorted(self.net.ancestors(cs.owner)):
            self._place(AA, ("cn", anc), f"inst:{inst_id}")
        fill = Fill(kind="sub", start=inst.start, end=inst.end, concept=cs.owner, sub=inst_id)
        self._match_passive(concept=cs.owner, literal=None, start=inst.start, end=inst.end, fill=fill)

    def _match_passive(self, concept, literal, start, end, fill):
        # extend live instances whose span ends where this passive begins
        for inst_id in list(self._by_end.get(start, ())):
            inst = self.instances[inst_id]
            if inst.status == "dead":
                continue
            cs = self.net.sequences[inst.cs]
            for idx in self._eligible_slots(inst, cs):
                if self._slot_matches(cs.elements[idx], concept, literal):
                    self._fill(inst, cs, idx, fill, end)
        # start new instances from the standing initial predictions
        by_literal, by_filler = self._slot_table
        if literal is not None:
            slots = by_literal.get(literal, ())
        else:
            slots = [
                slot
                for anc in sorted(self.net.ancestors(concept))
                for slot in by_filler.get(anc, ())
            ]
            slots.sort(key=lambda s: (self.net.declaration_index(s[0]), s[1]))
        for cs_id, idx in slots:
            cs = self.net.sequences[cs_id]
            self._fill(None, cs, idx, fill, end, start=start)

    def _eligible_slots(self, inst, cs):
        slots = fixed_frontier(cs.elements, inst.cursor, inst.fills)
        slots.extend(inst.pending_free)
        return sorted(set(slots))

    def _slot_matches(self, element, concept, literal) -> bool:
        if element.is_literal:
            return literal is not None and element.literal == literal
        if concept is None:
            return False
        return element.concept in self.net.ancestors(concept)

    def _fill(self, inst, cs, idx, fill, end, start=None):
        """Derive the instance that results from filling element ``idx``."""
        if inst is None:
            fills = [None] * len(cs.elements)
            cursor = 0
            pending = tuple(i for i, el in enumerate(cs.elements) if ElementType.free(el.etype))
            begin = start
            parent = None
            target = TargetState(cs=cs.paired)
        else:
            fills = list(inst.fills)
            cursor = inst.cursor
            pending = inst.pending_free
            begin = inst.start
            parent = inst.id
            target = inst.target

        consumed = fill
        withdrawn = []
        element = cs.elements[idx]
        if ElementType.free(element.etype):
            pending = tuple(i for i in pending if i != idx)
        else:
            for k in range(cursor, idx):
                el = cs.elements[k]
                if ElementType.free(el.etype) or fills[k] is not None:
                    continue
                fills[k] = OMITTED
                withdrawn.append(k)
            cursor = idx + 1
        fills[idx] = consumed

        candidate = CsInstance(
            id=len(self.instances),
            cs=cs.id,
            start=begin,
            end=end,
            fills=tuple(fills),
            cursor=cursor,
            pending_free=pending,
            status="active",
            parent=parent,
            target=target,
        )
        sig = candidate.signature()
        if sig in self._sigs:
            return
        self._sigs.add(sig)
        self.instances.append(candidate)
        self._by_end.setdefault(end, []).append(candidate.id)
        self._fills_this_token += 1

        loc = ("icse", candidate.id, idx)
        self._place(AP, loc)
        self._place(AA, loc, consumed.binding())
        self.emit("collide", AA, self._loc_str(loc), consumed.binding())
        for k in withdrawn:
            self.emit("withdraw", AP, self._loc_str(("icse", candidate.id, k)))
        predicted = list(fixed_frontier(cs.elements, cursor, fills))
        if parent is None:
            predicted.extend(pending)  # free elements stay predicted until filled
        for nxt in sorted(set(predicted)):
            nloc = ("icse", candidate.id, nxt)
            if self._place(AP, nloc):
                self.emit("predict", AP, self._loc_str(nloc))
                self._predict_lexical(cs.elements[nxt])

        candidate = self._advance_target(candidate, consumed)
        if satisfied(cs, candidate.fills):
            assert not any(
                not ElementType.omissible(cs.elements[i].etype) for i in candidate.pending_free
            ), "accepted instance with a required free element pending"
            candidate = replace(candidate, status="accepted")
            self.instances[candidate.id] = candidate
            self.emit("accept", AA, f"cn:{cs.owner}", f"inst:{candidate.id}")
            self.agenda.append(("sub", candidate.id))

    # -- generation mirroring --------------------------------------------------

    def _advance_target(self, inst, fill):
        """GP cursor discipline on the paired sequence: literals pass under a
        bare GP, conceptual elements wait for a matching GA from the pool."""
        state = inst.target
        pool = list(state.pool)
        if fill.kind in ("lex", "sub") and fill.concept is not None:
            pool.append((fill.concept, fill.binding(), False))
        tcs = self.net.sequences[state.cs]
        cursor = state.cursor
        while cursor < len(tcs.elements):
            el = tcs.elements[cursor]
            loc = self._loc_str(("tcse", state.cs, cursor))
            if el.is_literal:
                self.emit("generate", GP, loc)
                cursor += 1
                continue
            hit = None
            for i, (concept, binding, used) in enumerate(pool):
                if not used and el.concept in self.net.ancestors(concept):
                    hit = i
                    break
            if hit is None:
                break
            concept, binding, _ = pool[hit]
            pool[hit] = (concept, binding, True)
            self._place(GP, ("tcse", state.cs, cursor))
            self.emit("generate", GA, loc, binding)
            cursor += 1
        updated = replace(inst, target=TargetState(cs=state.cs, cursor=cursor, pool=tuple(pool)))
        self.instances[updated.id] = updated
        return updated

    # -- results and teardown ---------------------------------------------------

    def accepted_spanning(self, n_tokens: int) -> list[CsInstance]:
        """Accepted instances anchored at the sentence start, best first:
        widest span, then network declaration order, then creation order."""
        candidates = [
            inst for inst in self.instances if inst.status == "accepted" and inst.start == 0
        ]
        candidates.sort(key=lambda i: (-i.end, self.net.declaration_index(i.cs), i.id))
        return candidates

    def best_result(self, n_tokens: int) -> CsInstance | None:
        candidates = self.accepted_spanning(n_tokens)
        if candidates and candidates[0].end == n_tokens:
            return candidates[0]
        return None  # best candidate (if any) does not cover the input

    def close(self):
        """End the session: no markers, instances or pending work may leak."""
        self.markers.clear()
        self.instances.clear()
        self.agenda.clear()
        self._by_end.clear()
        self._sigs.clear()
        self._passive_seen.clear()

    def is_empty(self) -> bool:
        return not self.markers and not self.instances and not self.agenda
