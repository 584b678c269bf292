"""Morphological finite automata over phoneme symbols.

An :class:`Mfa` is a partial automaton: a missing transition rejects, so
there is no explicit dead state.  Every construction in this module returns
an automaton whose states are renumbered depth-first from the start state,
visiting edges in symbol order.  That numbering is what the grammar and DOT
exports print as ``Q0 ... Qn``.
"""

from __future__ import annotations

import hashlib
import json
import re
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .phonology import PhoneticMap, canonical_map
from .translit import UntokenizableInput, tokenize

EPSILON = "ε"

Label = tuple[str, tuple[str, ...]]  # (word, language codes)


class EmptyWordList(ValueError):
    pass


class NotDeterministic(ValueError):
    pass


class NotATrie(ValueError):
    pass


class MalformedAutomatonFile(ValueError):
    def __init__(self, reason: str):
        super().__init__(f"malformed automaton file: {reason}")
        self.reason = reason


class GrammarSyntaxError(ValueError):
    pass


class Mfa:
    """Immutable finite automaton with optional epsilon moves.

    ``transitions`` maps ``(state, symbol)`` to a set of target states and
    ``epsilon`` maps a state to the states it reaches without input.
    ``labels`` attaches ``(word, language codes)`` pairs to accepting states.
    """

    __slots__ = ("n_states", "start", "accepting", "transitions", "epsilon",
                 "labels", "alphabet", "_out")

    def __init__(
        self,
        n_states: int,
        start: int,
        accepting: Iterable[int],
        transitions: Mapping[tuple[int, str], Iterable[int]],
        epsilon: Mapping[int, Iterable[int]] | None = None,
        labels: Mapping[int, Iterable[Label]] | None = None,
        alphabet: Iterable[str] | None = None,
    ):
        trans = {}
        for (src, sym), targets in transitions.items():
            targets = frozenset(targets)
            if targets:
                trans[(src, sym)] = targets
        eps = {s: frozenset(t) for s, t in (epsilon or {}).items() if t}
        labs = {}
        for s, items in (labels or {}).items():
            items = tuple((w, tuple(codes)) for w, codes in items)
            if items:
                labs[s] = items
        alpha = frozenset(alphabet) if alphabet is not None else frozenset(sym for _, sym in trans)

        object.__setattr__(self, "n_states", n_states)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "accepting", frozenset(accepting))
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "labels", labs)
        object.__setattr__(self, "alphabet", alpha)
        self._validate()

        out: list[dict[str, frozenset[int]]] = [{} for _ in range(n_states)]
        for (src, sym), targets in trans.items():
            out[src][sym] = targets
        object.__setattr__(self, "_out", out)

    def __setattr__(self, name, value):
        raise AttributeError("Mfa is immutable")

    def _validate(self) -> None:
        n = self.n_states
        if n < 1:
            raise ValueError("an automaton needs at least one state")
        if not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range")
        if any(not 0 <= s < n for s in self.accepting):
            raise ValueError("accepting state out of range")
        for (src, sym), targets in self.transitions.items():
            if not 0 <= src < n or any(not 0 <= t < n for t in targets):
                raise ValueError(f"transition ({src}, {sym!r}) leaves the state set")
            if sym not in self.alphabet:
                raise ValueError(f"symbol {sym!r} missing from the alphabet")
            if sym == EPSILON:
                raise ValueError("use the epsilon map for empty moves")
        for src, targets in self.epsilon.items():
            if not 0 <= src < n or any(not 0 <= t < n for t in targets):
                raise ValueError(f"epsilon move from {src} leaves the state set")
        for s in self.labels:
            if s not in self.accepting:
                raise ValueError(f"label on non-accepting state {s}")

    @property
    def states(self) -> range:
        return range(self.n_states)

    @property
    def is_deterministic(self) -> bool:
        return not self.epsilon and all(len(t) == 1 for t in self.transitions.values())

    def edges(self, state: int) -> list[tuple[str, int]]:
        """Outgoing symbol edges of ``state``, sorted by symbol then target."""
        return sorted((sym, t) for sym, targets in self._out[state].items() for t in targets)

    def step(self, state: int, symbol: str) -> frozenset[int]:
        return self._out[state].get(symbol, frozenset())

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            for t in self.epsilon.get(stack.pop(), ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def move(self, states: Iterable[int], symbol: str) -> frozenset[int]:
        targets: set[int] = set()
        for s in states:
            targets |= self._out[s].get(symbol, frozenset())
        return self.closure(targets)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mfa):
            return NotImplemented
        return (self.n_states, self.start, self.accepting, self.transitions, self.epsilon,
                self.labels, self.alphabet) == (other.n_states, other.start, other.accepting,
                                                other.transitions, other.epsilon, other.labels,
                                                other.alphabet)

    def __hash__(self) -> int:
        return hash(structural_hash(self))

    def __repr__(self) -> str:
        kind = "DFA" if self.is_deterministic else "NFA"
        return (f"<Mfa {kind} states={self.n_states} accepting={len(self.accepting)} "
                f"alphabet={len(self.alphabet)}>")


def canonical(m: Mfa) -> Mfa:
    """Drop unreachable states and renumber depth-first from the start."""
    order: dict[int, int] = {}
    stack = [m.start]
    while stack:
        s = stack.pop()
        if s in order:
            continue
        order[s] = len(order)
        succ = [t for _, t in m.edges(s)] + sorted(m.epsilon.get(s, ()))
        stack.extend(reversed(succ))
    trans = {(order[src], sym): {order[t] for t in targets}
             for (src, sym), targets in m.transitions.items() if src in order}
    eps = {order[s]: {order[t] for t in ts} for s, ts in m.epsilon.items() if s in order}
    labels = {order[s]: items for s, items in m.labels.items() if s in order}
    accepting = {order[s] for s in m.accepting if s in order}
    return Mfa(len(order), 0, accepting, trans, eps, labels, m.alphabet)


def _merge_labels(*groups: Iterable[Label]) -> tuple[Label, ...]:
    out: list[Label] = []
    for group in groups:
        for item in group:
            if item not in out:
                out.append(item)
    return tuple(out)


def build_trie(words: Sequence[Sequence[str]], labels: Sequence[Label] | None = None) -> Mfa:
    """Prefix-tree automaton: one state per distinct prefix, words accept.

    A state may both accept and continue, e.g. ``kavi`` inside ``kavitā``.
    """
    words = [tuple(w) for w in words]
    if not words:
        raise EmptyWordList("build_trie needs at least one word")
    if labels is not None and len(labels) != len(words):
        raise ValueError("labels must line up with words")
    children: list[dict[str, int]] = [{}]
    accepting: set[int] = set()
    state_labels: dict[int, list[Label]] = defaultdict(list)
    for i, word in enumerate(words):
        s = 0
        for sym in word:
            nxt = children[s].get(sym)
            if nxt is None:
                nxt = len(children)
                children.append({})
                children[s][sym] = nxt
            s = nxt
        accepting.add(s)
        if labels is not None:
            state_labels[s] = list(_merge_labels(state_labels[s], [labels[i]]))
    trans = {(s, sym): {t} for s, kids in enumerate(children) for sym, t in kids.items()}
    return canonical(Mfa(len(children), 0, accepting, trans, labels=state_labels))


def _check_trie(m: Mfa) -> None:
    if m.epsilon or not m.is_deterministic:
        raise NotATrie("merge_suffixes expects a prefix tree")
    indegree = [0] * m.n_states
    for targets in m.transitions.values():
        for t in targets:
            indegree[t] += 1
    if indegree[m.start] or any(d != 1 for s, d in enumerate(indegree) if s != m.start):
        raise NotATrie("merge_suffixes expects a prefix tree")


def merge_suffixes(m: Mfa) -> Mfa:
    """Share identical word endings of a trie through epsilon moves.

    Whenever the sub-tree below a state repeats one seen earlier, the later
    copy is cut off and replaced by an epsilon move into the earlier one.
    The accepted language does not change.
    """
    _check_trie(m)
    m = canonical(m)
    children = [{sym: t for sym, t in m.edges(s)} for s in m.states]

    # Bottom-up signatures: equal signature <=> equal sub-tree.
    sig: dict[int, int] = {}
    interned: dict[tuple, int] = {}
    for s in reversed(range(m.n_states)):  # preorder ids: children come after parents
        key = (s in m.accepting, tuple((sym, sig[t]) for sym, t in sorted(children[s].items())))
        sig[s] = interned.setdefault(key, len(interned))

    representative: dict[int, int] = {}
    redirect: dict[int, int] = {}
    counterpart: dict[int, int] = {}
    home: dict[int, int] = {}
    dropped: set[int] = set()
    for s in m.states:  # preorder
        if s in dropped:
            home[s] = home[counterpart[s]]
            for sym, t in children[s].items():
                dropped.add(t)
                counterpart[t] = children[counterpart[s]][sym]
        elif s != m.start and children[s] and sig[s] in representative:
            rep = representative[sig[s]]
            redirect[s] = rep
            home[s] = home[rep]
            for sym, t in children[s].items():
                dropped.add(t)
                counterpart[t] = children[rep][sym]
        else:
            representative.setdefault(sig[s], s)
            home[s] = s

    trans = {}
    for s in m.states:
        if s in dropped or s in redirect:
            continue
        for sym, t in children[s].items():
            trans[(s, sym)] = {t}
    eps = {s: {rep} for s, rep in redirect.items()}
    accepting = {s for s in m.accepting if s not in dropped and s not in redirect}
    labels: dict[int, tuple[Label, ...]] = {}
    for s in sorted(m.labels):
        labels[home[s]] = _merge_labels(labels.get(home[s], ()), m.labels[s])
    return canonical(Mfa(m.n_states, m.start, accepting, trans, eps, labels, m.alphabet))


def determinize(m: Mfa) -> Mfa:
    """Subset construction over epsilon closures."""
    start = m.closure([m.start])
    index = {start: 0}
    queue = [start]
    trans = {}
    while queue:
        subset = queue.pop(0)
        symbols = sorted({sym for s in subset for sym in m._out[s]})
        for sym in symbols:
            target = m.move(subset, sym)
            if target not in index:
                index[target] = len(index)
                queue.append(target)
            trans[(index[subset], sym)] = {index[target]}
    accepting = {i for subset, i in index.items() if subset & m.accepting}
    labels = {i: _merge_labels(*(m.labels.get(s, ()) for s in sorted(subset)))
              for subset, i in index.items() if subset & m.accepting}
    return canonical(Mfa(len(index), 0, accepting, trans, labels=labels, alphabet=m.alphabet))


def _live_states(m: Mfa) -> set[int]:
    """States from which some accepting state is reachable."""
    reverse = defaultdict(set)
    for (src, _), targets in m.transitions.items():
        for t in targets:
            reverse[t].add(src)
    for src, targets in m.epsilon.items():
        for t in targets:
            reverse[t].add(src)
    live = set(m.accepting)
    stack = list(live)
    while stack:
        for p in reverse[stack.pop()]:
            if p not in live:
                live.add(p)
                stack.append(p)
    return live


def minimize(m: Mfa) -> Mfa:
    """Minimal partial DFA by partition refinement.

    Dead states are removed first; a missing transition plays the role of
    the sink, so the result has no dead state either.
    """
    if not m.is_deterministic:
        raise NotDeterministic("minimize needs a deterministic automaton")
    m = canonical(m)
    live = _live_states(m)
    if m.start not in live:
        return Mfa(1, 0, (), {}, alphabet=m.alphabet)
    states = [s for s in m.states if s in live]
    symbols = sorted({sym for _, sym in m.transitions})
    sink = -1

    def delta(s, sym):
        if s == sink:
            return sink
        t = m.step(s, sym)
        if not t:
            return sink
        (t,) = t
        return t if t in live else sink

    block = {s: int(s in m.accepting) for s in states}
    block[sink] = 0
    count = len(set(block.values()))
    while True:
        keys = {}
        new_block = {}
        for s in [sink, *states]:
            key = (block[s], tuple(block[delta(s, sym)] for sym in symbols))
            new_block[s] = keys.setdefault(key, len(keys))
        block = new_block
        if len(keys) == count:
            break
        count = len(keys)

    sink_block = block[sink]
    trans = {}
    labels: dict[int, tuple[Label, ...]] = {}
    for s in states:
        b = block[s]
        for sym in symbols:
            t = delta(s, sym)
            if t != sink:
                trans[(b, sym)] = {block[t]}
        if s in m.labels:
            labels[b] = _merge_labels(labels.get(b, ()), m.labels[s])
    accepting = {block[s] for s in states if s in m.accepting}
    n_blocks = max(block.values()) + 1
    # the sink's block has no live members once dead states are gone
    assert all(block[s] != sink_block for s in states)
    return canonical(Mfa(n_blocks, block[m.start], accepting, trans, labels=labels,
                         alphabet=m.alphabet))


def accepts(m: Mfa, word: Iterable[str]) -> bool:
    current = m.closure([m.start])
    for sym in word:
        if sym not in m.alphabet:
            return False
        current = m.move(current, sym)
        if not current:
            return False
    return bool(current & m.accepting)


def enumerate_words(m: Mfa, max_len: int) -> list[tuple[str, ...]]:
    """Every accepted word of at most ``max_len`` symbols, sorted."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    found: set[tuple[str, ...]] = set()
    stack = [((), m.closure([m.start]))]
    while stack:
        word, current = stack.pop()
        if current & m.accepting:
            found.add(word)
        if len(word) == max_len:
            continue
        for sym in sorted({sym for s in current for sym in m._out[s]}):
            nxt = m.move(current, sym)
            if nxt:
                stack.append((word + (sym,), nxt))
    return sorted(found)


# --- grammar -------------------------------------------------------------

@dataclass(frozen=True)
class Production:
    """``Qlhs -> terminal Qrhs``; ``rhs`` is None for a terminating rule."""

    lhs: int
    terminal: tuple[str, ...]
    rhs: int | None

    def body(self) -> str:
        term = "".join(self.terminal)
        if self.rhs is None:
            return term or EPSILON
        return f"{term} Q{self.rhs}" if term else f"Q{self.rhs}"

    def __str__(self) -> str:
        return f"Q{self.lhs} -> {self.body()}"


@dataclass(frozen=True)
class Grammar:
    productions: tuple[Production, ...]
    start: int = 0

    @property
    def nonterminals(self) -> list[str]:
        ids = {self.start} | {p.lhs for p in self.productions}
        ids |= {p.rhs for p in self.productions if p.rhs is not None}
        return [f"Q{i}" for i in sorted(ids)]

    @property
    def terminals(self) -> set[tuple[str, ...]]:
        return {p.terminal for p in self.productions if p.terminal}

    def rules(self) -> list[str]:
        return [str(p) for p in self.productions]

    def text(self) -> str:
        """Rules joined by ``; `` with one line per non-terminal using ``|``."""
        grouped: dict[int, list[str]] = {}
        for p in self.productions:
            grouped.setdefault(p.lhs, []).append(p.body())
        return "; ".join(f"Q{lhs} -> " + " | ".join(bodies) for lhs, bodies in grouped.items())

    def __str__(self) -> str:
        return self.text()

    def derive(self, max_len: int) -> set[tuple[str, ...]]:
        """All words of at most ``max_len`` symbols derivable from the start."""
        by_lhs = defaultdict(list)
        for p in self.productions:
            by_lhs[p.lhs].append(p)
        found = set()
        seen = set()
        stack = [((), self.start)]
        while stack:
            word, nt = stack.pop()
            for p in by_lhs[nt]:
                longer = word + p.terminal
                if len(longer) > max_len:
                    continue
                if p.rhs is None:
                    found.add(longer)
                elif (longer, p.rhs) not in seen:
                    seen.add((longer, p.rhs))
                    stack.append((longer, p.rhs))
        return found

    def derives(self, word: Sequence[str]) -> bool:
        word = tuple(word)
        return word in self.derive(len(word))


def export_grammar(m: Mfa, compress_suffixes: bool = False) -> Grammar:
    """Right-linear grammar with one non-terminal per state.

    With ``compress_suffixes`` a run of states that each have one way in and
    one way out (and do not accept) collapses into a multi-phoneme terminal,
    and a run that ends in an accepting dead end becomes a terminating rule,
    so ``Q7 -> t Q8; Q8 -> ā Q9; Q9 -> ε`` reads ``Q7 -> tā``.
    """
    if not m.is_deterministic:
        raise NotDeterministic("export_grammar needs a deterministic automaton")
    m = canonical(m)
    indegree = [0] * m.n_states
    for targets in m.transitions.values():
        for t in targets:
            indegree[t] += 1

    def passthrough(s: int) -> bool:
        return (compress_suffixes and s != m.start and s not in m.accepting
                and indegree[s] == 1 and len(m.edges(s)) == 1)

    per_state: dict[int, list[Production]] = {}
    referenced = {m.start}
    for s in m.states:
        rules = []
        for sym, t in m.edges(s):
            terminal = [sym]
            seen = {s}
            while passthrough(t) and t not in seen:
                seen.add(t)
                (nsym, nt), = m.edges(t)
                terminal.append(nsym)
                t = nt
            if compress_suffixes and t in m.accepting and not m.edges(t):
                rules.append(Production(s, tuple(terminal), None))
            else:
                rules.append(Production(s, tuple(terminal), t))
                referenced.add(t)
        if s in m.accepting:
            rules.append(Production(s, (), None))
        per_state[s] = rules
    productions = [p for s in m.states if s in referenced for p in per_state[s]]
    return Grammar(tuple(productions), m.start)


_RULE_BODY = re.compile(r"(?P<term>.*?)\s*(?P<nt>Q\d+)?")
_NONTERMINAL = re.compile(r"Q\d+")


def parse_grammar(text: str, pmap: PhoneticMap | None = None) -> Mfa:
    """Build an automaton from right-linear rules written in arrow notation.

    Accepted forms, separated by ``;`` or newlines::

        Q0 -> kQ1 | th Q1      terminal then non-terminal
        Q4 -> Q5               bare non-terminal: an epsilon move
        Q12 -> {a,u,o}Q13      braces: one edge per listed alternative
        Q3 -> iQ4 -> tā        chained arrows continue from the last non-terminal,
                               which also accepts (kavi and kavitā)
        Q6 -> ā   /   Q6 -> ε  terminating rules

    Non-terminals that never appear on a left-hand side accept.  A trailing
    full stop on a rule is ignored.
    """
    pmap = canonical_map() if pmap is None else pmap
    names: dict[str, int] = {"Q0": 0}
    n_states = 1

    def state(name: str) -> int:
        nonlocal n_states
        if name not in names:
            names[name] = n_states
            n_states += 1
        return names[name]

    def fresh() -> int:
        nonlocal n_states
        n_states += 1
        return n_states - 1

    trans: dict[tuple[int, str], set[int]] = defaultdict(set)
    eps: dict[int, set[int]] = defaultdict(set)
    accepting: set[int] = set()
    has_rules: set[int] = set()

    for rule in filter(None, (r.strip().rstrip(".").strip() for r in re.split(r"[;\n]", text))):
        segments = [seg.strip() for seg in rule.split("->")]
        if len(segments) < 2 or not _NONTERMINAL.fullmatch(segments[0]):
            raise GrammarSyntaxError(f"cannot read rule {rule!r}")
        lhs = state(segments[0])
        for pos, seg in enumerate(segments[1:], start=1):
            has_rules.add(lhs)
            last_nt = None
            for alt in (a.strip() for a in seg.split("|")):
                if not alt:
                    raise GrammarSyntaxError(f"empty right-hand side in rule {rule!r}")
                parts = _RULE_BODY.fullmatch(alt)
                term, nt = parts["term"].strip(), parts["nt"]
                target = state(nt) if nt else None
                last_nt = nt
                if term in ("", EPSILON):
                    if target is None:
                        accepting.add(lhs)
                    else:
                        eps[lhs].add(target)
                    continue
                if term.startswith("{") and term.endswith("}"):
                    options = [o.strip() for o in term[1:-1].split(",") if o.strip()]
                else:
                    options = [term]
                dest = target
                if dest is None:
                    dest = fresh()
                    accepting.add(dest)
                for option in options:
                    try:
                        symbols = tokenize(pmap, option.replace(" ", "")).phonemes
                    except UntokenizableInput as exc:
                        raise GrammarSyntaxError(f"in rule {rule!r}: {exc}") from None
                    src = lhs
                    for sym in symbols[:-1]:
                        mid = fresh()
                        trans[(src, sym)].add(mid)
                        src = mid
                    trans[(src, symbols[-1])].add(dest)
            if pos < len(segments) - 1:
                if last_nt is None:
                    raise GrammarSyntaxError(f"chained rule {rule!r} has nothing to continue from")
                lhs = state(last_nt)
                accepting.add(lhs)

    named = set(names.values())
    accepting |= named - has_rules
    return canonical(Mfa(n_states, 0, accepting, trans, eps))


# --- export and persistence ---------------------------------------------

def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(m: Mfa, name: str = "MFA") -> str:
    """Graphviz digraph: accepting states are double circles, the start has an entry arrow."""
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];",
             '  __start [shape=point, label=""];', "  __start -> Q0;"]
    for s in m.states:
        shape = "doublecircle" if s in m.accepting else "circle"
        label = f"Q{s}"
        if s in m.labels:
            words = ", ".join(f"{w} ({'/'.join(c)})" if c else w for w, c in m.labels[s])
            label += "\\n" + words.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  Q{s} [shape={shape}, label="{label}"];')
        else:
            lines.append(f"  Q{s} [shape={shape}];")
    for s in m.states:
        for sym, t in m.edges(s):
            lines.append(f"  Q{s} -> Q{t} [label={_dot_quote(sym)}];")
        for t in sorted(m.epsilon.get(s, ())):
            lines.append(f"  Q{s} -> Q{t} [label={_dot_quote(EPSILON)}, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(m: Mfa) -> str:
    doc = {
        "alphabet": sorted(m.alphabet),
        "states": m.n_states,
        "start": m.start,
        "accepting": sorted(m.accepting),
        "transitions": sorted([src, sym, t] for (src, sym), ts in m.transitions.items() for t in ts),
        "epsilon": sorted([src, t] for src, ts in m.epsilon.items() for t in ts),
        "labels": {str(s): [[w, list(c)] for w, c in m.labels[s]] for s in sorted(m.labels)},
    }
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


def _expect(cond: bool, reason: str) -> None:
    if not cond:
        raise MalformedAutomatonFile(reason)


def from_json(text: str) -> Mfa:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedAutomatonFile(f"not valid JSON ({exc.msg} at line {exc.lineno})") from None
    _expect(isinstance(doc, dict), "top level must be an object")
    for key in ("alphabet", "states", "start", "accepting", "transitions", "epsilon", "labels"):
        _expect(key in doc, f"missing field {key!r}")
    n = doc["states"]
    _expect(isinstance(n, int) and n >= 1, "'states' must be a positive integer")

    def is_state(x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n

    alphabet = doc["alphabet"]
    _expect(isinstance(alphabet, list) and all(isinstance(a, str) for a in alphabet),
            "'alphabet' must be a list of strings")
    _expect(is_state(doc["start"]), "start state is not declared")
    _expect(isinstance(doc["accepting"], list) and all(map(is_state, doc["accepting"])),
            "accepting list refers to undeclared states")
    trans = defaultdict(set)
    _expect(isinstance(doc["transitions"], list), "'transitions' must be a list")
    for item in doc["transitions"]:
        _expect(isinstance(item, list) and len(item) == 3, f"bad transition {item!r}")
        src, sym, t = item
        _expect(is_state(src) and is_state(t), f"transition {item!r} uses an undeclared state")
        _expect(sym in alphabet, f"transition {item!r} uses a symbol outside the alphabet")
        trans[(src, sym)].add(t)
    eps = defaultdict(set)
    _expect(isinstance(doc["epsilon"], list), "'epsilon' must be a list")
    for item in doc["epsilon"]:
        _expect(isinstance(item, list) and len(item) == 2 and all(map(is_state, item)),
                f"bad epsilon move {item!r}")
        eps[item[0]].add(item[1])
    labels = {}
    _expect(isinstance(doc["labels"], dict), "'labels' must be an object")
    for key, items in doc["labels"].items():
        _expect(key.isdigit() and int(key) in doc["accepting"], f"label on non-accepting state {key!r}")
        try:
            labels[int(key)] = [(str(w), tuple(str(c) for c in codes)) for w, codes in items]
        except (TypeError, ValueError):
            raise MalformedAutomatonFile(f"bad labels for state {key}") from None
    try:
        return Mfa(n, doc["start"], doc["accepting"], trans, eps, labels, alphabet)
    except ValueError as exc:
        raise MalformedAutomatonFile(str(exc)) from None


def save(m: Mfa, path) -> None:
    Path(path).write_text(to_json(m), encoding="utf-8")


def load(path) -> Mfa:
    return from_json(Path(path).read_text(encoding="utf-8"))


def structural_hash(m: Mfa) -> str:
    """Hash that is equal for automata that differ only in state numbering."""
    return hashlib.sha256(to_json(canonical(m)).encode("utf-8")).hexdigest()
