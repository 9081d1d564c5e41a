"""Line-oriented text format and DOT export for automata.

::

    alphabet: ab
    states: 3
    initial: 0
    final: 1
    trans: 0 a 1
    trans: 1 eps 2

Several ``initial:``/``final:`` values may be listed on one line. Output is
deterministic: states are renumbered breadth-first from the initial states
and transitions are sorted.
"""

from __future__ import annotations

from collections import deque

from .automata import Automaton, Dfa, Nfa
from .errors import ParseError
from .words import Alphabet

EPS = "eps"


def _bfs_numbering(nfa: Nfa) -> dict:
    succ = nfa.successors()
    order = {}
    queue = deque(sorted(nfa.initials))
    for q in queue:
        order.setdefault(q, len(order))
    letter_rank = {None: -1, **{c: i for i, c in enumerate(nfa.alphabet.letters)}}
    while queue:
        q = queue.popleft()
        for c in sorted(succ[q], key=letter_rank.__getitem__):
            for t in sorted(succ[q][c]):
                if t not in order:
                    order[t] = len(order)
                    queue.append(t)
    for q in range(nfa.num_states):
        order.setdefault(q, len(order))
    return order


def to_text(a: Automaton) -> str:
    nfa = a.to_nfa() if isinstance(a, Dfa) else a
    num = _bfs_numbering(nfa)
    rank = {None: -1, **{c: i for i, c in enumerate(nfa.alphabet.letters)}}
    lines = [
        f"alphabet: {nfa.alphabet.letters}",
        f"states: {nfa.num_states}",
        "initial: " + " ".join(str(q) for q in sorted(num[q] for q in nfa.initials)),
        "final: " + " ".join(str(q) for q in sorted(num[q] for q in nfa.finals)),
    ]
    trans = sorted((num[s], rank[c], num[t], c) for s, c, t in nfa.transitions)
    for s, _, t, c in trans:
        lines.append(f"trans: {s} {EPS if c is None else c} {t}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_automaton(text: str, alphabet: Alphabet | None = None) -> Nfa:
    declared = None
    states = None
    initials: set = set()
    finals: set = set()
    trans = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if not raw.strip().startswith("alphabet") else raw.strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        try:
            if key == "alphabet":
                declared = Alphabet(rest)
            elif key == "states":
                states = int(rest)
            elif key == "initial":
                initials |= {int(x) for x in rest.split()}
            elif key == "final":
                finals |= {int(x) for x in rest.split()}
            elif key == "trans":
                parts = rest.split()
                if len(parts) != 3:
                    raise ValueError("expected 'trans: src letter dst'")
                s, c, t = parts
                trans.append((int(s), None if c == EPS else c, int(t)))
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as e:
            raise ParseError(f"line {lineno}: {e}") from None
    if declared is None:
        if alphabet is None:
            raise ParseError("missing 'alphabet:' line")
        declared = alphabet
    elif alphabet is not None and alphabet.letters != declared.letters:
        raise ParseError(f"automaton alphabet {declared.letters!r} differs from {alphabet.letters!r}")
    if states is None:
        raise ParseError("missing 'states:' line")
    if not initials:
        raise ParseError("missing 'initial:' line")
    try:
        return Nfa(declared, states, frozenset(trans), frozenset(initials), frozenset(finals))
    except Exception as e:
        raise ParseError(str(e)) from None


def to_dot(a: Automaton, name: str = "A") -> str:
    nfa = a.to_nfa() if isinstance(a, Dfa) else a
    num = _bfs_numbering(nfa)
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for q in sorted(num.values()):
        shape = "doublecircle" if any(num[f] == q for f in nfa.finals) else "circle"
        lines.append(f"  {q} [shape={shape}];")
    for i, q in enumerate(sorted(num[q] for q in nfa.initials)):
        lines.append(f"  start{i} [shape=point];")
        lines.append(f"  start{i} -> {q};")
    edges: dict = {}
    for s, c, t in nfa.transitions:
        edges.setdefault((num[s], num[t]), []).append("ε" if c is None else c)
    for (s, t), labels in sorted(edges.items()):
        lines.append(f'  {s} -> {t} [label="{",".join(sorted(labels))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
