"""Brute-force reference implementations used to check the library.

Everything here is deliberately naive: subwords come from itertools
combinations, languages are compared by enumeration, and nothing calls into
the profile or class-automaton machinery under test.
"""

from __future__ import annotations

import itertools
import random

from ptk.automata import (complement, difference, down_word_dfa, empty, intersect, is_empty,
                          is_universal, union, universal, up_word_dfa, word_dfa)
from ptk.fo2 import And, Bool, Const, Exists, Forall, Iff, Implies, Not, Or, Rel, Var


def all_words(letters: str, maxlen: int, minlen: int = 0):
    for n in range(minlen, maxlen + 1):
        for t in itertools.product(letters, repeat=n):
            yield "".join(t)


def subwords(u: str, upto: int | None = None) -> frozenset:
    top = len(u) if upto is None else min(upto, len(u))
    out = set()
    for n in range(top + 1):
        for idx in itertools.combinations(range(len(u)), n):
            out.add("".join(u[i] for i in idx))
    return frozenset(out)


def sub(u: str, v: str) -> bool:
    """u ⊑ v by exhaustive search over position sets (for short words)."""
    if len(u) > len(v):
        return False
    return any("".join(v[i] for i in idx) == u
               for idx in itertools.combinations(range(len(v)), len(u)))


def sim(u: str, v: str, n: int) -> bool:
    return subwords(u, n) == subwords(v, n)


def delta(u: str, v: str) -> float:
    if u == v:
        return float("inf")
    n = 0
    while sim(u, v, n):
        n += 1
    return n


def height_word(u: str, letters: str) -> int:
    """Least n such that u is alone in its ∼n class.

    A class with more than one word is infinite, and every member of an
    infinite class has a one-letter insertion in the same class, so words
    of length |u|+1 suffice as witnesses.
    """
    n = 0
    while True:
        if not any(w != u and sim(u, w, n) for w in all_words(letters, len(u) + 1)):
            return n
        n += 1


def class_count(letters: str, n: int, maxlen: int) -> int:
    return len({subwords(w, n) for w in all_words(letters, maxlen)})


def is_n_pt_bounded(member, letters: str, n: int, maxlen: int) -> bool:
    """Every ∼n class meets L fully or not at all, among words up to maxlen."""
    seen = {}
    for w in all_words(letters, maxlen):
        key = subwords(w, n)
        m = member(w)
        if seen.setdefault(key, m) != m:
            return False
    return True


def same_language(d, member, letters: str, maxlen: int) -> bool:
    return all(d.accepts(w) == member(w) for w in all_words(letters, maxlen))


def strict_sub(u, v):
    return len(u) < len(v) and sub(u, v)


def rel_holds(op: str, u: str, v: str) -> bool:
    if op == "=":
        return u == v
    if op == "<=":
        return sub(u, v)
    if op == "<":
        return strict_sub(u, v)
    if op == ">=":
        return sub(v, u)
    if op == ">":
        return strict_sub(v, u)
    if op == "#":
        return not sub(u, v) and not sub(v, u)
    raise ValueError(op)


# --------------------------------------------------------------------------
# FO² over the subword order

OPS = ("=", "<=", "<", ">=", ">", "#")
FLIP = {"=": "=", "<=": ">=", "<": ">", ">=": "<=", ">": "<", "#": "#"}


def _word_rel_dfa(op: str, w: str, alphabet):
    """DFA of the y with w op y, built from word chains only."""
    up, down, eq = up_word_dfa(w, alphabet), down_word_dfa(w, alphabet), word_dfa(w, alphabet)
    return {
        "=": eq,
        "<=": up,
        "<": difference(up, eq),
        ">=": down,
        ">": difference(down, eq),
        "#": complement(union(up, down)),
    }[op]


def _term(t, env):
    return t.word if isinstance(t, Const) else env[t.name]


def _y_lang(node, y: str, env: dict, alphabet):
    """DFA of the values of y satisfying node when the other variables are fixed."""
    if isinstance(node, Bool):
        return universal(alphabet) if node.value else empty(alphabet)
    if isinstance(node, Rel):
        ly = isinstance(node.left, Var) and node.left.name == y
        ry = isinstance(node.right, Var) and node.right.name == y
        if ly and ry:
            return universal(alphabet) if rel_holds(node.op, "", "") else empty(alphabet)
        if ry:
            return _word_rel_dfa(node.op, _term(node.left, env), alphabet)
        if ly:
            return _word_rel_dfa(FLIP[node.op], _term(node.right, env), alphabet)
        return universal(alphabet) if evaluate(node, env, alphabet) else empty(alphabet)
    if isinstance(node, Not):
        return complement(_y_lang(node.arg, y, env, alphabet))
    if isinstance(node, And):
        out = universal(alphabet)
        for a in node.args:
            out = intersect(out, _y_lang(a, y, env, alphabet))
        return out
    if isinstance(node, Or):
        out = empty(alphabet)
        for a in node.args:
            out = union(out, _y_lang(a, y, env, alphabet))
        return out
    if isinstance(node, Implies):
        return union(complement(_y_lang(node.left, y, env, alphabet)),
                     _y_lang(node.right, y, env, alphabet))
    if isinstance(node, Iff):
        a = _y_lang(node.left, y, env, alphabet)
        b = _y_lang(node.right, y, env, alphabet)
        return union(intersect(a, b), intersect(complement(a), complement(b)))
    if isinstance(node, (Exists, Forall)):
        # the quantified variable shadows y; the subformula does not depend on y
        # unless it is free there, which a two-variable sentence rules out
        v = evaluate(node, env, alphabet)
        return universal(alphabet) if v else empty(alphabet)
    raise TypeError(node)


def evaluate(node, env: dict, alphabet) -> bool:
    """Truth value of node under env.

    Quantifiers whose body only involves one more variable are evaluated
    exactly: the witnessing set is a boolean combination of word chains, and
    emptiness is decided on that automaton.
    """
    if isinstance(node, Bool):
        return node.value
    if isinstance(node, Rel):
        return rel_holds(node.op, _term(node.left, env), _term(node.right, env))
    if isinstance(node, Not):
        return not evaluate(node.arg, env, alphabet)
    if isinstance(node, And):
        return all(evaluate(a, env, alphabet) for a in node.args)
    if isinstance(node, Or):
        return any(evaluate(a, env, alphabet) for a in node.args)
    if isinstance(node, Implies):
        return not evaluate(node.left, env, alphabet) or evaluate(node.right, env, alphabet)
    if isinstance(node, Iff):
        return evaluate(node.left, env, alphabet) == evaluate(node.right, env, alphabet)
    if isinstance(node, Exists):
        inner = {k: v for k, v in env.items() if k != node.var}
        return not is_empty(_y_lang(node.body, node.var, inner, alphabet))
    if isinstance(node, Forall):
        inner = {k: v for k, v in env.items() if k != node.var}
        return is_universal(_y_lang(node.body, node.var, inner, alphabet))
    raise TypeError(node)


def evaluate_guarded(sentence, guard: str, alphabet) -> bool:
    """Evaluate a sentence whose outer quantifier ranges over the subwords of guard.

    The sentence has the shape ∃x (x ⊑ guard ∧ φ) or ∀x (x ⊑ guard → φ); the
    outer domain is finite and enumerated, the inner quantifier is exact.
    """
    body = sentence.body
    phi = body.args[1] if isinstance(body, And) else body.right
    results = (evaluate(phi, {sentence.var: x}, alphabet) for x in sorted(subwords(guard)))
    return any(results) if isinstance(sentence, Exists) else all(results)


def _random_const(rng, letters, maxlen=2):
    return Const("".join(rng.choice(letters) for _ in range(rng.randint(0, maxlen))))


def _random_atom(rng, letters, vars_):
    op = rng.choice(OPS)
    roll = rng.random()
    if len(vars_) == 2 and roll < 0.45:
        x, y = vars_
        return Rel(op, Var(x), Var(y)) if rng.random() < 0.5 else Rel(op, Var(y), Var(x))
    v = Var(rng.choice(vars_))
    c = _random_const(rng, letters)
    return Rel(op, c, v) if rng.random() < 0.5 else Rel(op, v, c)


def _random_bool(rng, leaf, depth):
    if depth == 0 or rng.random() < 0.35:
        return leaf()
    kind = rng.choice(("not", "and", "or", "implies", "and", "or"))
    if kind == "not":
        return Not(_random_bool(rng, leaf, depth - 1))
    a = _random_bool(rng, leaf, depth - 1)
    b = _random_bool(rng, leaf, depth - 1)
    if kind == "and":
        return And((a, b))
    if kind == "or":
        return Or((a, b))
    return Implies(a, b)


def random_phi(rng: random.Random, letters: str, x: str = "x", y: str = "y"):
    """A formula with free variable x and one inner quantifier over y."""
    def inner_leaf():
        return _random_atom(rng, letters, (x, y))

    def outer_leaf():
        if rng.random() < 0.6:
            q = Exists if rng.random() < 0.5 else Forall
            return q(y, _random_bool(rng, inner_leaf, 2))
        return _random_atom(rng, letters, (x,))

    return _random_bool(rng, outer_leaf, 2)


def random_guarded_sentence(rng: random.Random, letters: str, guard_len: int = 4):
    """A depth-2 sentence whose outer quantifier is bounded by a subword guard."""
    guard = "".join(rng.choice(letters) for _ in range(rng.randint(0, guard_len)))
    phi = random_phi(rng, letters)
    g = Rel("<=", Var("x"), Const(guard))
    if rng.random() < 0.5:
        return Exists("x", And((g, phi))), guard
    return Forall("x", Implies(g, phi)), guard
