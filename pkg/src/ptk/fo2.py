"""Two-variable first-order logic over the subword order.

Surface syntax (ASCII)::

    exists x ("ab" <= x & "bc" <= x & !("abc" <= x))
    forall x (x in /(a+b)*/ <-> exists y (y in /(ab)*/ & x <= y))

Relations: ``<=`` subword, ``<`` strict subword, ``>`` strict superword,
``>=`` superword, ``=``, ``#`` incomparable. Connectives ``!``, ``&``, ``|``,
``->``, ``<->`` (binding tightest to loosest). A quantifier applies to the
unary formula that follows it, so write ``exists x (...)``. Constants are
double-quoted words; ``x in /regex/`` is allowed in extended mode only.

Elimination computes, for a formula with one free variable x, a DFA of the
values of x that satisfy it. ``∃y ψ`` is handled by abstracting inner
quantified subformulas into membership atoms, putting the matrix in
disjunctive normal form over the exclusive relations {=, <, >, #} between x
and y, and taking pre-images: {x : ∃y ∈ L. x R y} is L, the strict
downward closure, the strict upward closure or I(L).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from . import automata as fa
from .automata import Dfa
from .closures import strict_down, strict_up
from .errors import AlphabetError, CapExceeded, ParseError, PreconditionError, UnsupportedConstruct
from .incomparability import I_of_pt, incomparability_singleton
from .regex import regex_to_dfa
from .simon import DEFAULT_CLASS_CAP, pt_height_dfa
from .words import Alphabet, compare, f

BASIC = "basic"
EXTENDED = "extended"

RELATIONS = ("<=", "<", ">", ">=", "=", "#")
EXCLUSIVE = ("=", "<", ">", "#")
FLIP = {"<=": ">=", ">=": "<=", "<": ">", ">": "<", "=": "=", "#": "#"}
_HOLDS = {
    "<=": {"=", "<"}, "<": {"<"}, ">": {">"}, ">=": {"=", ">"}, "=": {"="}, "#": {"#"},
}
_RELATION_CODE = {"EQUAL": "=", "BELOW": "<", "ABOVE": ">", "INCOMPARABLE": "#"}


# ------------------------------------------------------------------- AST

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    word: str

    def __str__(self):
        return f'"{self.word}"'


Term = Union[Var, Const]


@dataclass(frozen=True)
class Rel:
    op: str
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class Member:
    term: Term
    regex: str

    def __str__(self):
        return f"{self.term} in /{self.regex}/"


@dataclass(frozen=True)
class InLang:
    """Internal atom: variable value belongs to the language of a DFA."""
    var: str
    dfa: Dfa = field(compare=True)
    bound: Optional[int] = None
    label: str = field(default="L", compare=False)
    node: int = field(default=-1, compare=False)  # ledger record that produced it

    def __str__(self):
        return f"{self.var} in <{self.label}>"


@dataclass(frozen=True)
class Bool:
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Not:
    arg: "Node"

    def __str__(self):
        inner = str(self.arg) if isinstance(self.arg, (Bool, Not)) else f"({self.arg})"
        return f"!{inner}"


@dataclass(frozen=True)
class And:
    args: tuple

    def __str__(self):
        return " & ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Or:
    args: tuple

    def __str__(self):
        return " | ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Implies:
    left: "Node"
    right: "Node"

    def __str__(self):
        return f"{_wrap(self.left)} -> {_wrap(self.right)}"


@dataclass(frozen=True)
class Iff:
    left: "Node"
    right: "Node"

    def __str__(self):
        return f"{_wrap(self.left)} <-> {_wrap(self.right)}"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Node"

    def __str__(self):
        return f"exists {self.var} {_wrap(self.body)}"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Node"

    def __str__(self):
        return f"forall {self.var} {_wrap(self.body)}"


Node = Union[Rel, Member, InLang, Bool, Not, And, Or, Implies, Iff, Exists, Forall]


def _wrap(node) -> str:
    if isinstance(node, (Rel, Member, InLang, Bool, Not)):
        return str(node)
    return f"({node})"


def free_vars(node) -> frozenset:
    if isinstance(node, Rel):
        return frozenset(t.name for t in (node.left, node.right) if isinstance(t, Var))
    if isinstance(node, Member):
        return frozenset([node.term.name]) if isinstance(node.term, Var) else frozenset()
    if isinstance(node, InLang):
        return frozenset([node.var])
    if isinstance(node, Bool):
        return frozenset()
    if isinstance(node, Not):
        return free_vars(node.arg)
    if isinstance(node, (And, Or)):
        return frozenset().union(*(free_vars(a) for a in node.args))
    if isinstance(node, (Implies, Iff)):
        return free_vars(node.left) | free_vars(node.right)
    if isinstance(node, (Exists, Forall)):
        return free_vars(node.body) - {node.var}
    raise TypeError(node)


def all_vars(node) -> frozenset:
    if isinstance(node, (Exists, Forall)):
        return all_vars(node.body) | {node.var}
    if isinstance(node, Not):
        return all_vars(node.arg)
    if isinstance(node, (And, Or)):
        return frozenset().union(*(all_vars(a) for a in node.args))
    if isinstance(node, (Implies, Iff)):
        return all_vars(node.left) | all_vars(node.right)
    return free_vars(node)


def size(node) -> int:
    if isinstance(node, Not):
        return 1 + size(node.arg)
    if isinstance(node, (And, Or)):
        return 1 + sum(size(a) for a in node.args)
    if isinstance(node, (Implies, Iff)):
        return 1 + size(node.left) + size(node.right)
    if isinstance(node, (Exists, Forall)):
        return 1 + size(node.body)
    return 1


def quantifier_depth(node) -> int:
    if isinstance(node, (Exists, Forall)):
        return 1 + quantifier_depth(node.body)
    if isinstance(node, Not):
        return quantifier_depth(node.arg)
    if isinstance(node, (And, Or)):
        return max(quantifier_depth(a) for a in node.args)
    if isinstance(node, (Implies, Iff)):
        return max(quantifier_depth(node.left), quantifier_depth(node.right))
    return 0


@dataclass(frozen=True)
class Formula:
    root: Node
    alphabet: Alphabet
    mode: str = BASIC

    def __str__(self):
        return str(self.root)

    @property
    def free(self) -> frozenset:
        return free_vars(self.root)


# ---------------------------------------------------------------- parser

_SYMBOLS = {"⊑": "<=", "⊏": "<", "⊐": ">", "⊒": ">=", "⊥": "#", "¬": "!", "∧": "&",
            "∨": "|", "→": "->", "↔": "<->", "⟺": "<->", "⇒": "->", "∃": "exists", "∀": "forall"}
_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<str>"[^"]*")
  | (?P<regex>/[^/]*/)
  | (?P<op><->|->|<=|>=|[<>=#&|!()])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)
KEYWORDS = {"exists", "forall", "in", "true", "false"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    for sym, rep in _SYMBOLS.items():
        text = text.replace(sym, f" {rep} ")
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}")
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", pos))
    return out


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet, mode: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet
        self.mode = mode

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            self.fail(f"expected {value!r}")
        self.i += 1
        return tok

    def fail(self, msg):
        kind, val, pos = self.peek()
        got = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"{msg} at position {pos} (found {got})")

    def formula(self):
        left = self.implication()
        while self.peek()[1] == "<->":
            self.take()
            left = Iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunction()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        args = [self.conjunction()]
        while self.peek()[1] == "|":
            self.take()
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conjunction(self):
        args = [self.unary()]
        while self.peek()[1] == "&":
            self.take()
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self):
        kind, val, _ = self.peek()
        if val == "!":
            self.take()
            return Not(self.unary())
        if kind == "ident" and val in ("exists", "forall"):
            self.take()
            vk, var, _ = self.peek()
            if vk != "ident" or var in KEYWORDS:
                self.fail("expected a variable after quantifier")
            self.take()
            body = self.unary()
            return Exists(var, body) if val == "exists" else Forall(var, body)
        if val == "(":
            self.take()
            node = self.formula()
            self.take(")")
            return node
        if kind == "ident" and val in ("true", "false"):
            self.take()
            return Bool(val == "true")
        return self.atom()

    def term(self):
        kind, val, _ = self.peek()
        if kind == "str":
            self.take()
            word = val[1:-1]
            try:
                self.alphabet.check(word)
            except AlphabetError as e:
                raise ParseError(f"constant {val}: {e}") from None
            return Const(word)
        if kind == "ident" and val not in KEYWORDS:
            self.take()
            return Var(val)
        self.fail("expected a variable or a quoted word")

    def atom(self):
        left = self.term()
        kind, val, _ = self.peek()
        if kind == "ident" and val == "in":
            self.take()
            rk, rv, _ = self.peek()
            if rk != "regex":
                self.fail("expected /regex/ after 'in'")
            self.take()
            if self.mode != EXTENDED:
                raise ParseError("membership atoms need extended mode")
            body = rv[1:-1]
            regex_to_dfa(body, self.alphabet)  # validate now
            return Member(left, body)
        if kind == "op" and val in RELATIONS:
            self.take()
            return Rel(val, left, self.term())
        self.fail("expected a relation")


def parse_formula(text: str, alphabet: Alphabet, mode: str = BASIC) -> Formula:
    if mode not in (BASIC, EXTENDED):
        raise ValueError(f"unknown mode {mode!r}")
    p = _Parser(text, alphabet, mode)
    root = p.formula()
    if p.peek()[0] != "end":
        p.fail("unexpected trailing input")
    names = all_vars(root)
    if len(names) > 2:
        raise ParseError(f"at most two variables are allowed, found {', '.join(sorted(names))}")
    return Formula(root, alphabet, mode)


# ------------------------------------------------------ syntactic rewrites

def _split_rel(node: Rel, negate: bool):
    """The relation (or its negation) as a disjunction of exclusive relations."""
    holds = _HOLDS[node.op]
    rels = [r for r in EXCLUSIVE if (r in holds) != negate]
    parts = tuple(Rel(r, node.left, node.right) for r in rels)
    return parts[0] if len(parts) == 1 else Or(parts)


def push_negations(node, negate: bool = False):
    """Negation normal form: negations only on membership atoms; negated
    relations become disjunctions of the other exclusive relations."""
    if isinstance(node, Not):
        return push_negations(node.arg, not negate)
    if isinstance(node, Bool):
        return Bool(node.value != negate)
    if isinstance(node, Rel):
        return _split_rel(node, negate)
    if isinstance(node, (Member, InLang)):
        return Not(node) if negate else node
    if isinstance(node, And):
        args = tuple(push_negations(a, negate) for a in node.args)
        return Or(args) if negate else And(args)
    if isinstance(node, Or):
        args = tuple(push_negations(a, negate) for a in node.args)
        return And(args) if negate else Or(args)
    if isinstance(node, Implies):
        return push_negations(Or((Not(node.left), node.right)), negate)
    if isinstance(node, Iff):
        both = And((node.left, node.right))
        neither = And((Not(node.left), Not(node.right)))
        return push_negations(Or((both, neither)), negate)
    if isinstance(node, Exists):
        body = push_negations(node.body, negate)
        return Forall(node.var, body) if negate else Exists(node.var, body)
    if isinstance(node, Forall):
        body = push_negations(node.body, negate)
        return Exists(node.var, body) if negate else Forall(node.var, body)
    raise TypeError(node)


# ------------------------------------------------------------ height ledger

@dataclass
class LedgerRecord:
    node: int
    kind: str
    detail: str
    inputs: tuple
    rule: str
    bound: Optional[int]
    local_bound: Optional[int] = None
    measured: Union[int, str, None] = None

    def as_dict(self) -> dict:
        return {"node": self.node, "kind": self.kind, "detail": self.detail,
                "inputs": list(self.inputs), "rule": self.rule, "bound": self.bound,
                "local_bound": self.local_bound, "measured": self.measured}


@dataclass
class HeightLedger:
    records: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def violations(self) -> list:
        return [r for r in self.records
                if isinstance(r.measured, int) and r.bound is not None and r.measured > r.bound]


@dataclass(frozen=True)
class _Lang:
    dfa: Dfa
    bound: Optional[int]   # symbolic bound; None in extended mode when unknown
    node: int


def _f_bound(k: int, n: int) -> int:
    """f(k, n) exactly when cheap, else the closed-form upper bound (floored)."""
    if k <= 2 or n <= 300:
        return f(k, n)
    return (n + 2 * k - 1) ** k // k ** k - 1


def bound_rule(rel: str, k: int, n: int) -> tuple[str, int]:
    """Height bound for {x : ∃y ∈ L. x rel y} when L is n-PT."""
    if rel == "=":
        return "h(L)", n
    m = _f_bound(k, n)
    if rel == "<":
        return "(k+1)(f_k(n)+1)", (k + 1) * (m + 1)
    if rel == ">":
        return "f_k(n)+1", m + 1
    if rel == "#":
        return "f_k(n)+1", m + 1
    raise ValueError(rel)


class Eliminator:
    """Quantifier elimination with memoized pre-images and a height ledger."""

    def __init__(self, alphabet: Alphabet, mode: str = BASIC, *, class_cap: int = DEFAULT_CLASS_CAP,
                 measure: bool = True, measure_cap: int = 400, dnf_cap: int = 20_000):
        self.alphabet = alphabet
        self.mode = mode
        self.class_cap = class_cap
        self.measure = measure
        self.measure_cap = measure_cap
        self.dnf_cap = dnf_cap
        self.ledger = HeightLedger()
        self._pre_cache: dict = {}
        self._height_cache: dict = {}
        self._regex_cache: dict = {}

    # -- bookkeeping
    def height(self, d: Dfa):
        if d in self._height_cache:
            return self._height_cache[d]
        if d.num_states > self.measure_cap:
            h = "capped"
        else:
            h = pt_height_dfa(d)
            if h is None:
                h = "not PT"
        self._height_cache[d] = h
        return h

    def _record(self, kind, detail, inputs, rule, bound, d: Dfa, local=None) -> _Lang:
        node = len(self.ledger.records)
        measured = self.height(d) if self.measure else None
        self.ledger.records.append(LedgerRecord(node, kind, detail, tuple(inputs), rule, bound,
                                                local, measured))
        return _Lang(d, bound, node)

    @staticmethod
    def _max(bounds):
        bounds = list(bounds)
        if any(b is None for b in bounds):
            return None
        return max(bounds, default=0)

    # -- atoms
    def const_lang(self, w: str, rel: str) -> tuple[Dfa, int]:
        """{x : w rel x} with its height bound."""
        A = self.alphabet
        if rel == "<=":
            return fa.up_word_dfa(w, A), len(w)
        if rel == "<":
            return strict_up(fa.word_dfa(w, A)), len(w) + 1
        if rel == ">":
            return strict_down(fa.word_dfa(w, A)), len(w)
        if rel == ">=":
            return fa.down_word_dfa(w, A), len(w) + 1
        if rel == "=":
            return fa.word_dfa(w, A), len(w) + 1
        if rel == "#":
            return incomparability_singleton(w, A), len(w)
        raise ValueError(rel)

    def regex_lang(self, text: str) -> Dfa:
        if text not in self._regex_cache:
            self._regex_cache[text] = regex_to_dfa(text, self.alphabet)
        return self._regex_cache[text]

    def _atom_to_inlang(self, node, var: Optional[str] = None):
        """Rel/Member atom over one variable (or none) -> InLang or Bool."""
        if isinstance(node, Member):
            if isinstance(node.term, Const):
                return Bool(self.regex_lang(node.regex).accepts(node.term.word))
            d = self.regex_lang(node.regex)
            rec = self._record("regex", str(node), (), "regular predicate (no PT bound)", None, d)
            return InLang(node.term.name, d, None, f"/{node.regex}/#{rec.node}", rec.node)
        l, r = node.left, node.right
        if isinstance(l, Const) and isinstance(r, Const):
            return Bool(_RELATION_CODE[compare(l.word, r.word).name] in _HOLDS[node.op])
        if isinstance(l, Var) and isinstance(r, Var):
            if l.name == r.name:
                return Bool("=" in _HOLDS[node.op])
            raise AssertionError("two-variable atom reached the one-variable path")
        if isinstance(l, Var):
            w, op, v = r.word, FLIP[node.op], l.name
        else:
            w, op, v = l.word, node.op, r.name
        d, b = self.const_lang(w, op)
        rec = self._record("atom", str(node), (), _ATOM_RULES[op], b, d)
        return InLang(v, d, b, f"#{rec.node}", rec.node)

    # -- main fold
    def lang(self, node, x: str) -> _Lang:
        """Language of the values of x satisfying node (free variables ⊆ {x})."""
        A = self.alphabet
        if isinstance(node, Bool):
            d = fa.universal(A) if node.value else fa.empty(A)
            return _Lang(d, 0, -1)
        if isinstance(node, InLang):
            return _Lang(node.dfa, node.bound, node.node)
        if isinstance(node, (Rel, Member)):
            atom = self._atom_to_inlang(node)
            return self.lang(atom, x)
        if isinstance(node, Not):
            inner = self.lang(node.arg, x)
            return self._record("not", str(node), _ids(inner), "h(¬L) = h(L)", inner.bound,
                                fa.complement(inner.dfa), local=self._local(inner))
        if isinstance(node, (And, Or)):
            parts = [self.lang(a, x) for a in node.args]
            op = fa.intersect if isinstance(node, And) else fa.union
            d = parts[0].dfa
            for p in parts[1:]:
                d = op(d, p.dfa)
            kind = "and" if isinstance(node, And) else "or"
            return self._record(kind, str(node), _ids(*parts), "max of inputs",
                                self._max(p.bound for p in parts), d,
                                local=self._max_local(parts))
        if isinstance(node, Implies):
            return self.lang(Or((Not(node.left), node.right)), x)
        if isinstance(node, Iff):
            a, b = self.lang(node.left, x), self.lang(node.right, x)
            d = fa.complement(fa.symmetric_difference(a.dfa, b.dfa))
            return self._record("iff", str(node), _ids(a, b), "max of inputs",
                                self._max((a.bound, b.bound)), d, local=self._max_local((a, b)))
        if isinstance(node, Forall):
            return self.lang(Not(Exists(node.var, Not(node.body))), x)
        if isinstance(node, Exists):
            if x not in free_vars(node):
                inner = self.lang(node.body, node.var)
                d = fa.empty(A) if fa.is_empty(inner.dfa) else fa.universal(A)
                return self._record("sentence", str(node), _ids(inner), "constant truth value",
                                    0, d, local=0)
            return self._exists(node, x)
        raise TypeError(node)

    def _local(self, lang: _Lang):
        h = self.height(lang.dfa) if self.measure else None
        return h if isinstance(h, int) else None

    def _max_local(self, parts):
        hs = [self._local(p) for p in parts]
        return None if any(h is None for h in hs) else max(hs, default=0)

    def _abstract(self, node, x: str, y: str):
        """Replace quantified subformulas and one-variable atoms by InLang/Bool."""
        if isinstance(node, (Exists, Forall)):
            fv = free_vars(node)
            if not fv:
                sub = self.lang(node, x)
                return Bool(not fa.is_empty(sub.dfa))
            (z,) = tuple(fv)
            sub = self.lang(node, z)
            return InLang(z, sub.dfa, sub.bound, f"#{sub.node}", sub.node)
        if isinstance(node, Rel):
            if isinstance(node.left, Var) and isinstance(node.right, Var) and node.left != node.right:
                # orient as x R y
                return node if node.left.name == x else Rel(FLIP[node.op], node.right, node.left)
            return self._atom_to_inlang(node)
        if isinstance(node, Member):
            return self._atom_to_inlang(node)
        if isinstance(node, (InLang, Bool)):
            return node
        if isinstance(node, Not):
            return Not(self._abstract(node.arg, x, y))
        if isinstance(node, (And, Or)):
            return type(node)(tuple(self._abstract(a, x, y) for a in node.args))
        if isinstance(node, Implies):
            return Implies(self._abstract(node.left, x, y), self._abstract(node.right, x, y))
        if isinstance(node, Iff):
            return Iff(self._abstract(node.left, x, y), self._abstract(node.right, x, y))
        raise TypeError(node)

    def _dnf(self, node) -> list[tuple]:
        """DNF of an NNF matrix: list of conjuncts (frozenset of literals)."""
        if isinstance(node, Bool):
            return [frozenset()] if node.value else []
        if isinstance(node, Or):
            out = []
            for a in node.args:
                out.extend(self._dnf(a))
            return list(dict.fromkeys(out))
        if isinstance(node, And):
            acc = [frozenset()]
            for a in node.args:
                parts = self._dnf(a)
                acc = list(dict.fromkeys(c | p for c in acc for p in parts))
                if len(acc) > self.dnf_cap:
                    raise CapExceeded(f"DNF has more than {self.dnf_cap} conjuncts",
                                      cap=self.dnf_cap, reached=len(acc))
            return acc
        return [frozenset([node])]

    def _literal_lang(self, lit) -> tuple[str, _Lang]:
        if isinstance(lit, Not):
            inner = lit.arg
            return inner.var, _Lang(fa.complement(inner.dfa), inner.bound, inner.node)
        return lit.var, _Lang(lit.dfa, lit.bound, lit.node)

    def preimage(self, rel: str, ly: _Lang) -> _Lang:
        key = (rel, ly.dfa)
        if key in self._pre_cache:
            return self._pre_cache[key]
        k = self.alphabet.k
        d = ly.dfa
        if rel == "=":
            out = d
        elif rel == "<":
            out = strict_down(d)
        elif rel == ">":
            out = strict_up(d)
        else:
            h = pt_height_dfa(d)
            if h is None:
                raise UnsupportedConstruct(
                    "incomparability pre-image of a language that is not piecewise testable")
            out = I_of_pt(d, h, cap=self.class_cap)
        if ly.bound is None:
            rule, bound = "no bound (regular predicate)", None
        else:
            rule, bound = bound_rule(rel, k, ly.bound)
        local = None
        h_in = self._local(ly)
        if h_in is not None:
            local = bound_rule(rel, k, h_in)[1]
        src = f"#{ly.node}" if ly.node >= 0 else "A*"
        rec = self._record(f"pre{rel}", f"{{x : exists y in {src}, x {rel} y}}", _ids(ly),
                           rule, bound, out, local=local)
        self._pre_cache[key] = rec
        return rec

    def _exists(self, node: Exists, x: str) -> _Lang:
        A = self.alphabet
        y = node.var
        matrix = push_negations(self._abstract(node.body, x, y))
        # negated relation atoms are gone; remaining Not wrap InLang only
        conjuncts = self._dnf(matrix)
        result = fa.empty(A)
        bounds = []
        used: list[_Lang] = []
        for conj in conjuncts:
            xs, ys, rels = [], [], set()
            for lit in conj:
                if isinstance(lit, Rel):
                    rels.add(lit.op)
                    continue
                var, part = self._literal_lang(lit)
                (xs if var == x else ys).append(part)
            if len(rels) > 1:
                continue  # the exclusive relations cannot hold together
            lx = fa.intersect_all((p.dfa for p in xs), A)
            ly_dfa = fa.intersect_all((p.dfa for p in ys), A)
            bx = self._max(p.bound for p in xs)
            by = self._max(p.bound for p in ys)
            if fa.is_empty(ly_dfa):
                continue
            used.extend(xs)
            if not rels:
                used.extend(ys)
                part_dfa, pb = lx, bx
            else:
                (rel,) = rels
                if ys:
                    ly = self._record("conj-y", f"y-constraints of exists {y}", _ids(*ys),
                                      "max of inputs", by, ly_dfa)
                else:
                    ly = _Lang(ly_dfa, 0, -1)
                pre = self.preimage(rel, ly)
                used.append(pre)
                part_dfa = fa.intersect(lx, pre.dfa)
                pb = self._max((bx, pre.bound))
            result = fa.union(result, part_dfa)
            bounds.append(pb)
        return self._record("exists", str(node), _ids(*used), "max over disjuncts",
                            self._max(bounds), result)


def _ids(*langs) -> tuple:
    """Distinct ledger record ids of the given languages, in order."""
    return tuple(dict.fromkeys(l.node for l in langs if l.node >= 0))


_ATOM_RULES = {
    "<=": "h(↑w) = |w|", "<": "|w|+1", ">": "finite: |w|", ">=": "finite: |w|+1",
    "=": "finite: |w|+1", "#": "h(I(w)) = |w|",
}


# --------------------------------------------------------------- front ends

def _pick_var(formula: Formula) -> str:
    fv = formula.free
    if len(fv) > 1:
        raise PreconditionError(f"formula has free variables {', '.join(sorted(fv))}")
    if fv:
        return next(iter(fv))
    used = all_vars(formula.root)
    return next(iter(used)) if used else "x"


def eliminate(formula: Formula, **kw) -> Dfa:
    """Canonical DFA of the values of the free variable satisfying the formula."""
    el = Eliminator(formula.alphabet, formula.mode, measure=kw.pop("measure", False), **kw)
    return el.lang(formula.root, _pick_var(formula)).dfa


def eliminate_with_ledger(formula: Formula, **kw) -> tuple[Dfa, HeightLedger]:
    el = Eliminator(formula.alphabet, formula.mode, **kw)
    out = el.lang(formula.root, _pick_var(formula))
    return out.dfa, el.ledger


def decide(formula: Formula, **kw) -> bool:
    """Truth value of a sentence over all words."""
    if formula.free:
        raise PreconditionError(f"not a sentence: free variables {', '.join(sorted(formula.free))}")
    d = eliminate(formula, **kw)
    return fa.is_universal(d)


def height_ledger(formula: Formula, **kw) -> HeightLedger:
    if formula.mode != BASIC:
        raise PreconditionError("height ledgers are defined for basic-mode formulas")
    return eliminate_with_ledger(formula, **kw)[1]
