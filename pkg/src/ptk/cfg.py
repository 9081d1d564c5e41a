"""Context-free grammars in the line format ``S -> a S b | ab | _``.

Symbols on a right-hand side are whitespace-separated tokens; a token that is
a declared nonterminal (a left-hand side somewhere) is a nonterminal, any other
token is read as a string of terminal letters. ``_`` denotes ε. The first
left-hand side is the start symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .words import Alphabet


@dataclass(frozen=True)
class Cfg:
    alphabet: Alphabet
    nonterminals: tuple[str, ...]
    productions: tuple[tuple[str, tuple[str, ...]], ...]  # (lhs, rhs symbols)
    start: str

    def __post_init__(self):
        nts = set(self.nonterminals)
        if self.start not in nts:
            raise ParseError(f"start symbol {self.start!r} is not a nonterminal")
        for lhs, rhs in self.productions:
            if lhs not in nts:
                raise ParseError(f"undeclared nonterminal {lhs!r}")
            for sym in rhs:
                if sym not in nts and sym not in self.alphabet:
                    raise ParseError(f"symbol {sym!r} is neither a nonterminal nor a letter")

    @property
    def N(self) -> int:
        return len(self.nonterminals)

    @property
    def ell(self) -> int:
        return max((len(rhs) for _, rhs in self.productions), default=0)

    def rules(self, nt: str) -> list[tuple[str, ...]]:
        return [rhs for lhs, rhs in self.productions if lhs == nt]


def parse_cfg(text: str, alphabet: Alphabet) -> Cfg:
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise ParseError(f"line {lineno}: expected 'X -> ...'")
        lhs, rhs = line.split("->", 1)
        lhs = lhs.strip()
        if not lhs or " " in lhs:
            raise ParseError(f"line {lineno}: bad left-hand side {lhs!r}")
        if lhs in alphabet:
            raise ParseError(f"line {lineno}: nonterminal {lhs!r} clashes with a letter")
        raw.append((lhs, [alt.split() for alt in rhs.split("|")]))
    if not raw:
        raise ParseError("empty grammar")
    nts = tuple(dict.fromkeys(lhs for lhs, _ in raw))
    ntset = set(nts)
    prods = []
    for lhs, alts in raw:
        for alt in alts:
            syms: list[str] = []
            for tok in alt:
                if tok == "_":
                    continue
                if tok in ntset:
                    syms.append(tok)
                else:
                    for c in tok:
                        if c not in alphabet:
                            raise ParseError(f"unknown symbol {tok!r} in rule for {lhs}")
                        syms.append(c)
            prods.append((lhs, tuple(syms)))
    return Cfg(alphabet, nts, tuple(prods), nts[0])
