"""Dirac-ket expressions such as ``(|100> + |010> + |001>)/sqrt(3)``.

Supported surface:

* kets ``|0112>`` (one digit per mode) or ``|0,11,2>`` (comma separated,
  ``|11,>`` for a single mode); ``⟩`` may replace ``>``
* numbers ``0.5``, ``2e-3``, imaginary literals ``2i`` / ``0.5j``, ``i``, ``pi``
* ``sqrt(.)`` and ``exp(.)``, ``+ - * /``, parentheses, implicit multiplication
* an optional first line ``dims: d1 d2 ...``; ``#`` starts a comment

Coefficients are evaluated to double precision while parsing.  Terms with
equal index tuples are merged and exact cancellations dropped.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .tensor_core import StateTensor

STRICT_NORM_TOL = 1e-9


class KetError(ValueError):
    """Any failure to turn text into a state."""


class KetSyntaxError(KetError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class ArityError(KetError):
    pass


class IndexRangeError(KetError):
    pass


class ZeroStateError(KetError):
    pass


class NormalizationError(KetError):
    pass


@dataclass(frozen=True)
class KetExpr:
    terms: tuple  # ((coefficient, indices), ...) sorted by indices
    dims: tuple

    @property
    def n_modes(self) -> int:
        return len(self.dims)


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<ket>\|[^|>⟩]*[>⟩])
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?[ij]?)
  | (?P<name>[A-Za-z_]+)
  | (?P<op>[-+*/()^])
  | (?P<bad>.)
    """,
    re.VERBOSE,
)

_FUNCS = {"sqrt": cmath.sqrt, "exp": cmath.exp}
_CONSTS = {"i": 1j, "j": 1j, "pi": math.pi}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.split("\n"))


def _tokenize(text: str, line0: int) -> list[_Tok]:
    toks = []
    line, line_start = line0, 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        s = m.group()
        col = m.start() - line_start + 1
        if kind == "ws":
            nl = s.count("\n")
            if nl:
                line += nl
                line_start = m.start() + s.rindex("\n") + 1
            continue
        if kind == "bad":
            raise KetSyntaxError(f"unexpected character {s!r}", line, col)
        toks.append(_Tok(kind, s, line, col))
    return toks


def _ket_indices(tok: _Tok) -> tuple[int, ...]:
    body = tok.text[1:-1].replace(" ", "")
    if not body:
        raise KetSyntaxError("empty ket", tok.line, tok.col)
    if "," in body:
        parts = body.split(",")
        if len(parts) > 1 and parts[-1] == "":
            parts.pop()
        if not all(p.isdigit() for p in parts):
            raise KetSyntaxError(f"bad ket {tok.text!r}", tok.line, tok.col)
        return tuple(int(p) for p in parts)
    if not body.isdigit():
        raise KetSyntaxError(f"bad ket {tok.text!r}", tok.line, tok.col)
    return tuple(int(c) for c in body)


class _Parser:
    """Recursive descent over scalars and ket sums (dict indices -> coefficient)."""

    def __init__(self, toks: list[_Tok], eof: tuple[int, int]):
        self.toks = toks
        self.pos = 0
        self.eof = eof
        self.arity: Optional[int] = None

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        line, col = (tok.line, tok.col) if tok else self.eof
        raise KetSyntaxError(msg, line, col)

    def take(self, text: Optional[str] = None) -> _Tok:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input" + (f", expected {text!r}" if text else ""))
        if text is not None and tok.text != text:
            self.error(f"expected {text!r}, found {tok.text!r}")
        self.pos += 1
        return tok

    def parse(self):
        if self.peek() is None:
            self.error("empty expression")
        val = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek().text!r}")
        if not isinstance(val, dict):
            self.error("expression contains no ket")
        return val

    def expr(self):
        val = self.term()
        while self.peek() is not None and self.peek().text in "+-":
            op = self.take()
            rhs = self.term()
            val = self.combine(val, rhs, op)
        return val

    def term(self):
        val = self.unary()
        while True:
            tok = self.peek()
            if tok is None:
                return val
            if tok.text in ("*", "/"):
                self.take()
                rhs = self.unary()
                val = self.multiply(val, rhs, tok, divide=tok.text == "/")
            elif tok.kind in ("num", "name", "ket") or tok.text == "(":
                rhs = self.power()
                val = self.multiply(val, rhs, tok)
            else:
                return val

    def unary(self):
        tok = self.peek()
        if tok is not None and tok.text in "+-" and tok.kind == "op":
            self.take()
            val = self.unary()
            return val if tok.text == "+" else self.scale(val, -1.0)
        return self.power()

    def power(self):
        base = self.primary()
        tok = self.peek()
        if tok is not None and tok.text == "^":
            self.take()
            exp = self.unary()
            if isinstance(base, dict) or isinstance(exp, dict):
                self.error("powers of kets are not supported", tok)
            return base**exp
        return base

    def primary(self):
        tok = self.take()
        if tok.kind == "num":
            s = tok.text
            if s[-1] in "ij":
                return complex(0.0, float(s[:-1]))
            return complex(float(s))
        if tok.kind == "ket":
            idx = _ket_indices(tok)
            if self.arity is None:
                self.arity = len(idx)
            elif len(idx) != self.arity:
                raise ArityError(
                    f"line {tok.line}, column {tok.col}: ket {tok.text} has "
                    f"{len(idx)} modes, earlier kets have {self.arity}"
                )
            return {idx: 1.0 + 0j}
        if tok.kind == "name":
            name = tok.text.lower()
            if name in _FUNCS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                if isinstance(arg, dict):
                    self.error(f"{name}() of a ket", tok)
                if name == "sqrt" and (arg.imag != 0 or arg.real < 0):
                    self.error("sqrt() needs a nonnegative real argument", tok)
                return complex(_FUNCS[name](arg))
            if name in _CONSTS:
                return complex(_CONSTS[name])
            self.error(f"unknown name {tok.text!r}", tok)
        if tok.text == "(":
            val = self.expr()
            self.take(")")
            return val
        self.error(f"unexpected {tok.text!r}", tok)

    def scale(self, val, c):
        if isinstance(val, dict):
            return {k: v * c for k, v in val.items()}
        return val * c

    def multiply(self, a, b, tok, divide=False):
        if divide:
            if isinstance(b, dict):
                self.error("cannot divide by a ket", tok)
            if b == 0:
                self.error("division by zero", tok)
            return self.scale(a, 1.0 / b)
        if isinstance(a, dict) and isinstance(b, dict):
            self.error("product of two kets; write tensor products as one ket", tok)
        if isinstance(a, dict):
            return self.scale(a, b)
        return self.scale(b, a)

    def combine(self, a, b, tok):
        if isinstance(a, dict) != isinstance(b, dict):
            self.error("cannot add a number and a ket", tok)
        if tok.text == "-":
            b = self.scale(b, -1.0)
        if not isinstance(a, dict):
            return a + b
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0.0) + v
        return out


def _split_header(text: str) -> tuple[Optional[tuple[int, ...]], str, int]:
    lines = text.split("\n")
    for n, line in enumerate(lines):
        s = line.strip()
        if not s:
            continue
        if s.lower().startswith("dims:"):
            parts = s[5:].split()
            if not parts or not all(p.isdigit() and int(p) > 0 for p in parts):
                raise KetSyntaxError(f"bad dims header {s!r}", n + 1, 1)
            return tuple(int(p) for p in parts), "\n".join(lines[n + 1 :]), n + 2
        break
    return None, text, 1


def parse(text: str) -> KetExpr:
    """Parse ket text into a :class:`KetExpr`."""
    if not text or not text.strip():
        raise KetSyntaxError("empty input", 1, 1)
    text = _strip_comments(text)
    dims, body, line0 = _split_header(text)
    toks = _tokenize(body, line0)
    last = body.rstrip().split("\n")
    eof = (line0 + len(last) - 1, len(last[-1]) + 1)
    p = _Parser(toks, eof)
    kets = p.parse()
    nonzero = {k: v for k, v in kets.items() if v != 0}
    if not nonzero:
        raise ZeroStateError("state is identically zero")
    arity = p.arity
    if dims is None:
        dims = tuple(max(k[m] for k in nonzero) + 1 for m in range(arity))
    elif len(dims) != arity:
        raise ArityError(f"dims header lists {len(dims)} modes, kets have {arity}")
    for k in nonzero:
        for m, (i, d) in enumerate(zip(k, dims)):
            if i >= d:
                raise IndexRangeError(f"index {i} in mode {m} of |{','.join(map(str, k))}> exceeds dimension {d}")
    terms = tuple((nonzero[k], k) for k in sorted(nonzero))
    return KetExpr(terms=terms, dims=tuple(dims))


def to_tensor(e: KetExpr, normalize: str = "auto") -> tuple[StateTensor, float]:
    """Dense tensor of a parsed state and the scale factor applied to reach unit norm.

    ``normalize="auto"`` rescales; ``"strict"`` requires the norm to be 1
    within ``1e-9`` and never rescales (scale is 1.0).
    """
    if normalize not in ("auto", "strict"):
        raise ValueError(f"unknown normalize policy {normalize!r}")
    amps = np.zeros(e.dims, dtype=complex)
    for c, idx in e.terms:
        amps[idx] += c
    nrm = float(np.linalg.norm(amps))
    if nrm == 0:
        raise ZeroStateError("state is identically zero")
    if normalize == "strict":
        if abs(nrm - 1.0) > STRICT_NORM_TOL:
            raise NormalizationError(f"state norm is {nrm!r}, expected 1")
        return StateTensor.from_amplitudes(amps), 1.0
    scale = 1.0 / nrm
    return StateTensor.from_amplitudes(amps * scale), scale


def parse_state(text: str, normalize: str = "auto") -> StateTensor:
    return to_tensor(parse(text), normalize)[0]


def _fmt_coeff(c: complex) -> str:
    re_, im = float(c.real), float(c.imag)
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"({re_!r}{sign}{abs(im)!r}i)"


def _fmt_ket(idx: Sequence[int], compact: bool) -> str:
    if compact:
        return "|" + "".join(str(i) for i in idx) + ">"
    if len(idx) == 1:
        return f"|{idx[0]},>"
    return "|" + ",".join(str(i) for i in idx) + ">"


def render(e: KetExpr, header: bool = True) -> str:
    """Text that :func:`parse` maps back to the same terms and dims."""
    compact = all(d <= 10 for d in e.dims)
    body = " +\n".join(f"{_fmt_coeff(c)}*{_fmt_ket(idx, compact)}" for c, idx in e.terms)
    if header:
        return "dims: " + " ".join(map(str, e.dims)) + "\n" + body + "\n"
    return body + "\n"


def from_tensor(t: StateTensor, cutoff: float = 0.0) -> KetExpr:
    """Ket expression of the state stored in ``t`` (entries above ``cutoff``)."""
    amps = t.amplitudes
    terms = tuple(
        (complex(amps[idx]), tuple(int(i) for i in idx))
        for idx in np.ndindex(*t.dims)
        if abs(amps[idx]) > cutoff
    )
    if not terms:
        raise ZeroStateError("state is identically zero")
    return KetExpr(terms=terms, dims=tuple(t.dims))
