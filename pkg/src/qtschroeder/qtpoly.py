"""Exact sparse polynomial arithmetic in the two variables q and t.

A polynomial is a mapping from exponent pairs (q_exp, t_exp) to nonzero
integer coefficients.  Zero coefficients are never stored, so two
polynomials are equal iff their term maps are equal, and the zero
polynomial has an empty term map.  Coefficients are Python ints, hence
arbitrary precision.

Also provides the q-analogue primitives used by every recursion in the
package: Gaussian binomials [n choose k]_q and the monomial q^C(s,2).
"""

from __future__ import annotations

import json
import threading
from typing import Iterable, Mapping


class QTPolynomial:
    """Immutable sparse polynomial in q, t with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        if terms:
            for (qe, te), c in terms.items():
                if c == 0:
                    continue
                if qe < 0 or te < 0:
                    raise ValueError("negative exponent in QTPolynomial")
                clean[(int(qe), int(te))] = int(c)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("QTPolynomial is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "QTPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "QTPolynomial":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, q_exp: int, t_exp: int, coeff: int = 1) -> "QTPolynomial":
        return cls({(q_exp, t_exp): coeff})

    @classmethod
    def q(cls) -> "QTPolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> "QTPolynomial":
        return cls({(0, 1): 1})

    # -- inspection --------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        """Copy of the term map (canonical: no zero coefficients)."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, q_exp: int, t_exp: int) -> int:
        return self._terms.get((q_exp, t_exp), 0)

    def evaluate(self, q_val: int, t_val: int) -> int:
        """Integer specialization, e.g. evaluate(1, 1) counts objects."""
        return sum(c * q_val**qe * t_val**te for (qe, te), c in self._terms.items())

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "QTPolynomial") -> "QTPolynomial":
        if not isinstance(other, QTPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QTPolynomial(out)

    def __neg__(self) -> "QTPolynomial":
        return QTPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "QTPolynomial") -> "QTPolynomial":
        if not isinstance(other, QTPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QTPolynomial({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, QTPolynomial):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (q1, t1), c1 in self._terms.items():
            for (q2, t2), c2 in other._terms.items():
                e = (q1 + q2, t1 + t2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return QTPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QTPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = QTPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, QTPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- rendering and serialization ----------------------------------

    def __repr__(self) -> str:
        return f"QTPolynomial({self.pretty()!r})"

    def pretty(self) -> str:
        """Human-readable form like 'q^2*t + 3*q', exponent-sorted."""
        if not self._terms:
            return "0"
        parts = []
        for (qe, te) in sorted(self._terms, key=lambda e: (-e[0] - e[1], -e[0])):
            c = self._terms[(qe, te)]
            factors = []
            if qe == 1:
                factors.append("q")
            elif qe > 1:
                factors.append(f"q^{qe}")
            if te == 1:
                factors.append("t")
            elif te > 1:
                factors.append(f"t^{te}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def to_obj(self) -> list[list]:
        """JSON object form: [[q_exp, t_exp, coeff-as-decimal-string], ...].

        Triples are sorted lexicographically by (q_exp, t_exp) so the
        encoding is canonical and round-trips bit-exactly.
        """
        return [[qe, te, str(self._terms[(qe, te)])] for (qe, te) in sorted(self._terms)]

    def to_json(self) -> str:
        return json.dumps(self.to_obj())

    @classmethod
    def from_obj(cls, obj: Iterable) -> "QTPolynomial":
        terms: dict[tuple[int, int], int] = {}
        for qe, te, c in obj:
            e = (int(qe), int(te))
            if e in terms:
                raise ValueError(f"duplicate exponent pair {e}")
            terms[e] = int(c)
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "QTPolynomial":
        return cls.from_obj(json.loads(text))


ZERO = QTPolynomial.zero()
ONE = QTPolynomial.one()

_qbinom_cache: dict[tuple[int, int], QTPolynomial] = {}
_qbinom_lock = threading.Lock()


def qbinom(n: int, k: int) -> QTPolynomial:
    """Gaussian binomial [n choose k]_q as a polynomial in q only.

    Total on all integer arguments: 0 whenever k < 0 or n < k.  Computed
    by the q-Pascal recurrence, so no rational intermediates appear; the
    cache is guarded by a lock and safe under concurrent access.
    """
    if k < 0 or n < k:
        return ZERO
    if k == 0 or k == n:
        return ONE
    key = (n, k)
    with _qbinom_lock:
        hit = _qbinom_cache.get(key)
    if hit is not None:
        return hit
    # [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q
    value = qbinom(n - 1, k - 1) + QTPolynomial.monomial(k, 0) * qbinom(n - 1, k)
    with _qbinom_lock:
        _qbinom_cache[key] = value
    return value


def q_power_binom2(s: int) -> QTPolynomial:
    """The monomial q^C(s,2) = q^(s(s-1)/2) for s >= 0."""
    if s < 0:
        raise ValueError("q_power_binom2 needs s >= 0")
    return QTPolynomial.monomial(s * (s - 1) // 2, 0)


def t_power(e: int) -> QTPolynomial:
    return QTPolynomial.monomial(0, e)
