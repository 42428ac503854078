"""Memoized evaluator for the five-index family of q,t-polynomials.

The family F(n, k; p | d, l) is defined on the admissible domain
k, l, d, p >= 0, n >= k + l, n + p >= d by

  * a closed form at k = n,
  * an iterated recursion for 1 <= k < n whose recursive calls strictly
    decrease n,
  * delta initial conditions at n = 0 and k = 0.

Summands whose recursive indices leave the domain (or whose Gaussian
binomials vanish by convention) contribute zero; only top-level queries
outside the domain raise DomainError.  The one-step recursion does not
obviously terminate, so it is exposed only as a residual checker.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass

from .errors import DomainError, MemoLimitExceeded
from .qtpoly import QTPolynomial, q_power_binom2, qbinom, t_power

MEMO_LIMIT_ENV = "DELTA_MEMO_LIMIT"

_memo: dict[tuple[int, int, int, int, int], QTPolynomial] = {}
_memo_lock = threading.Lock()


@dataclass(frozen=True)
class FIndex:
    """Index (n, k; p | d, l) of the recursion family."""

    n: int
    k: int
    p: int
    d: int
    l: int

    def is_admissible(self) -> bool:
        if min(self.n, self.k, self.p, self.d, self.l) < 0:
            return False
        return self.n >= self.k + self.l and self.n + self.p >= self.d

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.k, self.p, self.d, self.l)


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def memo_size() -> int:
    with _memo_lock:
        return len(_memo)


def _memo_store(key, value):
    limit = os.environ.get(MEMO_LIMIT_ENV)
    with _memo_lock:
        if limit is not None and len(_memo) >= int(limit) and key not in _memo:
            raise MemoLimitExceeded(
                f"memo table reached {MEMO_LIMIT_ENV}={limit} entries"
            )
        _memo[key] = value


def f_base(n: int, p: int, d: int, l: int) -> QTPolynomial:
    """Closed form at k = n: delta_{l,0} q^C(n-d,2) [n, n-d]_q [n+p-1, p]_q."""
    if l != 0:
        return QTPolynomial.zero()
    c1 = qbinom(n, n - d)
    if c1.is_zero():
        return QTPolynomial.zero()
    nd = n - d
    return QTPolynomial.monomial(nd * (nd - 1) // 2, 0) * c1 * qbinom(n + p - 1, p)


def _f(n: int, k: int, p: int, d: int, l: int) -> QTPolynomial:
    """Total version of the evaluator: zero outside the admissible domain."""
    if min(n, k, p, d, l) < 0:
        return QTPolynomial.zero()
    if n == 0:
        return QTPolynomial.one() if (k, p, d, l) == (0, 0, 0, 0) else QTPolynomial.zero()
    if k == 0:
        return QTPolynomial.zero()
    if n < k + l or n + p < d:
        return QTPolynomial.zero()
    key = (n, k, p, d, l)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    if k == n:
        value = f_base(n, p, d, l)
    else:
        value = QTPolynomial.zero()
        for j in range(p + 1):
            cj = qbinom(k + j - 1, j)
            if cj.is_zero():
                continue
            for s in range(k + 1):
                cs = qbinom(k, s)
                if cs.is_zero():
                    continue
                prefix = (
                    q_power_binom2(s) * cs * cj * t_power((n - k - l) + (p - j))
                )
                inner = QTPolynomial.zero()
                for u in range(n - k - l + 1):
                    cu = qbinom(s + j + u - 1, u)
                    if cu.is_zero():
                        continue
                    for v in range(s + j + 1):
                        cv = qbinom(s + j, v)
                        if cv.is_zero():
                            continue
                        sub = _f(n - k, u + v, p - j, d - k + s, l - v)
                        if sub.is_zero():
                            continue
                        inner = inner + q_power_binom2(v) * cv * cu * sub
                if not inner.is_zero():
                    value = value + prefix * inner
    _memo_store(key, value)
    return value


def f_eval(n: int, k: int, p: int, d: int, l: int) -> QTPolynomial:
    """Evaluate the family at a top-level index.

    Raises DomainError for indices outside the admissible domain that are
    not covered by the initial conditions (n = 0 or k = 0).
    """
    if min(n, k, p, d, l) < 0:
        raise DomainError(f"negative index ({n},{k},{p},{d},{l})")
    if n > 0 and k > 0 and (n < k + l or n + p < d):
        raise DomainError(
            f"index ({n},{k},{p},{d},{l}) violates n >= k+l and n+p >= d"
        )
    return _f(n, k, p, d, l)


def f_eval_index(idx: FIndex) -> QTPolynomial:
    return f_eval(*idx.as_tuple())


def f_onestep_residual(n: int, k: int, p: int, d: int, l: int) -> QTPolynomial:
    """Left minus right side of the one-step recursion; zero when it holds.

    Only meaningful for admissible indices with 1 <= k < n.
    """
    if not (1 <= k < n):
        raise DomainError("one-step recursion applies for 1 <= k < n")
    lhs = f_eval(n, k, p, d, l)
    rhs = QTPolynomial.zero()
    for j in range(p + 1):
        cj = qbinom(k + j - 1, j)
        if cj.is_zero():
            continue
        for s in range(k + 1):
            cs = qbinom(k, s)
            if cs.is_zero():
                continue
            sub = _f(n + p - d, s + j, n - l - k, n + p - d - l, n - d - s)
            if sub.is_zero():
                continue
            rhs = rhs + q_power_binom2(s) * cs * cj * sub
    rhs = t_power(n - l - k) * rhs
    return lhs - rhs


def schroeder_sum(n: int, l: int, p: int, d: int) -> QTPolynomial:
    """Sum of the family over k = 1..n-l, the full Schroeder-case polynomial."""
    if n < l + 1 or n < d or min(n, l, p, d) < 0:
        raise DomainError("schroeder_sum needs n >= l+1, n >= d and non-negative indices")
    total = QTPolynomial.zero()
    for k in range(1, n - l + 1):
        total = total + f_eval(n, k, p, d, l)
    return total
