"""The C^1 transfer relation between edge polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from ..arith import FieldElem, UniPoly, nth_root, qq
from ..errors import InputError
from ..polygon import EdgePoly


def _elem(c):
    return c if isinstance(c, FieldElem) else qq(c)


def _real_roots_of(r, D):
    """Real solutions of b^D = r."""
    s = r.sign()
    if s == 0:
        return []
    if s > 0:
        b = nth_root(r, D)
        return [b, -b] if D % 2 == 0 else [b]
    if D % 2 == 0:
        return []
    return [-nth_root(-r, D)]


def scale_matches(P: UniPoly, Q: UniPoly):
    """All real (kappa, beta), kappa > 0, beta != 0, with P(z) = kappa*Q(beta*z)."""
    if P.is_zero() or Q.is_zero():
        raise InputError("zero polynomial")
    sp = [k for k, c in enumerate(P.coeffs) if c]
    sq = [k for k, c in enumerate(Q.coeffs) if c]
    if sp != sq:
        return []
    r = {k: _elem(P.coeffs[k]) / _elem(Q.coeffs[k]) for k in sp}
    k0, k1 = sp[0], sp[-1]
    if k0 == k1:
        # one monomial: beta free up to sign
        cands = [qq(1), qq(-1)] if k0 % 2 else [qq(1)]
    else:
        D = 0
        for k in sp[1:]:
            D = gcd(D, k - k0)
        # beta^D is fixed by any two support points; use the extremes
        ratio = (r[k1] / r[k0])
        e = (k1 - k0) // D
        # ratio = (beta^D)^e; solve for beta^D then for beta
        cands = []
        for w in _real_roots_of(ratio, e):
            cands.extend(_real_roots_of(w, D))
    out = []
    for b in cands:
        kappa = r[k0] / b ** k0 if k0 else r[k0]
        if kappa.sign() <= 0:
            continue
        if all(r[k] == kappa * b ** k for k in sp):
            out.append((kappa, b))
    return out


@dataclass(frozen=True)
class TransferResult:
    holds: bool
    kappa: Optional[FieldElem] = None  # e^ord
    beta: Optional[FieldElem] = None  # delta / e^(xi+1)
    e: Optional[float] = None
    delta: Optional[float] = None

    def __bool__(self):
        return self.holds


def c1_transfer_check(P: EdgePoly, Q: EdgePoly) -> TransferResult:
    """Whether P(z) = e^ord * Q(delta*z / e^(xi+1)) for some e > 0, delta != 0."""
    if Fraction(P.xi) != Fraction(Q.xi) or Fraction(P.ord) != Fraction(Q.ord):
        raise InputError("edge polynomials must share xi and ord")
    if P.xi <= 1:
        raise InputError("the transfer relation needs xi > 1")
    sols = scale_matches(P.poly, Q.poly)
    if not sols:
        return TransferResult(False)
    kappa, beta = sols[0]
    e = float(kappa) ** (1.0 / float(P.ord)) if P.ord else 1.0
    delta = float(beta) * e ** (float(P.xi) + 1)
    return TransferResult(True, kappa, beta, e, delta)
