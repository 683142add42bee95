"""Built-in verification catalog.

Deterministic case lists over the types A1, A2, B2, G2 with spectral
parameters restricted to integer powers of q (exponents from {0, +-1, +-2, 3,
4}) and at most three prefundamental factors of mixed signs, so every report
is reproducible byte for byte.  The case counts are sized so the full
relation suites stay within their runtime budgets at order 20.
"""

from __future__ import annotations

from .cartan import CartanDatum, build_cartan
from .lweight import LWeight, prefundamental
from .scalars import Scalars

CATALOG_TYPES = (("A", 1), ("A", 2), ("B", 2), ("G", 2))


def cartan_for(label: str, rank: int, ctx: Scalars | None = None) -> CartanDatum:
    return build_cartan(ctx if ctx is not None else Scalars(), label, rank)


def _psi(cd: CartanDatum, node: int, r: int, e: int = 1) -> LWeight:
    return prefundamental(cd, node, cd.ctx.qpow(r)) ** e


def mixed_cases(cd: CartanDatum) -> list:
    """L-weights with mixed factor signs for the GKLO and ratio suites.

    The doubly-laced and triply-laced types skip the two-factor case (its
    coverage is inside the triple) to keep the order-20 suites inside their
    runtime budgets.
    """
    last = cd.rank
    cases = [
        _psi(cd, 1, 0),                                        # single positive at q^0
        _psi(cd, 1, 1, -1),                                    # single negative
        _psi(cd, 1, 1) * _psi(cd, last, 2, -1),                # mixed pair
        _psi(cd, 1, -1) * _psi(cd, 1, 3) * _psi(cd, last, -2, -1),  # mixed triple
    ]
    if cd.lacing > 1:
        del cases[2]
    return cases


def polynomial_cases(cd: CartanDatum) -> list:
    """Polynomial l-weights for the fundamental T-eigenvalue identities."""
    last = cd.rank
    return [
        _psi(cd, 1, 0),
        _psi(cd, last, 1),
        _psi(cd, 1, -1) * _psi(cd, last, 2),
        _psi(cd, 1, 3) * _psi(cd, 1, 4) * _psi(cd, last, -2),
    ]


def truncation_pairs(cd: CartanDatum) -> list:
    """(ms, ns) inputs for the polynomiality-and-degree suite."""
    last = cd.rank
    return [
        ([], [_psi(cd, 1, 0)]),
        ([_psi(cd, 1, 1)], []),
        ([_psi(cd, 1, 1)], [_psi(cd, last, 2)]),
        ([], [_psi(cd, 1, -1) * _psi(cd, last, 2)]),
        ([_psi(cd, 1, 3) * _psi(cd, last, -2)], [_psi(cd, 1, 4)]),
    ]
