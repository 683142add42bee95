"""Finite-type Cartan data and quantum Cartan matrices.

Node numbering is Bourbaki throughout, 1-based in the public API.  The
short/long orientation is pinned by the symmetrizer tables:

    A_r: d = (1,...,1)           D_r, E_6..E_8: d = (1,...,1)
    B_r: d = (2,...,2,1)         F_4: d = (2,2,1,1)
    C_r: d = (1,...,1,2)         G_2: d = (1,3)   (node 1 short)

so that c_ij = 2(a_i,a_j)/(a_i,a_i) and b_ij = d_i c_ij is symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidType, SingularMatrix
from .scalars import ParamField, Scalars, substitute_power

_DUAL_COXETER = {
    "A": lambda r: r + 1,
    "B": lambda r: 2 * r - 1,
    "C": lambda r: r + 1,
    "D": lambda r: 2 * r - 2,
    "E": lambda r: {6: 12, 7: 18, 8: 30}[r],
    "F": lambda r: 9,
    "G": lambda r: 4,
}

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


def _cartan_matrix(label: str, rank: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if label in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if label == "B" and rank >= 2:
            bond(rank - 2, rank - 1, -1, -2)
        if label == "C" and rank >= 2:
            bond(rank - 2, rank - 1, -2, -1)
    elif label == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif label == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, rank - 1):
            bond(i, i + 1)
    elif label == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif label == "G":
        bond(0, 1, -3, -1)
    return c


def _symmetrizers(label: str, rank: int) -> list[int]:
    if label == "B":
        return [2] * (rank - 1) + [1]
    if label == "C":
        return [1] * (rank - 1) + [2]
    if label == "F":
        return [2, 2, 1, 1]
    if label == "G":
        return [1, 3]
    return [1] * rank


def _bar_involution(label: str, rank: int) -> list[int]:
    bar = list(range(rank))
    if label == "A":
        bar = [rank - 1 - i for i in range(rank)]
    elif label == "D" and rank % 2 == 1:
        bar[rank - 2], bar[rank - 1] = rank - 1, rank - 2
    elif label == "E" and rank == 6:
        bar = [5, 1, 4, 3, 2, 0]
    return bar


def qint(ctx: Scalars, t: int, d: int = 1) -> ParamField:
    """Quantum integer [t] in base q^d, as an explicit Laurent sum."""
    if t == 0:
        return ctx.zero
    if t < 0:
        return -qint(ctx, -t, d)
    return ParamField.sum_list(ctx, [ctx.spow(2 * d * (t - 1 - 2 * k)) for k in range(t)])


def invert_matrix(ctx: Scalars, m: list[list[ParamField]]) -> list[list[ParamField]]:
    """Exact inverse by Gauss-Jordan elimination over the scalar field."""
    n = len(m)
    a = [row[:] for row in m]
    inv = [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        pinv = a[col][col].inverse()
        a[col] = [x * pinv for x in a[col]]
        inv[col] = [x * pinv for x in inv[col]]
        for r in range(n):
            if r == col or a[r][col].is_zero():
                continue
            f = a[r][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def determinant(ctx: Scalars, m: list[list[ParamField]]) -> ParamField:
    """Laplace expansion memoized over column subsets (denominator-free for
    denominator-free input)."""
    n = len(m)
    memo = {(): ctx.one}

    def minor(cols: tuple) -> ParamField:
        val = memo.get(cols)
        if val is not None:
            return val
        row = n - len(cols)
        terms = []
        for pos, c in enumerate(cols):
            entry = m[row][c]
            if entry.is_zero():
                continue
            rest = cols[:pos] + cols[pos + 1:]
            sub = minor(rest)
            term = entry * sub
            terms.append(term if pos % 2 == 0 else -term)
        val = ParamField.sum_list(ctx, terms)
        memo[cols] = val
        return val

    return minor(tuple(range(n)))


@dataclass(frozen=True)
class CartanDatum:
    ctx: Scalars
    label: str
    rank: int
    cartan: tuple            # c_ij, integer rows
    d: tuple                 # symmetrizers
    b: tuple                 # symmetrized b_ij = d_i c_ij
    lacing: int              # max d_i
    dual_coxeter: int
    bar: tuple               # 0-based involution
    B: tuple = field(repr=False, default=())        # [b_ij]_q
    C: tuple = field(repr=False, default=())        # [c_ij]_{q_i}
    Dm: tuple = field(repr=False, default=())       # diag [d_i]_q
    Btilde: tuple = field(repr=False, default=())   # exact inverse of B
    _eval_cache: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def type_name(self) -> str:
        return f"{self.label}{self.rank}"

    @property
    def nodes(self):
        return range(1, self.rank + 1)

    def index(self, node: int) -> int:
        if not 1 <= node <= self.rank:
            raise InvalidType(f"node {node} out of range for {self.type_name}")
        return node - 1

    def qi(self, node: int) -> ParamField:
        """q_i = q^{d_i}."""
        return self.ctx.qpow(self.d[self.index(node)])

    def qi_pow(self, node: int, k: int) -> ParamField:
        return self.ctx.qpow(self.d[self.index(node)] * k)

    def bar_node(self, node: int) -> int:
        return self.bar[self.index(node)] + 1

    def spectral_shift(self) -> ParamField:
        """q^{lacing * dual Coxeter number}."""
        return self.ctx.qpow(self.lacing * self.dual_coxeter)


def build_cartan(ctx: Scalars, label: str, rank: int) -> CartanDatum:
    label = label.upper()
    if label not in _DUAL_COXETER:
        raise InvalidType(f"unknown type {label!r}")
    if label in _MIN_RANK and rank < _MIN_RANK[label]:
        raise InvalidType(f"{label}{rank} is not a valid finite type")
    if label == "E" and rank not in (6, 7, 8):
        raise InvalidType(f"E{rank} is not a valid finite type")
    if label == "F" and rank != 4:
        raise InvalidType("F requires rank 4")
    if label == "G" and rank != 2:
        raise InvalidType("G requires rank 2")
    if rank < 1:
        raise InvalidType("rank must be positive")

    c = _cartan_matrix(label, rank)
    d = _symmetrizers(label, rank)
    b = [[d[i] * c[i][j] for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        for j in range(rank):
            if b[i][j] != b[j][i]:
                raise InvalidType("internal: symmetrized matrix is not symmetric")
    Bq = [[qint(ctx, b[i][j]) for j in range(rank)] for i in range(rank)]
    Cq = [[qint(ctx, c[i][j], d[i]) for j in range(rank)] for i in range(rank)]
    Dq = [[qint(ctx, d[i]) if i == j else ctx.zero for j in range(rank)] for i in range(rank)]
    # re-express the inverse as adjugate/determinant: every entry then shares
    # one denominator atom, so downstream denominator multisets stay aligned
    detB = determinant(ctx, Bq)
    inv_det = detB.inverse()
    Bt = []
    for row in invert_matrix(ctx, Bq):
        out_row = []
        for x in row:
            adj = (x * detB).reduced()
            if adj.den:
                raise SingularMatrix("internal: adjugate entry failed to clear")
            out_row.append(adj * inv_det)
        Bt.append(out_row)
    for i in range(rank):
        for j in range(rank):
            target = ctx.one if i == j else ctx.zero
            acc = ParamField.sum_list(ctx, [Bq[i][k] * Bt[k][j] for k in range(rank)])
            if not (acc - target).is_zero():
                raise SingularMatrix("internal: inverse verification failed")
    return CartanDatum(
        ctx=ctx,
        label=label,
        rank=rank,
        cartan=tuple(tuple(row) for row in c),
        d=tuple(d),
        b=tuple(tuple(row) for row in b),
        lacing=max(d),
        dual_coxeter=_DUAL_COXETER[label](rank),
        bar=tuple(_bar_involution(label, rank)),
        B=tuple(tuple(row) for row in Bq),
        C=tuple(tuple(row) for row in Cq),
        Dm=tuple(tuple(row) for row in Dq),
        Btilde=tuple(tuple(row) for row in Bt),
    )


def qcartan_inverse(cd: CartanDatum) -> tuple:
    """The exact inverse of the quantum Cartan matrix B(q)."""
    return cd.Btilde


def btilde_eval(cd: CartanDatum, i: int, j: int, s: int) -> ParamField:
    """Entry of the inverse quantum Cartan matrix evaluated at q^s (1-based)."""
    if s < 1:
        raise ValueError("evaluation exponent must be >= 1")
    key = (cd.index(i), cd.index(j), s)
    out = cd._eval_cache.get(key)
    if out is None:
        out = substitute_power(cd.Btilde[key[0]][key[1]], s)
        cd._eval_cache[key] = out
    return out
