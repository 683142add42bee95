"""Sparse integer polynomial kernel.

Polynomials are plain dicts mapping exponent tuples to nonzero Python ints.
All functions are pure; dicts are never mutated after they escape a function.
Multiplication switches between schoolbook accumulation and Kronecker
substitution (coefficients packed into one big integer via gmpy2, multiplied
once, then unpacked), which is what keeps order-20 series arithmetic over
dense q-polynomials fast.
"""

from __future__ import annotations

from math import gcd

import gmpy2

# A monomial (single-term polynomial) is never stored here as a denominator
# atom; callers strip monomial content first.

SCHOOLBOOK_LIMIT = 600  # len(a)*len(b) above which Kronecker is considered
KRONECKER_SLOT_CAP = 8_000_000  # refuse to densify beyond this many slots


def pzero() -> dict:
    return {}


def pone(nvars: int) -> dict:
    return {(0,) * nvars: 1}


def pconst(nvars: int, c: int) -> dict:
    return {(0,) * nvars: c} if c else {}


def pmonomial(exps: tuple, c: int = 1) -> dict:
    return {tuple(exps): c} if c else {}


def is_zero(a: dict) -> bool:
    return not a


def padd(a: dict, b: dict) -> dict:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def padd_into(acc: dict, b: dict) -> None:
    """In-place accumulate; only for dicts that never escaped the caller."""
    get = acc.get
    for e, c in b.items():
        s = get(e, 0) + c
        if s:
            acc[e] = s
        else:
            del acc[e]


def pneg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def psub(a: dict, b: dict) -> dict:
    if not b:
        return a
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def pscale(a: dict, k: int) -> dict:
    if k == 0:
        return {}
    if k == 1:
        return a
    return {e: c * k for e, c in a.items()}


def pshift(a: dict, exps: tuple) -> dict:
    """Multiply by the monomial with exponent vector ``exps`` (all >= 0)."""
    if not any(exps):
        return a
    return {tuple(x + y for x, y in zip(e, exps)): c for e, c in a.items()}


def _min_max_degrees(a: dict, nvars: int):
    if nvars == 1:
        es = [e for (e,) in a]
        return [min(es)], [max(es)]
    if nvars == 2:
        e0 = [e[0] for e in a]
        e1 = [e[1] for e in a]
        return [min(e0), min(e1)], [max(e0), max(e1)]
    it = iter(a)
    first = next(it)
    lo = list(first)
    hi = list(first)
    for e in it:
        for v in range(nvars):
            x = e[v]
            if x < lo[v]:
                lo[v] = x
            elif x > hi[v]:
                hi[v] = x
    return lo, hi


def _pack_split(a: dict, active: list, lo: list, strides: list, width: int, size: int):
    """Pack positive and negative parts separately (slots must be >= 0)."""
    pos = [0] * size
    neg = [0] * size
    has_neg = False
    if len(active) == 1:
        v0 = active[0]
        l0 = lo[v0]
        for e, c in a.items():
            idx = e[v0] - l0
            if c >= 0:
                pos[idx] = c
            else:
                neg[idx] = -c
                has_neg = True
    else:
        for e, c in a.items():
            idx = 0
            for v, st, l in strides:
                idx += (e[v] - l) * st
            if c >= 0:
                pos[idx] = c
            else:
                neg[idx] = -c
                has_neg = True
    return gmpy2.pack(pos, width), (gmpy2.pack(neg, width) if has_neg else None)


def _kron_mul(a: dict, b: dict, nvars: int) -> dict | None:
    lo_a, hi_a = _min_max_degrees(a, nvars)
    lo_b, hi_b = _min_max_degrees(b, nvars)
    base = [la + lb for la, lb in zip(lo_a, lo_b)]
    spans = [(ha - la) + (hb - lb) for la, ha, lb, hb in zip(lo_a, hi_a, lo_b, hi_b)]
    active = [v for v in range(nvars) if spans[v]]
    size = 1
    for v in active:
        size *= spans[v] + 1
    if size > KRONECKER_SLOT_CAP or size > 30 * len(a) * len(b):
        return None
    strides = []
    st = 1
    for v in active:
        strides.append((v, st, 0))
        st *= spans[v] + 1
    abits = max(map(abs, a.values())).bit_length()
    bbits = max(map(abs, b.values())).bit_length()
    width = abits + bbits + min(len(a), len(b)).bit_length() + 2
    sa = [(v, s, lo_a[v]) for v, s, _ in strides]
    sb = [(v, s, lo_b[v]) for v, s, _ in strides]
    ap, an = _pack_split(a, active, lo_a, sa, width, size)
    bp, bn = _pack_split(b, active, lo_b, sb, width, size)
    plus = ap * bp
    minus = 0
    if an is not None:
        if bn is not None:
            plus += an * bn
        minus = an * bp
    if bn is not None:
        minus += ap * bn
    cpos = gmpy2.unpack(gmpy2.mpz(plus), width) if plus else ()
    cneg = gmpy2.unpack(gmpy2.mpz(minus), width) if minus else ()
    out = {}
    zero = (0,) * nvars
    if len(active) == 1:
        v0 = active[0]
        b0 = base[v0]
        proto = list(zero)
        for idx, c in enumerate(cpos):
            if c:
                proto[v0] = b0 + idx
                out[tuple(proto)] = int(c)
        for idx, c in enumerate(cneg):
            if c:
                proto[v0] = b0 + idx
                e = tuple(proto)
                s = out.get(e, 0) - int(c)
                if s:
                    out[e] = s
                else:
                    del out[e]
    else:
        rstrides = list(reversed(strides))

        def decode(idx: int) -> tuple:
            e = list(zero)
            for v, st, _l in rstrides:
                d, idx = divmod(idx, st)
                e[v] = base[v] + d
            return tuple(e)

        for idx, c in enumerate(cpos):
            if c:
                out[decode(idx)] = int(c)
        for idx, c in enumerate(cneg):
            if c:
                e = decode(idx)
                s = out.get(e, 0) - int(c)
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def pmul(a: dict, b: dict, nvars: int) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 1:
        (ea, ca), = a.items()
        if not any(ea):
            return pscale(b, ca)
        return {tuple(x + y for x, y in zip(e, ea)): c * ca for e, c in b.items()}
    if len(a) * len(b) > SCHOOLBOOK_LIMIT:
        out = _kron_mul(a, b, nvars)
        if out is not None:
            return out
    out = {}
    bitems = list(b.items())
    get = out.get
    if nvars == 1:
        for (ea,), ca in a.items():
            for (eb,), cb in bitems:
                e = (ea + eb,)
                s = get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    elif nvars == 2:
        for ea, ca in a.items():
            ea0, ea1 = ea
            for eb, cb in bitems:
                e = (ea0 + eb[0], ea1 + eb[1])
                s = get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    elif nvars == 3:
        for ea, ca in a.items():
            ea0, ea1, ea2 = ea
            for eb, cb in bitems:
                e = (ea0 + eb[0], ea1 + eb[1], ea2 + eb[2])
                s = get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    else:
        for ea, ca in a.items():
            for eb, cb in bitems:
                e = tuple(x + y for x, y in zip(ea, eb))
                s = get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def ppow(a: dict, k: int, nvars: int) -> dict:
    if k == 0:
        return pone(nvars)
    if k == 1:
        return a
    out = None
    base = a
    while k:
        if k & 1:
            out = base if out is None else pmul(out, base, nvars)
        k >>= 1
        if k:
            base = pmul(base, base, nvars)
    return out


def int_content(a: dict) -> int:
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def monomial_content(a: dict, nvars: int) -> tuple:
    mins = None
    for e in a:
        if mins is None:
            mins = list(e)
        else:
            for v in range(nvars):
                if e[v] < mins[v]:
                    mins[v] = e[v]
        if not any(mins):
            break
    return tuple(mins) if mins else (0,) * nvars


def strip_monomial(a: dict, nvars: int) -> tuple:
    """Return (monomial exponents, a / monomial)."""
    m = monomial_content(a, nvars)
    if not any(m):
        return m, a
    return m, {tuple(x - y for x, y in zip(e, m)): c for e, c in a.items()}


def lead_sign(a: dict) -> int:
    """Sign of the coefficient at the lexicographically largest exponent."""
    if not a:
        return 0
    return 1 if a[max(a)] > 0 else -1


def substitute_var_power(a: dict, var: int, k: int) -> dict:
    """Exponent map x_var -> x_var^k (k >= 1)."""
    if k == 1:
        return a
    out = {}
    for e, c in a.items():
        e2 = list(e)
        e2[var] *= k
        out[tuple(e2)] = c
    return out


def evaluate_int(a: dict, point: list) -> int:
    """Evaluate at integer arguments (used by tests and sanity checks)."""
    tot = 0
    for e, c in a.items():
        term = c
        for v, x in enumerate(point):
            if e[v]:
                term *= x ** e[v]
        tot += term
    return tot


def _pack_at(a: dict, strides: list, width: int, size: int):
    """Pack with explicit per-variable exponent origins (carried in the
    stride triples; origins may sit below the true minimum to encode a
    monomial shift).  Returns the (positive, negative) integer pair."""
    pos = [0] * size
    neg = [0] * size
    has_neg = False
    if len(strides) == 1:
        v0, _st, l0 = strides[0]
        for e, c in a.items():
            idx = e[v0] - l0
            if c >= 0:
                pos[idx] = c
            else:
                neg[idx] = -c
                has_neg = True
    else:
        for e, c in a.items():
            idx = 0
            for v, st, l in strides:
                idx += (e[v] - l) * st
            if c >= 0:
                pos[idx] = c
            else:
                neg[idx] = -c
                has_neg = True
    return gmpy2.pack(pos, width), (gmpy2.pack(neg, width) if has_neg else 0)


def _pair_mul(a, b):
    ap, an = a
    bp, bn = b
    return ap * bp + an * bn, ap * bn + an * bp


def _pair_pow(a, e):
    out = None
    base = a
    while e:
        if e & 1:
            out = base if out is None else _pair_mul(out, base)
        e >>= 1
        if e:
            base = _pair_mul(base, base)
    return out


def _bits_bound(poly: dict) -> int:
    """Bits of len(poly) * max|coeff|, a safe product-growth estimate."""
    return max(map(abs, poly.values())).bit_length() + len(poly).bit_length()


def dot_sum(terms: list, nvars: int) -> dict | None:
    """Fused multiply-accumulate: sum over terms of r * prod(factors).

    ``terms`` entries are (r, factors) with integer r and factors a list of
    (poly, shift) pairs, shift being an optional monomial-multiplier exponent
    vector.  The whole accumulation happens on Kronecker-packed integers: one
    pack per factor, one unpack per call.  Returns None when the dense layout
    would be unreasonable; callers then fall back to term-by-term arithmetic.
    """
    lo_g = [0] * nvars
    hi_g = [0] * nvars
    width_term_max = 0
    first = True
    metas = []
    for r, factors in terms:
        lo_t = [0] * nvars
        hi_t = [0] * nvars
        bits = abs(r).bit_length()
        for poly, shift in factors:
            lo, hi = _min_max_degrees(poly, nvars)
            for v in range(nvars):
                lo_t[v] += lo[v] + (shift[v] if shift else 0)
                hi_t[v] += hi[v] + (shift[v] if shift else 0)
            bits += _bits_bound(poly)
        metas.append((lo_t, hi_t))
        if first:
            lo_g, hi_g = lo_t[:], hi_t[:]
            first = False
        else:
            for v in range(nvars):
                if lo_t[v] < lo_g[v]:
                    lo_g[v] = lo_t[v]
                if hi_t[v] > hi_g[v]:
                    hi_g[v] = hi_t[v]
        if bits > width_term_max:
            width_term_max = bits
    spans = [hi_g[v] - lo_g[v] for v in range(nvars)]
    active = [v for v in range(nvars) if spans[v]]
    size = 1
    for v in active:
        size *= spans[v] + 1
    if size > KRONECKER_SLOT_CAP:
        return None
    nterms_all = sum(len(p) for _r, fs in terms for p, _s in fs)
    if size > 40 * max(nterms_all, 64):
        return None
    if not active:
        # all factors are single monomials at fixed exponents
        total = 0
        for r, factors in terms:
            val = r
            for poly, _shift in factors:
                val *= next(iter(poly.values()))
            total += val
        if not total:
            return {}
        return {tuple(lo_g): total}
    width = width_term_max + len(terms).bit_length() + 2
    strides = []
    st = 1
    for v in active:
        strides.append((v, st, 0))
        st *= spans[v] + 1
    acc_p = 0
    acc_n = 0
    for (r, factors), (lo_t, _hi) in zip(terms, metas):
        if not factors:
            return None  # callers always provide the numerator as a factor
        pair = None
        # the global origin correction rides on the first factor's origin;
        # factor shifts are already inside lo_t and thus inside corr
        corr = [lo_t[v] - lo_g[v] for v in range(nvars)]
        for poly, _shift in factors:
            lo, _hi2 = _min_max_degrees(poly, nvars)
            fstr = [(v, stv, lo[v] - corr[v]) for v, stv, _z in strides]
            packed = _pack_at(poly, fstr, width, size)
            corr = [0] * nvars
            pair = packed if pair is None else _pair_mul(pair, packed)
        pp, pn = pair
        if r >= 0:
            acc_p += r * pp
            acc_n += r * pn
        else:
            acc_p += (-r) * pn
            acc_n += (-r) * pp
    out: dict = {}
    zero = (0,) * nvars
    if len(active) == 1:
        v0 = active[0]
        b0 = lo_g[v0]
        proto = list(zero)
        for v in range(nvars):
            proto[v] = lo_g[v]
        for idx, c in enumerate(gmpy2.unpack(gmpy2.mpz(acc_p), width) if acc_p else ()):
            if c:
                proto[v0] = b0 + idx
                out[tuple(proto)] = int(c)
        for idx, c in enumerate(gmpy2.unpack(gmpy2.mpz(acc_n), width) if acc_n else ()):
            if c:
                proto[v0] = b0 + idx
                e = tuple(proto)
                s = out.get(e, 0) - int(c)
                if s:
                    out[e] = s
                else:
                    del out[e]
    else:
        rstrides = list(reversed(strides))

        def decode(idx: int) -> tuple:
            e = list(lo_g)
            for v, st2, _z in rstrides:
                d, idx = divmod(idx, st2)
                e[v] = lo_g[v] + d
            return tuple(e)

        for idx, c in enumerate(gmpy2.unpack(gmpy2.mpz(acc_p), width) if acc_p else ()):
            if c:
                out[decode(idx)] = int(c)
        for idx, c in enumerate(gmpy2.unpack(gmpy2.mpz(acc_n), width) if acc_n else ()):
            if c:
                e = decode(idx)
                s = out.get(e, 0) - int(c)
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


# -- full gcd fallback (rare path: size-threshold reduction and display) ----

def full_gcd(a: dict, b: dict, nvars: int) -> dict:
    """Polynomial gcd via sympy's ring arithmetic (lazy import; slow path)."""
    if not a:
        return b
    if not b:
        return a
    from sympy.polys.domains import ZZ
    from sympy.polys.rings import ring

    names = ",".join(f"x{v}" for v in range(nvars))
    R = ring(names, ZZ)[0]
    fa = R.from_dict({e: ZZ(c) for e, c in a.items()})
    fb = R.from_dict({e: ZZ(c) for e, c in b.items()})
    g = fa.gcd(fb)
    out = {}
    for e, c in g.terms():
        e = tuple(e) if nvars > 1 else (e[0],)
        out[e] = int(c)
    return out


def exact_div(a: dict, b: dict, nvars: int) -> dict | None:
    """Exact division a / b, or None when b does not divide a."""
    if not a:
        return {}
    if not b:
        return None
    from sympy.polys.domains import ZZ
    from sympy.polys.rings import ring

    names = ",".join(f"x{v}" for v in range(nvars))
    R = ring(names, ZZ)[0]
    fa = R.from_dict({e: ZZ(c) for e, c in a.items()})
    fb = R.from_dict({e: ZZ(c) for e, c in b.items()})
    q, r = fa.div(fb)
    if r:
        return None
    out = {}
    for e, c in q.terms():
        e = tuple(e) if nvars > 1 else (e[0],)
        out[e] = int(c)
    return out
