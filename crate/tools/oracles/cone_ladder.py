"""Independent check of the first two ladder valuations on the cone xy = z^2.

Frame: basis (x, y), z dependent, so D_x f = f_x + f_z*y/(2z) and
D_y f = f_y + f_z*x/(2z) on the cone. Entries are built from the
principal-parts formula s0^3 * d(s1/s0) ^ d(s2/s0) with sympy; the minimum
valuation of a wedge family along an arc is the sum of the first three
pivot valuations of the section matrix [s, D_x s, D_y s] over k[[t]].

Run: python3 tools/oracles/cone_ladder.py
"""

from fractions import Fraction
from itertools import combinations

import sympy as sp

x, y, z, t = sp.symbols("x y z t")
G = sp.groebner([x * y - z**2], x, y, z, order="grevlex", domain=sp.QQ)
PREC = 60


def nf(p):
    return G.reduce(sp.expand(p))[1]


def dx(f):
    return sp.diff(f, x) + sp.diff(f, z) * y / (2 * z)


def dy(f):
    return sp.diff(f, y) + sp.diff(f, z) * x / (2 * z)


def rational_basis(polys):
    """Indices of a maximal Q-independent subfamily, scanned in order."""
    polys = [sp.Poly(p, x, y, z) for p in polys]
    monos = sorted({m for p in polys for m in p.monoms()})
    keep, rows = [], []
    for i, p in enumerate(polys):
        if p.is_zero:
            continue
        d = dict(zip(p.monoms(), p.coeffs()))
        trial = rows + [[d.get(m, 0) for m in monos]]
        if sp.Matrix(trial).rank() == len(trial):
            rows = trial
            keep.append(i)
    return keep


class Series:
    """Laurent series t^val * (c0 + c1 t + ...), PREC coefficients."""

    def __init__(self, val, coeffs):
        while coeffs and coeffs[0] == 0:
            coeffs = coeffs[1:]
            val += 1
        self.val = val if coeffs else None
        self.c = (coeffs + [Fraction(0)] * PREC)[:PREC] if coeffs else []

    @staticmethod
    def of(expr, arc):
        num, den = sp.fraction(sp.together(expr.subs(arc, simultaneous=True)))
        pn, pd = sp.Poly(sp.expand(num), t), sp.Poly(sp.expand(den), t)
        if pn.is_zero:
            return Series(0, [])

        def coeffs(p):
            d = {m[0]: Fraction(int(c.p), int(c.q)) for m, c in zip(p.monoms(), p.coeffs())}
            lo = min(d)
            return lo, [d.get(lo + i, Fraction(0)) for i in range(PREC)]

        vn, cn = coeffs(pn)
        vd, cd = coeffs(pd)
        return Series(vn - vd, div_unit(cn, cd))

    def sub(self, other):
        if other.val is None:
            return self
        if self.val is None:
            return Series(other.val, [-c for c in other.c])
        v = min(self.val, other.val)
        a = [Fraction(0)] * (self.val - v) + self.c
        b = [Fraction(0)] * (other.val - v) + other.c
        return Series(v, [p - q for p, q in zip(a[:PREC], b[:PREC])])

    def mul(self, other):
        if self.val is None or other.val is None:
            return Series(0, [])
        out = [Fraction(0)] * PREC
        for i, a in enumerate(self.c):
            if a:
                for j in range(PREC - i):
                    out[i + j] += a * other.c[j]
        return Series(self.val + other.val, out)

    def div(self, other):
        if self.val is None:
            return self
        return Series(self.val - other.val, div_unit(self.c, other.c))


def div_unit(a, b):
    q = [Fraction(0)] * PREC
    for i in range(PREC):
        acc = a[i] - sum(b[j] * q[i - j] for j in range(1, i + 1))
        q[i] = acc / b[0]
    return q


def min_minor_valuation(matrix, k):
    """Minimum valuation of the k x k minors, by full pivoting."""
    m = [row[:] for row in matrix]
    total = 0
    for step in range(k):
        best = None
        for i in range(step, len(m)):
            for j in range(step, len(m[0])):
                e = m[i][j]
                if e.val is not None and (best is None or e.val < best[0]):
                    best = (e.val, i, j)
        if best is None:
            return None
        _, i, j = best
        m[step], m[i] = m[i], m[step]
        for row in m:
            row[step], row[j] = row[j], row[step]
        piv = m[step][step]
        total += piv.val
        for r in range(step + 1, len(m)):
            f = m[r][step].div(piv)
            m[r] = [m[r][c].sub(f.mul(m[step][c])) for c in range(len(m[0]))]
    return total


def wedge(s0, s1, s2):
    r1, r2 = s1 / s0, s2 / s0
    return sp.cancel(s0**3 * (dx(r1) * dy(r2) - dy(r1) * dx(r2)))


def span_basis(ideal_gens):
    """Q-basis of span{g * m : g in ideal_gens, m in {1, x, y, z}} modulo the cone."""
    sections = [sp.cancel(g * m) for g in ideal_gens for m in (1, x, y, z)]
    dens = [sp.fraction(s)[1] for s in sections]
    common = sp.lcm_list(dens)
    nums = [nf(sp.cancel(s * common)) for s in sections]
    keep = rational_basis(nums)
    return [nums[i] / common for i in keep]


def valuations(arc):
    f1 = [y, x, z]
    basis1 = span_basis(f1)
    f3 = []
    for a, b, c in combinations(basis1, 3):
        w = wedge(a, b, c)
        if w != 0 and nf(sp.fraction(w)[0]) != 0:
            f3.append(w)
    v1 = min(s.val for s in (Series.of(w, arc) for w in f3) if s.val is not None)
    products = [sp.cancel(g * w) for g in f1 for w in f3]
    basis2 = span_basis(products)
    rows = [[Series.of(s, arc), Series.of(dx(s), arc), Series.of(dy(s), arc)] for s in basis2]
    shift = -min(e.val for row in rows for e in row if e.val is not None)
    lift = Series(shift, [Fraction(1)])
    rows = [[e.mul(lift) for e in row] for row in rows]
    v2 = min_minor_valuation(rows, 3) - 3 * shift
    return v1, v2


if __name__ == "__main__":
    for name, arc in [
        ("(t, t, t)", {x: t, y: t, z: t}),
        ("(t^2, t^4, t^3)", {x: t**2, y: t**4, z: t**3}),
        ("(t, 4t, 2t)", {x: t, y: 4 * t, z: 2 * t}),
    ]:
        print(name, valuations(arc))
