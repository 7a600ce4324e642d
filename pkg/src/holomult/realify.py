"""Exact conversion of holomorphic objects to real counterparts on R^{2n}.

Variables are ordered x1..xn, y1..yn with z^k = x^k + i*y^k.  The two real
fields attached to a holomorphic field Z are

    field_re(Z) = 2 Re Z   with components (X^1..X^n, Y^1..Y^n)
    field_im(Z) = 2 Im Z   with components (Y^1..Y^n, -X^1..-X^n)

where Z^k = X^k + i*Y^k.  The first one generates the equivalent real ODE
system; multiplier predicates are insensitive to the overall sign and scale
of either field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .calculus import VectorField
from .linsolve import invert_matrix
from .metric import HoloMetric
from .poisson import Bivector
from .poly import CPoly, RPoly


class RealVectorField:
    """Vector field on R^{2n} with exact rational-polynomial components."""

    __slots__ = ("nvars", "components")

    def __init__(self, nvars: int, components: Iterable[RPoly]):
        components = list(components)
        if len(components) != nvars:
            raise ValueError(f"expected {nvars} components, got {len(components)}")
        for comp in components:
            if comp.nvars != nvars:
                raise ValueError("component variable count differs from dimension")
        self.nvars = nvars
        self.components = components

    @classmethod
    def zero(cls, nvars: int) -> "RealVectorField":
        return cls(nvars, [RPoly.zero(nvars) for _ in range(nvars)])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, RealVectorField):
            return NotImplemented
        return self.nvars == other.nvars and self.components == other.components

    def __add__(self, other):
        return RealVectorField(self.nvars, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return RealVectorField(self.nvars, [a - b for a, b in zip(self.components, other.components)])

    def scale(self, value) -> "RealVectorField":
        if isinstance(value, RPoly):
            return RealVectorField(self.nvars, [c * value for c in self.components])
        return RealVectorField(self.nvars, [c.scale(value) for c in self.components])

    def __repr__(self):
        return f"RealVectorField({self.nvars}, [{', '.join(c.format() for c in self.components)}])"


def realify_field(field: VectorField) -> Tuple[RealVectorField, RealVectorField]:
    """Split a holomorphic field into its two attached real fields."""
    n = field.n
    xs: List[RPoly] = []
    ys: List[RPoly] = []
    for comp in field.components:
        re, im = comp.realify_split()
        xs.append(re)
        ys.append(im)
    field_re = RealVectorField(2 * n, xs + ys)
    field_im = RealVectorField(2 * n, ys + [-x for x in xs])
    return field_re, field_im


def modsq(alpha: CPoly) -> RPoly:
    """Exact squared modulus: (Re alpha)^2 + (Im alpha)^2 on R^{2n}."""
    re, im = alpha.realify_split()
    return re * re + im * im


def real_apply(field: RealVectorField, u: RPoly) -> RPoly:
    if u.nvars != field.nvars:
        raise ValueError("dimension mismatch")
    out = RPoly.zero(field.nvars)
    for a, comp in enumerate(field.components, start=1):
        if comp:
            out = out + comp * u.diff(a)
    return out


def real_divergence(field: RealVectorField) -> RPoly:
    out = RPoly.zero(field.nvars)
    for a, comp in enumerate(field.components, start=1):
        out = out + comp.diff(a)
    return out


def real_lm_residual(u: RPoly, field: RealVectorField) -> RPoly:
    """Residual of the real last-multiplier equation X(u) + u div(X)."""
    return real_apply(field, u) + u * real_divergence(field)


def conj_product_split(f: CPoly, s: CPoly) -> Tuple[RPoly, RPoly]:
    """(Re, Im) of conj(f)*s as exact real polynomials."""
    fx, fy = f.realify_split()
    sx, sy = s.realify_split()
    return fx * sx + fy * sy, fx * sy - fy * sx


def conj_scaled_real_field(f: CPoly, w: VectorField) -> RealVectorField:
    """Realification of 2 Re(conj(f) * W), componentwise."""
    n = w.n
    xs: List[RPoly] = []
    ys: List[RPoly] = []
    for comp in w.components:
        re, im = conj_product_split(f, comp)
        xs.append(re)
        ys.append(im)
    return RealVectorField(2 * n, xs + ys)


def conj_scaled_imag_field(f: CPoly, w: VectorField) -> RealVectorField:
    """Realification of 2 Im(conj(f) * W), componentwise."""
    n = w.n
    xs: List[RPoly] = []
    ys: List[RPoly] = []
    for comp in w.components:
        re, im = conj_product_split(f, comp)
        xs.append(re)
        ys.append(im)
    return RealVectorField(2 * n, ys + [-x for x in xs])


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


def _fraction_matrix_inverse(rows: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    wrapped = invert_matrix(rows)
    out = []
    for row in wrapped:
        if any(x.im != 0 for x in row):
            raise AssertionError("rational matrix inverse left the rationals")
        out.append([x.re for x in row])
    return out


class RealMetric:
    """Anti-Kaehler twin pair (h, k) induced by a holomorphic metric.

    h carries the doubled real part in its x-block; k is the twin metric
    h(J., .) for the complex structure J that rotates x-axes into y-axes.
    Both exact inverses are stored; twice each inverse reproduces the
    block pattern built from the inverse of the holomorphic metric.
    """

    __slots__ = ("n", "h", "k", "hinv", "kinv")

    def __init__(self, n: int, h, k):
        self.n = n
        self.h = h
        self.k = k
        self.hinv = _fraction_matrix_inverse(h)
        self.kinv = _fraction_matrix_inverse(k)

    def inverse_blocks(self, which: str):
        if which == "h":
            return self.hinv
        if which == "k":
            return self.kinv
        raise ValueError("which must be 'h' or 'k'")


def realify_metric(metric: HoloMetric) -> RealMetric:
    n = metric.n
    a = [[metric.g[i][j].re for j in range(n)] for i in range(n)]
    b = [[metric.g[i][j].im for j in range(n)] for i in range(n)]

    def block(tl, tr, bl, br):
        rows = []
        for i in range(n):
            rows.append([2 * tl[i][j] for j in range(n)] + [2 * tr[i][j] for j in range(n)])
        for i in range(n):
            rows.append([2 * bl[i][j] for j in range(n)] + [2 * br[i][j] for j in range(n)])
        return rows

    neg_a = [[-x for x in row] for row in a]
    neg_b = [[-x for x in row] for row in b]
    h = block(a, neg_b, neg_b, neg_a)
    k = block(neg_b, neg_a, neg_a, b)
    real = RealMetric(n, h, k)

    # the doubled inverses must match the block pattern of the inverse metric
    c = [[metric.ginv[i][j].re for j in range(n)] for i in range(n)]
    d = [[metric.ginv[i][j].im for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if not (
                2 * real.hinv[i][j] == c[i][j]
                and 2 * real.hinv[i][n + j] == d[i][j]
                and 2 * real.hinv[n + i][j] == d[i][j]
                and 2 * real.hinv[n + i][n + j] == -c[i][j]
            ):
                raise AssertionError("h-inverse block pattern failed")
            if not (
                2 * real.kinv[i][j] == d[i][j]
                and 2 * real.kinv[i][n + j] == -c[i][j]
                and 2 * real.kinv[n + i][j] == -c[i][j]
                and 2 * real.kinv[n + i][n + j] == -d[i][j]
            ):
                raise AssertionError("k-inverse block pattern failed")
    return real


def real_gradient(u: RPoly, metric: RealMetric, which: str = "h") -> RealVectorField:
    """Gradient of u under the chosen twin metric, using the exact inverse."""
    inv = metric.inverse_blocks(which)
    size = 2 * metric.n
    if u.nvars != size:
        raise ValueError("dimension mismatch with real metric")
    partials = [u.diff(a) for a in range(1, size + 1)]
    comps = []
    for bcol in range(size):
        acc = RPoly.zero(size)
        for arow in range(size):
            if inv[arow][bcol]:
                acc = acc + partials[arow].scale(inv[arow][bcol])
        comps.append(acc)
    return RealVectorField(size, comps)


# ---------------------------------------------------------------------------
# Poisson structures
# ---------------------------------------------------------------------------


class RealBivector:
    """Antisymmetric RPoly matrix on R^{2n}, stored upper-triangular."""

    __slots__ = ("nvars", "comps")

    def __init__(self, nvars: int, comps: Dict[Tuple[int, int], RPoly] | None = None):
        self.nvars = nvars
        clean: Dict[Tuple[int, int], RPoly] = {}
        if comps:
            for (i, j), poly in comps.items():
                if not 1 <= i < j <= nvars:
                    raise ValueError(f"key {(i, j)} must satisfy 1 <= i < j <= {nvars}")
                if poly.nvars != nvars:
                    raise ValueError("component variable count differs from dimension")
                if poly:
                    clean[(i, j)] = poly
        self.comps = clean

    def entry(self, i: int, j: int) -> RPoly:
        if i == j:
            return RPoly.zero(self.nvars)
        if i < j:
            return self.comps.get((i, j), RPoly.zero(self.nvars))
        return -self.comps.get((j, i), RPoly.zero(self.nvars))

    def __repr__(self):
        body = ", ".join(f"{key}: {v.format()}" for key, v in sorted(self.comps.items()))
        return f"RealBivector(nvars={self.nvars}, {{{body}}})"


def realify_poisson(p: Bivector) -> Tuple[RealBivector, RealBivector]:
    """Quarter-scaled real and imaginary parts of a holomorphic bivector.

    Each returns a real Poisson structure whenever the input satisfies the
    Jacobi identity; the correspondence is relied upon, not re-derived, and
    the test suite confirms it on the shipped examples.
    """
    n = p.n
    size = 2 * n
    quarter = Fraction(1, 4)
    splits: Dict[Tuple[int, int], Tuple[RPoly, RPoly]] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i < j:
                splits[(i, j)] = p.entry(i, j).realify_split()
    re_comps: Dict[Tuple[int, int], RPoly] = {}
    im_comps: Dict[Tuple[int, int], RPoly] = {}

    def put(store, key, value):
        if value:
            store[key] = store.get(key, RPoly.zero(size)) + value

    for (i, j), (re, im) in splits.items():
        # x_i ^ x_j and y_i ^ y_j blocks
        put(re_comps, (i, j), re.scale(quarter))
        put(re_comps, (n + i, n + j), re.scale(-quarter))
        put(im_comps, (i, j), im.scale(quarter))
        put(im_comps, (n + i, n + j), im.scale(-quarter))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            re, im = splits[(i, j)] if i < j else splits[(j, i)]
            sign = 1 if i < j else -1
            # x_i ^ y_j block: Im for the real structure, -Re for the other
            put(re_comps, (i, n + j), im.scale(sign * quarter))
            put(im_comps, (i, n + j), re.scale(-sign * quarter))
    return RealBivector(size, re_comps), RealBivector(size, im_comps)


def real_hamiltonian(u: RPoly, q: RealBivector) -> RealVectorField:
    """Contract the bivector with du: component b is sum_a Q^{ab} du/dx^a."""
    size = q.nvars
    if u.nvars != size:
        raise ValueError("dimension mismatch with real bivector")
    partials = [u.diff(a) for a in range(1, size + 1)]
    comps = [RPoly.zero(size) for _ in range(size)]
    for (i, j), poly in q.comps.items():
        comps[j - 1] = comps[j - 1] + poly * partials[i - 1]
        comps[i - 1] = comps[i - 1] - poly * partials[j - 1]
    return RealVectorField(size, comps)


def real_modular_field(q: RealBivector) -> RealVectorField:
    size = q.nvars
    comps = []
    for i in range(1, size + 1):
        acc = RPoly.zero(size)
        for j in range(1, size + 1):
            entry = q.entry(i, j)
            if entry:
                acc = acc + entry.diff(j)
        comps.append(acc)
    return RealVectorField(size, comps)


def real_self_residual(u: RPoly, q: RealBivector) -> RPoly:
    """Real counterpart of the self-multiplier residual for bivectors."""
    return real_apply(real_modular_field(q), u)


def real_bracket(u: RPoly, v: RPoly, q: RealBivector) -> RPoly:
    out = RPoly.zero(q.nvars)
    for (i, j), poly in q.comps.items():
        out = out + poly * (u.diff(i) * v.diff(j) - u.diff(j) * v.diff(i))
    return out


def is_real_poisson(q: RealBivector) -> bool:
    """Brute-force Jacobi check over coordinate triples."""
    size = q.nvars
    coords = [RPoly.var(size, a) for a in range(1, size + 1)]
    for i in range(1, size + 1):
        for j in range(i + 1, size + 1):
            for k in range(j + 1, size + 1):
                total = (
                    real_bracket(q.entry(i, j), coords[k - 1], q)
                    + real_bracket(q.entry(j, k), coords[i - 1], q)
                    + real_bracket(q.entry(k, i), coords[j - 1], q)
                )
                if total:
                    return False
    return True
