"""Holomorphic Poisson bivectors: brackets, Jacobi, modular fields, exactness.

A bivector stores only its strictly upper-triangular components; the lower
triangle is implied by antisymmetry.  Nothing here assumes the bivector is
Poisson -- the Jacobi test is itself one of the operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .calculus import (
    Multivector,
    VectorField,
    VolumeForm,
    apply_field,
    curl,
    divergence,
    flat,
    partial_d,
    wedge,
)
from .metric import HoloMetric, gradient
from .poly import CPoly


class Bivector:
    __slots__ = ("n", "comps")

    def __init__(self, n: int, comps: Dict[Tuple[int, int], CPoly] | None = None):
        if n < 2:
            raise ValueError("bivectors need dimension >= 2")
        self.n = n
        clean: Dict[Tuple[int, int], CPoly] = {}
        if comps:
            for (i, j), poly in comps.items():
                if not 1 <= i < j <= n:
                    raise ValueError(f"bivector key {(i, j)} must satisfy 1 <= i < j <= n")
                if poly.nvars != n:
                    raise ValueError("component variable count differs from dimension")
                if poly:
                    clean[(i, j)] = poly
        self.comps = clean

    @classmethod
    def from_entries(cls, n: int, entries: Dict[Tuple[int, int], CPoly]) -> "Bivector":
        """Accept components in any index order, normalizing signs."""
        upper: Dict[Tuple[int, int], CPoly] = {}
        for (i, j), poly in entries.items():
            if i == j:
                if poly:
                    raise ValueError("diagonal bivector entries must vanish")
                continue
            key, value = ((i, j), poly) if i < j else ((j, i), -poly)
            upper[key] = upper.get(key, CPoly.zero(n)) + value
        return cls(n, upper)

    def entry(self, i: int, j: int) -> CPoly:
        """Signed component P^{ij} for any index pair."""
        if i == j:
            return CPoly.zero(self.n)
        if i < j:
            return self.comps.get((i, j), CPoly.zero(self.n))
        return -self.comps.get((j, i), CPoly.zero(self.n))

    def to_multivector(self) -> Multivector:
        return Multivector(self.n, 2, dict(self.comps))

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.n == other.n and self.comps == other.comps

    def __repr__(self):
        body = ", ".join(f"{k}: {v.format()}" for k, v in sorted(self.comps.items()))
        return f"Bivector(n={self.n}, {{{body}}})"


@dataclass
class Trivector:
    """Grade-3 skew data; used to report the Jacobi defect of a bivector."""

    n: int
    comps: Dict[Tuple[int, int, int], CPoly]

    def is_zero(self) -> bool:
        return not self.comps

    def component(self, i: int, j: int, k: int) -> CPoly:
        return self.comps.get((i, j, k), CPoly.zero(self.n))


def poisson_bracket(f: CPoly, g: CPoly, p: Bivector) -> CPoly:
    if f.nvars != p.n or g.nvars != p.n:
        raise ValueError("dimension mismatch with bivector")
    out = CPoly.zero(p.n)
    for (i, j), comp in p.comps.items():
        out = out + comp * (f.diff(i) * g.diff(j) - f.diff(j) * g.diff(i))
    return out


def jacobiator(p: Bivector) -> Trivector:
    """Cyclic bracket sum over coordinate triples; zero exactly for Poisson."""
    comps: Dict[Tuple[int, int, int], CPoly] = {}
    coords = [CPoly.var(p.n, i) for i in range(1, p.n + 1)]
    for i in range(1, p.n + 1):
        for j in range(i + 1, p.n + 1):
            for k in range(j + 1, p.n + 1):
                zi, zj, zk = coords[i - 1], coords[j - 1], coords[k - 1]
                total = (
                    poisson_bracket(p.entry(i, j), zk, p)
                    + poisson_bracket(p.entry(j, k), zi, p)
                    + poisson_bracket(p.entry(k, i), zj, p)
                )
                if total:
                    comps[(i, j, k)] = total
    return Trivector(p.n, comps)


def is_poisson(p: Bivector) -> bool:
    return jacobiator(p).is_zero()


def hamiltonian_field(f: CPoly, p: Bivector) -> VectorField:
    """Field generating the bracket with f: component j is sum_i P^{ij} df/dz^i."""
    if f.nvars != p.n:
        raise ValueError("dimension mismatch with bivector")
    partials = [f.diff(i) for i in range(1, p.n + 1)]
    comps = [CPoly.zero(p.n) for _ in range(p.n)]
    for (i, j), entry in p.comps.items():
        comps[j - 1] = comps[j - 1] + entry * partials[i - 1]
        comps[i - 1] = comps[i - 1] - entry * partials[j - 1]
    return VectorField(p.n, comps)


def modular_field(p: Bivector, omega: VolumeForm) -> VectorField:
    """Field measuring volume distortion of Hamiltonian flows.

    Component i is sum_j dP^{ij}/dz^j; the constant volume weight drops out,
    exactly as it does in the divergence.
    """
    if p.n != omega.n:
        raise ValueError("dimension mismatch with volume form")
    comps = []
    for i in range(1, p.n + 1):
        acc = CPoly.zero(p.n)
        for j in range(1, p.n + 1):
            entry = p.entry(i, j)
            if entry:
                acc = acc + entry.diff(j)
        comps.append(acc)
    return VectorField(p.n, comps)


def is_unimodular_with(p: Bivector, h: CPoly, omega: VolumeForm) -> bool:
    """Does h generate the modular field Hamiltonian-ly?"""
    return modular_field(p, omega) == hamiltonian_field(h, p)


def hamiltonian_lm_residual(
    alpha: CPoly, f: CPoly, p: Bivector, omega: VolumeForm, h: Optional[CPoly] = None
) -> CPoly:
    """Residual of 'alpha is a last multiplier for the Hamiltonian field of f'.

    Computed as (alpha * modular - Z_alpha) applied to f.  When a Hamiltonian
    generator h of the modular field is supplied, the bracket form
    alpha*{h,f} - {alpha,f} is computed as well and must agree exactly.
    """
    z_mod = modular_field(p, omega)
    z_alpha = hamiltonian_field(alpha, p)
    residual = alpha * apply_field(z_mod, f) - apply_field(z_alpha, f)
    if h is not None:
        if not is_unimodular_with(p, h, omega):
            raise ValueError("supplied h does not generate the modular field")
        bracket_form = alpha * poisson_bracket(h, f, p) - poisson_bracket(alpha, f, p)
        if bracket_form != residual:
            raise AssertionError("unimodular bracket form disagrees with the residual")
    return residual


def self_multiplier_residual(f: CPoly, p: Bivector, omega: VolumeForm) -> CPoly:
    """Zero exactly when f is a last multiplier for its own Hamiltonian field."""
    return apply_field(modular_field(p, omega), f)


@dataclass
class ExactnessResult:
    exact: bool
    residual: VectorField

    def __bool__(self):
        return self.exact


def exactness_check(p: Bivector, omega: VolumeForm) -> ExactnessResult:
    """Is the bivector curl-free?

    The direct curl is authoritative.  For dimension >= 3 the verdict is
    cross-checked against the componentwise route: the curl vanishes exactly
    when the modular components do, and "exact and Poisson" coincides with
    "zero modular components and zero triple divergences".
    """
    curled = curl(p.to_multivector(), omega)
    residual = curled.to_field()
    exact = residual.is_zero()
    if p.n >= 3:
        mod_zero = modular_field(p, omega).is_zero()
        if exact != mod_zero:
            raise AssertionError("curl route and modular route disagree")
        exact_poisson = exact and is_poisson(p)
        componentwise = mod_zero and _triple_divergence_zero(p)
        if exact_poisson != componentwise:
            raise AssertionError("curl route and componentwise route disagree")
    return ExactnessResult(exact, residual)


def _triple_divergence_zero(p: Bivector) -> bool:
    """Divergence of the triple products P^{li}P^{jk} + P^{lj}P^{ki} + P^{lk}P^{ij}."""
    for i in range(1, p.n + 1):
        for j in range(i + 1, p.n + 1):
            for k in range(j + 1, p.n + 1):
                total = CPoly.zero(p.n)
                for l in range(1, p.n + 1):
                    if l in (i, j, k):
                        continue
                    combo = (
                        p.entry(l, i) * p.entry(j, k)
                        + p.entry(l, j) * p.entry(k, i)
                        + p.entry(l, k) * p.entry(i, j)
                    )
                    total = total + combo.diff(l)
                if total:
                    return False
    return True


@dataclass
class BivectorMultiplierResult:
    ok: bool
    residual: VectorField

    def __bool__(self):
        return self.ok


def bivector_lm_check(alpha: CPoly, p: Bivector, omega: VolumeForm) -> BivectorMultiplierResult:
    """Is alpha a last multiplier for the bivector itself?

    Three routes are computed and must agree exactly: componentwise
    divergences of alpha*P, the curl of the scaled bivector through the
    form calculus, and the cleared modular field of the alpha-weighted
    volume.  True exactly when the common residual vanishes.
    """
    if alpha.is_zero():
        raise ValueError("candidate multiplier must be nonzero")
    if alpha.nvars != p.n:
        raise ValueError("dimension mismatch with bivector")
    # route 1: componentwise divergence of the scaled bivector
    comps = []
    for i in range(1, p.n + 1):
        acc = CPoly.zero(p.n)
        for j in range(1, p.n + 1):
            entry = p.entry(i, j)
            if entry:
                acc = acc + (alpha * entry).diff(j)
        comps.append(acc)
    direct = VectorField(p.n, comps)
    # route 2: curl of alpha*P via flat / exterior derivative / sharp
    scaled = Multivector(p.n, 2, {k: alpha * v for k, v in p.comps.items()})
    via_forms = curl(scaled, omega).to_field()
    if via_forms != direct:
        raise AssertionError("componentwise and form-calculus routes disagree")
    # route 3: cleared modular field of the alpha-weighted volume
    z_mod = modular_field(p, omega)
    z_alpha = hamiltonian_field(alpha, p)
    via_modular = z_mod.scale(alpha) - z_alpha
    if via_modular != direct:
        raise AssertionError("weighted-modular route disagrees")
    return BivectorMultiplierResult(direct.is_zero(), direct)


@dataclass
class Dim4Exactness:
    pfaffian_zero: bool
    dclosed: bool
    exact: bool
    pfaffian: CPoly


def pfaffian4(p: Bivector) -> CPoly:
    """Rank certificate on C^4: zero exactly when the rank is at most two."""
    if p.n != 4:
        raise ValueError("Pfaffian shortcut is specific to dimension 4")
    return (
        p.entry(1, 2) * p.entry(3, 4)
        - p.entry(1, 3) * p.entry(2, 4)
        + p.entry(1, 4) * p.entry(2, 3)
    )


def dim4_exactness(p: Bivector, omega: VolumeForm, vanish_point=None) -> Dim4Exactness:
    """Exactness on C^4 via the wedge-square and closedness of the lowered form.

    When a point with P(z0) = 0 is supplied (checked exactly), the
    equivalence (wedge-square zero AND closed) == exact is asserted; without
    a vanishing point the three facts are only reported.
    """
    if p.n != 4:
        raise ValueError("this check applies to dimension 4 only")
    lowered = flat(p.to_multivector(), omega)
    square = wedge(lowered, lowered)
    pf = pfaffian4(p)
    top = (1, 2, 3, 4)
    expected = pf.scale(omega.weight * omega.weight * 2)
    if square.component(top) != expected:
        raise AssertionError("wedge square disagrees with the Pfaffian")
    pfaffian_zero = square.is_zero()
    dclosed = partial_d(lowered).is_zero()
    exact = exactness_check(p, omega).exact
    if vanish_point is not None:
        vanishes = all(
            entry.evaluate_exact(vanish_point) == 0 for entry in p.comps.values()
        )
        if vanishes and (pfaffian_zero and dclosed) != exact:
            raise AssertionError("dimension-4 exactness equivalence failed")
    return Dim4Exactness(pfaffian_zero, dclosed, exact, pf)


def exact_hamiltonian_check(h: CPoly, p: Bivector, metric: HoloMetric) -> bool:
    """Is the Hamiltonian field of h exact?  Euclidean-metric formulation.

    Equivalent statements computed both ways: the curl field paired with the
    gradient of h, and the curl field applied to h directly.
    """
    if not metric.is_euclidean():
        raise ValueError("this check is stated for the euclidean metric only")
    if metric.n != p.n:
        raise ValueError("dimension mismatch")
    omega = metric.volume()
    curl_field = curl(p.to_multivector(), omega).to_field()
    paired = metric.pair_fields(curl_field, gradient(h, metric))
    applied = apply_field(curl_field, h)
    if paired != applied:
        raise AssertionError("metric pairing and direct application disagree")
    return applied.is_zero()
