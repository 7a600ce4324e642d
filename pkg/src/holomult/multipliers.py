"""Last multipliers, inverse multipliers, first integrals, and Darboux search.

Every predicate returns its residual polynomial alongside the verdict so a
failure is diagnosable; a verdict is True exactly when the residual is the
zero polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .calculus import (
    VectorField,
    VolumeForm,
    apply_field,
    divergence,
    flat,
    interior_product,
    lie_bracket,
    partial_d,
)
from .linsolve import solve_linear
from .poly import CPoly
from .scalars import GaussianRational


@dataclass
class Check:
    """Verdict plus the exact residual polynomial behind it."""

    ok: bool
    residual: CPoly

    def __bool__(self):
        return self.ok


def is_first_integral(f: CPoly, field: VectorField) -> Check:
    residual = apply_field(field, f)
    return Check(residual.is_zero(), residual)


def is_last_multiplier(alpha: CPoly, field: VectorField, omega: VolumeForm) -> Check:
    """alpha is a last multiplier when Z(alpha) + alpha*div(Z) vanishes.

    Computed twice: directly, and as closedness of alpha * (Z contracted into
    the volume form); the two routes must agree exactly.
    """
    residual = apply_field(field, alpha) + alpha * divergence(field, omega)
    theta = flat(field, omega)
    if isinstance(theta, CPoly):  # n == 1: theta is already a scalar
        d_alpha_theta = partial_d(alpha * theta)
    else:
        d_alpha_theta = partial_d(theta.scale(alpha))
    top = tuple(range(1, field.n + 1))
    form_residual = d_alpha_theta.component(top)
    expected = residual.scale(omega.weight)
    if form_residual != expected:
        raise AssertionError("divergence route and form route disagree")
    return Check(residual.is_zero(), residual)


def is_inverse_multiplier(beta: CPoly, field: VectorField, omega: VolumeForm) -> Check:
    residual = apply_field(field, beta) - divergence(field, omega) * beta
    return Check(residual.is_zero(), residual)


def adjoint_apply(field: VectorField, f: CPoly, omega: VolumeForm) -> CPoly:
    """Adjoint action: -Z(f) - f*div(Z); its kernel is the multiplier set."""
    return -apply_field(field, f) - f * divergence(field, omega)


# ---------------------------------------------------------------------------
# Darboux machinery
# ---------------------------------------------------------------------------


@dataclass
class DarbouxPair:
    poly: CPoly
    cofactor: CPoly


@dataclass
class ExponentSolution:
    """Product-form multiplier data: exponents m_k for the candidate factors.

    The residual identity sum(m_k * cofactor_k) + div(Z) == 0 holds exactly.
    When the system is underdetermined, `exponents` is the minimal-support
    particular solution and `nullspace` spans the remaining freedom.
    """

    exponents: List[GaussianRational]
    basis: List[DarbouxPair]
    nullspace: List[List[GaussianRational]]


def darboux_cofactor(f: CPoly, field: VectorField) -> Optional[DarbouxPair]:
    """Extract the cofactor g with Z(f) = g*f, or None when f does not divide Z(f)."""
    if f.is_zero():
        raise ValueError("zero polynomial cannot be a Darboux polynomial")
    derived = apply_field(field, f)
    if derived.is_zero():
        return DarbouxPair(f, CPoly.zero(field.n))
    quotient = derived.divide_exact(f)
    if quotient is None:
        return None
    return DarbouxPair(f, quotient)


def darboux_multiplier_search(
    field: VectorField, candidates: Sequence[CPoly], omega: VolumeForm
) -> Optional[ExponentSolution]:
    """Match exponents so the product of candidates is a multiplier.

    Builds the coefficient-matching linear system sum(m_k g_k) = -div(Z) over
    every monomial appearing in the cofactors or the divergence, then solves
    exactly.  Returns None when the system is inconsistent.
    """
    pairs = []
    for cand in candidates:
        pair = darboux_cofactor(cand, field)
        if pair is None:
            raise ValueError(f"candidate {cand.format()} is not a Darboux polynomial")
        pairs.append(pair)
    div = divergence(field, omega)
    monomials = set(div.terms)
    for pair in pairs:
        monomials.update(pair.cofactor.terms)
    mono_list = sorted(monomials)
    zero = GaussianRational(0)
    matrix = [
        [pair.cofactor.terms.get(mono, zero) for pair in pairs] for mono in mono_list
    ]
    rhs = [-div.terms.get(mono, zero) for mono in mono_list]
    if not mono_list:
        matrix = [[zero for _ in pairs]]
        rhs = [zero]
    solution = solve_linear(matrix, rhs)
    if not solution.is_consistent:
        return None
    combo = CPoly.zero(field.n)
    for m_k, pair in zip(solution.particular, pairs):
        combo = combo + pair.cofactor.scale(m_k)
    if combo + div:
        raise AssertionError("solved exponents fail the cofactor identity")
    return ExponentSolution(
        exponents=list(solution.particular),
        basis=pairs,
        nullspace=solution.nullspace,
    )


# ---------------------------------------------------------------------------
# symmetries and frames
# ---------------------------------------------------------------------------


def symmetry_coefficient(s: VectorField, field: VectorField) -> Optional[CPoly]:
    """Polynomial lambda with [Z, S] = lambda * Z, or None if no polynomial works."""
    lam, _ = _symmetry_analysis(s, field)
    return lam


def symmetry_defect(s: VectorField, field: VectorField) -> List[int]:
    """1-based component indices at which [Z, S] fails to be a multiple of Z.

    Empty exactly when symmetry_coefficient succeeds.
    """
    _, bad = _symmetry_analysis(s, field)
    return bad


def _symmetry_analysis(s: VectorField, field: VectorField):
    if field.is_zero():
        raise ValueError("symmetry check needs a nonzero base field")
    bracket = lie_bracket(field, s)
    lam = None
    pivot = None
    for k, (comp, b_comp) in enumerate(zip(field.components, bracket.components), start=1):
        if comp.is_zero():
            continue
        candidate = b_comp.divide_exact(comp)
        if candidate is None:
            return None, [k]
        lam = candidate
        pivot = k
        break
    if lam is None:  # unreachable for nonzero fields, kept for symmetry
        return None, list(range(1, field.n + 1))
    bad = []
    for k, (comp, b_comp) in enumerate(zip(field.components, bracket.components), start=1):
        if lam * comp != b_comp:
            bad.append(k)
    if bad:
        return None, bad
    return lam, []


def inverse_from_symmetries(
    symmetries: Sequence[VectorField], field: VectorField, omega: VolumeForm
) -> CPoly:
    """Contract n-1 symmetries into theta = i_Z omega; the scalar left over
    is an inverse multiplier."""
    n = field.n
    if len(symmetries) != n - 1:
        raise ValueError(f"need {n - 1} symmetries on dimension {n}")
    for i, sym in enumerate(symmetries):
        if symmetry_coefficient(sym, field) is None:
            raise ValueError(f"field #{i + 1} is not a symmetry of the base field")
    theta = flat(field, omega)
    for sym in symmetries:
        theta = interior_product(sym, theta)
    beta = theta
    if not isinstance(beta, CPoly):
        raise AssertionError("contraction did not reduce to a scalar")
    check = is_inverse_multiplier(beta, field, omega)
    if not check.ok:
        raise AssertionError("symmetry contraction failed the inverse-multiplier identity")
    return beta


def frame_volume(frame: Sequence[VectorField], omega: VolumeForm) -> CPoly:
    """omega applied to a frame: weight times the determinant of components."""
    n = omega.n
    if len(frame) != n:
        raise ValueError("frame size must equal the dimension")
    rows = [f.components for f in frame]
    det = _poly_determinant(rows, n)
    return det.scale(omega.weight)


def _poly_determinant(rows, n: int) -> CPoly:
    size = len(rows)
    if size == 1:
        return rows[0][0]
    out = CPoly.zero(n)
    for j in range(size):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        cof = rows[0][j] * _poly_determinant(minor, n)
        out = out + cof if j % 2 == 0 else out - cof
    return out


def inverse_from_frame(
    frame: Sequence[VectorField],
    structure: Sequence[Sequence[CPoly]],
    field: VectorField,
    omega: VolumeForm,
) -> CPoly:
    """Verify the frame relations [Z, Z_i] = sum_k f_i^k Z_k with zero trace,
    then return beta = omega(Z_1, ..., Z_n)."""
    n = field.n
    if len(frame) != n or len(structure) != n or any(len(row) != n for row in structure):
        raise ValueError("frame and structure matrix must both be n-sized")
    for i in range(n):
        bracket = lie_bracket(field, frame[i])
        expected = VectorField.zero(n)
        for k in range(n):
            expected = expected + frame[k].scale(structure[i][k])
        if bracket != expected:
            raise ValueError(f"bracket relation fails for frame field #{i + 1}")
    trace = CPoly.zero(n)
    for k in range(n):
        trace = trace + structure[k][k]
    if not trace.is_zero():
        raise ValueError("structure-function trace is nonzero")
    beta = frame_volume(frame, omega)
    check = is_inverse_multiplier(beta, field, omega)
    if not check.ok:
        raise AssertionError("frame volume failed the inverse-multiplier identity")
    return beta


def divergence_type_check(w: VectorField, field: VectorField, omega: VolumeForm) -> Check:
    """Does div(W) serve as a last multiplier for Z?  True when the second
    Lie derivative of the volume along (Z, W) vanishes."""
    div_w = divergence(w, omega)
    residual = apply_field(field, div_w) + div_w * divergence(field, omega)
    ok = residual.is_zero()
    if ok:
        inner = is_last_multiplier(div_w, field, omega)
        if not inner.ok:
            raise AssertionError("divergence-type residual disagrees with the multiplier check")
    return Check(ok, residual)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


def lift_poly(p: CPoly, total: int, offset: int) -> CPoly:
    """Re-index a polynomial into a larger variable block starting at offset."""
    if offset + p.nvars > total:
        raise ValueError("lift overflows the target variable count")
    terms = {}
    for mono, coeff in p.terms.items():
        terms[(0,) * offset + mono + (0,) * (total - offset - p.nvars)] = coeff
    return CPoly(total, terms)


def product_combine(
    beta1: CPoly, field1: VectorField, beta2: CPoly, field2: VectorField
) -> tuple[CPoly, VectorField]:
    """Inverse multipliers multiply across a product of coordinate blocks."""
    n1, n2 = field1.n, field2.n
    total = n1 + n2
    omega1 = VolumeForm(n1)
    omega2 = VolumeForm(n2)
    if not is_inverse_multiplier(beta1, field1, omega1).ok:
        raise ValueError("first factor fails its inverse-multiplier identity")
    if not is_inverse_multiplier(beta2, field2, omega2).ok:
        raise ValueError("second factor fails its inverse-multiplier identity")
    comps = [lift_poly(c, total, 0) for c in field1.components]
    comps += [lift_poly(c, total, n1) for c in field2.components]
    combined = VectorField(total, comps)
    beta = lift_poly(beta1, total, 0) * lift_poly(beta2, total, n1)
    check = is_inverse_multiplier(beta, combined, VolumeForm(total))
    if not check.ok:
        raise AssertionError("combined product failed the inverse-multiplier identity")
    return beta, combined
