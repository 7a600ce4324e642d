"""Exterior and Lie calculus for polynomial holomorphic data on C^n.

Vector fields, multivectors and forms carry CPoly components indexed by
strictly increasing 1-based index tuples.  Grade-0 objects are plain CPoly
scalars: operations that land in grade 0 return the scalar directly.

The interior-product sign convention is fixed once: for a decomposable
multivector with increasing factors, contraction starts with the lowest
index.  Under the determinant duality pairing (pairing of matching
increasing basis sets is +1) this convention satisfies
<i_A phi, B> == <phi, A wedge B>, which is what the property tests pin down.
All derived signs (flat, sharp, curl) inherit this single choice.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple, Union

from .poly import CPoly
from .scalars import GaussianRational

IndexSet = Tuple[int, ...]


def _check_index_set(indices: IndexSet, grade: int, n: int):
    if len(indices) != grade:
        raise ValueError(f"index set {indices} does not have grade {grade}")
    if any(not 1 <= i <= n for i in indices):
        raise ValueError(f"index set {indices} out of range 1..{n}")
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise ValueError(f"index set {indices} is not strictly increasing")


def _merge_indices(left: IndexSet, right: IndexSet):
    """Sort the concatenation of two increasing index sets.

    Returns (sign, merged) or None when an index repeats.
    """
    merged = []
    sign = 1
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] == right[j]:
            return None
        if left[i] < right[j]:
            merged.append(left[i])
            i += 1
        else:
            # right[j] jumps over the remaining left entries
            if (len(left) - i) % 2:
                sign = -sign
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return sign, tuple(merged)


def _remove_index(idx: int, indices: IndexSet):
    """Contract one index: (sign, remaining) or None when idx is absent."""
    try:
        pos = indices.index(idx)
    except ValueError:
        return None
    sign = -1 if pos % 2 else 1
    return sign, indices[:pos] + indices[pos + 1:]


class _Graded:
    """Shared container for multivectors and forms of grade >= 1."""

    __slots__ = ("n", "grade", "comps")

    def __init__(self, n: int, grade: int, comps: Dict[IndexSet, CPoly] | None = None):
        if not 1 <= grade <= n:
            raise ValueError(f"grade {grade} out of range 1..{n}")
        self.n = n
        self.grade = grade
        clean: Dict[IndexSet, CPoly] = {}
        if comps:
            for indices, poly in comps.items():
                indices = tuple(indices)
                _check_index_set(indices, grade, n)
                if poly.nvars != n:
                    raise ValueError("component variable count differs from dimension")
                if poly:
                    clean[indices] = clean[indices] + poly if indices in clean else poly
                    if not clean[indices]:
                        del clean[indices]
        self.comps = clean

    def component(self, indices: IndexSet) -> CPoly:
        return self.comps.get(tuple(indices), CPoly.zero(self.n))

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.grade == other.grade and self.comps == other.comps

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.grade, frozenset(self.comps.items())))

    def __add__(self, other):
        if type(other) is not type(self) or other.n != self.n or other.grade != self.grade:
            raise ValueError("can only add matching graded objects")
        out = dict(self.comps)
        for k, v in other.comps.items():
            acc = out.get(k, CPoly.zero(self.n)) + v
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        return type(self)(self.n, self.grade, out)

    def __neg__(self):
        return type(self)(self.n, self.grade, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, poly_or_scalar):
        if isinstance(poly_or_scalar, CPoly):
            factor = poly_or_scalar
        else:
            factor = CPoly.const(self.n, poly_or_scalar)
        return type(self)(self.n, self.grade, {k: v * factor for k, v in self.comps.items()})

    def __repr__(self):
        body = ", ".join(f"{k}: {v.format()}" for k, v in sorted(self.comps.items()))
        return f"{type(self).__name__}(n={self.n}, grade={self.grade}, {{{body}}})"


class Multivector(_Graded):
    """Skew-symmetric contravariant tensor with polynomial components."""

    __slots__ = ()

    @classmethod
    def from_field(cls, field: "VectorField") -> "Multivector":
        return cls(field.n, 1, {(i,): field.components[i - 1] for i in range(1, field.n + 1)})

    def to_field(self) -> "VectorField":
        if self.grade != 1:
            raise ValueError("only grade-1 multivectors convert to vector fields")
        return VectorField(self.n, [self.component((i,)) for i in range(1, self.n + 1)])


class Form(_Graded):
    """Holomorphic differential form with polynomial components."""

    __slots__ = ()


class VectorField:
    """Holomorphic vector field: one CPoly component per coordinate."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Iterable[CPoly]):
        components = list(components)
        if len(components) != n:
            raise ValueError(f"expected {n} components, got {len(components)}")
        for comp in components:
            if comp.nvars != n:
                raise ValueError("component variable count differs from dimension")
        self.n = n
        self.components = components

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls(n, [CPoly.zero(n) for _ in range(n)])

    @classmethod
    def coordinate(cls, n: int, index: int) -> "VectorField":
        comps = [CPoly.zero(n) for _ in range(n)]
        comps[index - 1] = CPoly.const(n, 1)
        return cls(n, comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        return hash((self.n, tuple(self.components)))

    def __add__(self, other):
        self._check(other)
        return VectorField(self.n, [a + b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.n, [-c for c in self.components])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, poly_or_scalar) -> "VectorField":
        if isinstance(poly_or_scalar, CPoly):
            factor = poly_or_scalar
        else:
            factor = CPoly.const(self.n, poly_or_scalar)
        return VectorField(self.n, [c * factor for c in self.components])

    def _check(self, other):
        if not isinstance(other, VectorField) or other.n != self.n:
            raise ValueError("dimension mismatch between vector fields")

    def __repr__(self):
        return f"VectorField({self.n}, [{', '.join(c.format() for c in self.components)}])"


class VolumeForm:
    """Constant-weight top form: weight * dz1 ^ ... ^ dzn with weight != 0."""

    __slots__ = ("n", "weight")

    def __init__(self, n: int, weight=1):
        weight = GaussianRational.coerce(weight)
        if not weight:
            raise ValueError("volume form weight must be nonzero")
        self.n = n
        self.weight = weight

    def __repr__(self):
        return f"VolumeForm(n={self.n}, weight={self.weight})"


# ---------------------------------------------------------------------------
# vector-field level operations
# ---------------------------------------------------------------------------


def apply_field(field: VectorField, f: CPoly) -> CPoly:
    """Derivative of f along the field: sum of Z^i * df/dz^i."""
    if f.nvars != field.n:
        raise ValueError("dimension mismatch between field and function")
    out = CPoly.zero(field.n)
    for i, comp in enumerate(field.components, start=1):
        if comp:
            out = out + comp * f.diff(i)
    return out


def lie_bracket(z: VectorField, w: VectorField) -> VectorField:
    z._check(w)
    comps = []
    for k in range(1, z.n + 1):
        acc = CPoly.zero(z.n)
        for i in range(1, z.n + 1):
            acc = acc + z.components[i - 1] * w.components[k - 1].diff(i)
            acc = acc - w.components[i - 1] * z.components[k - 1].diff(i)
        comps.append(acc)
    return VectorField(z.n, comps)


def divergence(field: VectorField, omega: VolumeForm) -> CPoly:
    """Trace of the Jacobian; the constant volume weight cancels exactly."""
    if field.n != omega.n:
        raise ValueError("dimension mismatch between field and volume form")
    out = CPoly.zero(field.n)
    for i, comp in enumerate(field.components, start=1):
        out = out + comp.diff(i)
    return out


# ---------------------------------------------------------------------------
# forms: wedge, exterior derivative, interior product
# ---------------------------------------------------------------------------

GradedOrScalar = Union[_Graded, CPoly]


def wedge(a: GradedOrScalar, b: GradedOrScalar):
    """Wedge product of two forms or two multivectors (scalars act by product)."""
    if isinstance(a, CPoly) and isinstance(b, CPoly):
        return a * b
    if isinstance(a, CPoly):
        return b.scale(a)
    if isinstance(b, CPoly):
        return a.scale(b)
    if type(a) is not type(b) or a.n != b.n:
        raise ValueError("wedge needs matching object kinds and dimensions")
    grade = a.grade + b.grade
    if grade > a.n:
        # identically zero beyond the top grade; keep an empty top container
        return type(a)(a.n, a.n, {})
    out: Dict[IndexSet, CPoly] = {}
    for ka, va in a.comps.items():
        for kb, vb in b.comps.items():
            merged = _merge_indices(ka, kb)
            if merged is None:
                continue
            sign, key = merged
            term = va * vb if sign > 0 else -(va * vb)
            acc = out.get(key, CPoly.zero(a.n)) + term
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return type(a)(a.n, grade, out)


def partial_d(phi: GradedOrScalar) -> Form:
    """Holomorphic exterior derivative of a form (a CPoly counts as a 0-form)."""
    if isinstance(phi, CPoly):
        nv = phi.nvars
        return Form(nv, 1, {(i,): phi.diff(i) for i in range(1, nv + 1)})
    if phi.grade >= phi.n:
        raise ValueError("exterior derivative of a top-grade form is zero by degree")
    out: Dict[IndexSet, CPoly] = {}
    for key, poly in phi.comps.items():
        for i in range(1, phi.n + 1):
            d = poly.diff(i)
            if not d:
                continue
            merged = _merge_indices((i,), key)
            if merged is None:
                continue
            sign, newkey = merged
            term = d if sign > 0 else -d
            acc = out.get(newkey, CPoly.zero(phi.n)) + term
            if acc:
                out[newkey] = acc
            else:
                out.pop(newkey, None)
    return Form(phi.n, phi.grade + 1, out)


def interior_product(a, phi):
    """Contraction of a multivector into a form.

    Accepts a VectorField, Multivector, or CPoly on the left and a Form or
    CPoly on the right.  The result grade is phi.grade - a.grade; a scalar
    (CPoly) is returned at grade 0 and the zero scalar below grade 0.
    """
    if isinstance(a, VectorField):
        a = Multivector.from_field(a)
    if isinstance(a, CPoly):
        if isinstance(phi, CPoly):
            return a * phi
        return phi.scale(a)
    if isinstance(phi, CPoly):
        return CPoly.zero(a.n)
    if a.n != phi.n:
        raise ValueError("dimension mismatch in interior product")
    if a.grade > phi.grade:
        return CPoly.zero(a.n)
    result_grade = phi.grade - a.grade
    out: Dict[IndexSet, CPoly] = {}
    scalar = CPoly.zero(a.n)
    for ka, va in a.comps.items():
        for kf, vf in phi.comps.items():
            sign = 1
            rest = kf
            ok = True
            for idx in ka:  # contract the lowest factor first
                removed = _remove_index(idx, rest)
                if removed is None:
                    ok = False
                    break
                s, rest = removed
                sign *= s
            if not ok:
                continue
            term = va * vf if sign > 0 else -(va * vf)
            if result_grade == 0:
                scalar = scalar + term
            else:
                acc = out.get(rest, CPoly.zero(a.n)) + term
                if acc:
                    out[rest] = acc
                else:
                    out.pop(rest, None)
    if result_grade == 0:
        return scalar
    return Form(a.n, result_grade, out)


def pairing(phi: Form, a) -> CPoly:
    """Duality pairing of a form with an equal-grade multivector.

    Matching increasing basis sets pair to +1 (determinant convention).
    """
    if isinstance(a, VectorField):
        a = Multivector.from_field(a)
    if isinstance(phi, CPoly) or isinstance(a, CPoly):
        if isinstance(phi, CPoly) and isinstance(a, CPoly):
            return phi * a
        raise ValueError("pairing needs equal grades and dimensions")
    if phi.grade != a.grade or phi.n != a.n:
        raise ValueError("pairing needs equal grades and dimensions")
    out = CPoly.zero(phi.n)
    for key, poly in phi.comps.items():
        other = a.comps.get(key)
        if other is not None:
            out = out + poly * other
    return out


# ---------------------------------------------------------------------------
# volume-form isomorphisms and the curl operator
# ---------------------------------------------------------------------------


def flat(a, omega: VolumeForm):
    """Lower a multivector to a form by contracting into the volume form."""
    if isinstance(a, VectorField):
        a = Multivector.from_field(a)
    n = omega.n
    top = Form(n, n, {tuple(range(1, n + 1)): CPoly.const(n, omega.weight)})
    if isinstance(a, CPoly):
        return top.scale(a)
    if a.n != n:
        raise ValueError("dimension mismatch with volume form")
    return interior_product(a, top)


def _basis_flat_sign(indices: IndexSet, n: int) -> Tuple[int, IndexSet]:
    """Sign s and complement K with flat(d_I basis multivector) = s * weight * dz^K."""
    sign = 1
    rest = tuple(range(1, n + 1))
    for idx in indices:
        s, rest = _remove_index(idx, rest)
        sign *= s
    return sign, rest


def sharp(phi, omega: VolumeForm):
    """Inverse of flat: raise an (n-p)-form to a p-multivector."""
    n = omega.n
    inv_weight = GaussianRational(1) / omega.weight
    if isinstance(phi, CPoly):
        # 0-form -> top multivector
        return Multivector(n, n, {tuple(range(1, n + 1)): phi.scale(inv_weight)})
    if phi.n != n:
        raise ValueError("dimension mismatch with volume form")
    grade = n - phi.grade
    full = set(range(1, n + 1))
    if grade == 0:
        key = tuple(range(1, n + 1))
        return phi.component(key).scale(inv_weight)
    out: Dict[IndexSet, CPoly] = {}
    for key, poly in phi.comps.items():
        indices = tuple(sorted(full - set(key)))
        sign, complement = _basis_flat_sign(indices, n)
        if complement != key:
            raise AssertionError("complement bookkeeping is inconsistent")
        coeff = inv_weight if sign > 0 else -inv_weight
        out[indices] = poly.scale(coeff)
    return Multivector(n, grade, out)


def curl(a, omega: VolumeForm):
    """Volume-form curl: sharp after exterior derivative after flat.

    Grade-1 input returns the divergence as a scalar; the constant weight
    cancels between flat and sharp.
    """
    if isinstance(a, VectorField):
        a = Multivector.from_field(a)
    if isinstance(a, CPoly):
        raise ValueError("curl needs grade >= 1")
    lowered = flat(a, omega)
    return sharp(partial_d(lowered), omega)


# ---------------------------------------------------------------------------
# scaled and twisted exterior derivatives
# ---------------------------------------------------------------------------


def scaled_partial_d(alpha: CPoly, phi: GradedOrScalar) -> Form:
    """Numerator of the alpha-scaled derivative: the exterior derivative of alpha*phi.

    The caller tests the result against zero; dividing back by alpha is never
    needed for the closedness predicates.
    """
    if alpha.is_zero():
        raise ValueError("scaling function must be nonzero")
    if isinstance(phi, CPoly):
        return partial_d(alpha * phi)
    return partial_d(phi.scale(alpha))


def twisted_partial_d(f: CPoly, k: int, phi: GradedOrScalar) -> Form:
    """Degree-weighted twisted derivative: f * d(phi) - (p - k) * df ^ phi."""
    if isinstance(phi, CPoly):
        d_phi = partial_d(phi).scale(f)
        if k == 0:
            return d_phi
        return d_phi + partial_d(f).scale(phi).scale(k)
    p = phi.grade
    if p == phi.n:
        # both d(phi) and df ^ phi overflow the top grade
        return Form(phi.n, p, {})
    out = partial_d(phi).scale(f)
    if p != k:
        correction = wedge(partial_d(f), phi).scale(p - k)
        out = out - correction
    return out
