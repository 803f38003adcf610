"""Exact arithmetic in the Clifford algebra Cl(3) of Euclidean 3-space.

The algebra is 8-dimensional over the reals.  A multivector is stored as a
coefficient tuple over the fixed basis

    index  0    1    2    3    4      5      6      7
    blade  1    ex   ey   ez   ex ey  ey ez  ez ex  I = ex ey ez

with a right-handed orthonormal frame, so every basis vector squares to +1
and the pseudoscalar I squares to -1 and commutes with everything.  The
cyclic bivector ordering is chosen so that multiplication by I carries
ex -> ey ez, ey -> ez ex, ez -> ex ey without extra signs.

Products are driven by an 8x8 sign-and-index table built once from integer
blade arithmetic, so multivectors with coefficients in {-1, 0, +1} multiply
exactly; nothing here depends on floating-point rearrangement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

Vec3 = tuple[float, float, float]

BASIS_LABELS = ("s", "ex", "ey", "ez", "exy", "eyz", "ezx", "I")

# Basis blades as tuples of generator indices (0=x, 1=y, 2=z), in the
# order they are multiplied.  Index 6 is deliberately stored as ez ex.
_BLADES = ((), (0,), (1,), (2,), (0, 1), (1, 2), (2, 0), (0, 1, 2))

GRADES = (0, 1, 1, 1, 2, 2, 2, 3)

COEFF_TOL = 1e-12


def _sort_with_sign(indices: list[int]) -> tuple[tuple[int, ...], int]:
    """Bubble-sort generator indices, tracking the anticommutation sign and
    contracting adjacent equal generators (metric +1)."""
    sign = 1
    work = list(indices)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(work) - 1:
            if work[i] == work[i + 1]:
                del work[i + 1], work[i]
                changed = True
            elif work[i] > work[i + 1]:
                work[i], work[i + 1] = work[i + 1], work[i]
                sign = -sign
                changed = True
                i += 1
            else:
                i += 1
    return tuple(work), sign


def _build_product_table() -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    canon_to_basis: dict[tuple[int, ...], tuple[int, int]] = {}
    for idx, blade in enumerate(_BLADES):
        canon, sign = _sort_with_sign(list(blade))
        # e_blade = sign * e_canon, hence e_canon = sign * e_blade.
        canon_to_basis[canon] = (idx, sign)

    index_rows, sign_rows = [], []
    for bi in _BLADES:
        idx_row, sgn_row = [], []
        for bj in _BLADES:
            canon, sign = _sort_with_sign(list(bi) + list(bj))
            k, adjust = canon_to_basis[canon]
            idx_row.append(k)
            sgn_row.append(sign * adjust)
        index_rows.append(tuple(idx_row))
        sign_rows.append(tuple(sgn_row))
    return tuple(index_rows), tuple(sign_rows)


PRODUCT_INDEX, PRODUCT_SIGN = _build_product_table()


@dataclass(frozen=True)
class Multivector:
    """Immutable element of Cl(3) as 8 real coefficients."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) != 8:
            raise ValueError(f"expected 8 coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Multivector":
        return Multivector((0.0,) * 8)

    @staticmethod
    def scalar(value: float) -> "Multivector":
        return Multivector((float(value), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0))

    @staticmethod
    def from_vector(v: Sequence[float]) -> "Multivector":
        x, y, z = v
        return Multivector((0.0, float(x), float(y), float(z), 0.0, 0.0, 0.0, 0.0))

    @staticmethod
    def pseudoscalar(value: float = 1.0) -> "Multivector":
        return Multivector((0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, float(value)))

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "Multivector") -> "Multivector":
        return Multivector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Multivector") -> "Multivector":
        return Multivector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Multivector":
        return Multivector(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(tuple(a * other for a in self.coeffs))

    def __rmul__(self, other):
        return Multivector(tuple(other * a for a in self.coeffs))

    def __truediv__(self, divisor: float) -> "Multivector":
        return Multivector(tuple(a / divisor for a in self.coeffs))

    # -- structure maps ----------------------------------------------------

    def grade(self, k: int) -> "Multivector":
        return Multivector(tuple(c if GRADES[i] == k else 0.0 for i, c in enumerate(self.coeffs)))

    def reverse(self) -> "Multivector":
        # grade k picks up (-1)^(k(k-1)/2): grades 0,1 fixed, 2,3 negated.
        signs = (1, 1, 1, 1, -1, -1, -1, -1)
        return Multivector(tuple(s * c for s, c in zip(signs, self.coeffs)))

    def dual(self) -> "Multivector":
        """Right multiplication by I^-1 = -I; swaps vectors and bivectors."""
        return geometric_product(self, Multivector.pseudoscalar(-1.0))

    @property
    def scalar_part(self) -> float:
        return self.coeffs[0]

    def vector_part(self) -> Vec3:
        return (self.coeffs[1], self.coeffs[2], self.coeffs[3])

    def max_abs_coeff(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def coeff_norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.coeffs))

    def approx_eq(self, other: "Multivector", tol: float = COEFF_TOL) -> bool:
        return all(abs(a - b) <= tol for a, b in zip(self.coeffs, other.coeffs))

    def is_zero(self, tol: float = COEFF_TOL) -> bool:
        return self.max_abs_coeff() <= tol

    def render(self) -> str:
        """Debug rendering: "<coeff>·<blade>" terms in basis order, 12
        significant digits, zero terms omitted, all-zero printed as "0"."""
        parts = []
        for coeff, label in zip(self.coeffs, BASIS_LABELS):
            if coeff == 0.0:
                continue
            parts.append((coeff, label))
        if not parts:
            return "0"
        out = []
        for pos, (coeff, label) in enumerate(parts):
            mag = f"{abs(coeff):.12g}·{label}"
            if pos == 0:
                out.append(("-" if coeff < 0 else "") + mag)
            else:
                out.append(("- " if coeff < 0 else "+ ") + mag)
        return " ".join(out)

    def __str__(self) -> str:
        return self.render()


# Handy blade constants.
ONE = Multivector.scalar(1.0)
E_X = Multivector((0, 1, 0, 0, 0, 0, 0, 0))
E_Y = Multivector((0, 0, 1, 0, 0, 0, 0, 0))
E_Z = Multivector((0, 0, 0, 1, 0, 0, 0, 0))
E_XY = Multivector((0, 0, 0, 0, 1, 0, 0, 0))
E_YZ = Multivector((0, 0, 0, 0, 0, 1, 0, 0))
E_ZX = Multivector((0, 0, 0, 0, 0, 0, 1, 0))
I_BLADE = Multivector.pseudoscalar(1.0)
BASIS_BLADES = (ONE, E_X, E_Y, E_Z, E_XY, E_YZ, E_ZX, I_BLADE)


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    xc, yc = x.coeffs, y.coeffs
    acc = [0.0] * 8
    for i in range(8):
        xi = xc[i]
        if xi == 0.0:
            continue
        idx_row = PRODUCT_INDEX[i]
        sgn_row = PRODUCT_SIGN[i]
        for j in range(8):
            yj = yc[j]
            if yj == 0.0:
                continue
            acc[idx_row[j]] += sgn_row[j] * xi * yj
    return Multivector(tuple(acc))


def grade_project(x: Multivector, k: int) -> Multivector:
    return x.grade(k)


def dot(x: Multivector, y: Multivector) -> Multivector:
    """Grade-lowering inner product: per blade pair of grades r and s, keep
    the grade-|r - s| part of the geometric product, extended bilinearly.

    For a trivector m and a vector n this is the full product m n (a pure
    bivector), which is how the hidden-variable observable m . n is formed.
    """
    xc, yc = x.coeffs, y.coeffs
    acc = [0.0] * 8
    for i in range(8):
        xi = xc[i]
        if xi == 0.0:
            continue
        gi = GRADES[i]
        for j in range(8):
            yj = yc[j]
            if yj == 0.0:
                continue
            k = PRODUCT_INDEX[i][j]
            if GRADES[k] == abs(gi - GRADES[j]):
                acc[k] += PRODUCT_SIGN[i][j] * xi * yj
    return Multivector(tuple(acc))


def wedge(x: Multivector, y: Multivector) -> Multivector:
    """Grade-raising outer product: keep the grade-(r + s) part per blade
    pair; antisymmetric on vectors."""
    xc, yc = x.coeffs, y.coeffs
    acc = [0.0] * 8
    for i in range(8):
        xi = xc[i]
        if xi == 0.0:
            continue
        gi = GRADES[i]
        for j in range(8):
            yj = yc[j]
            if yj == 0.0:
                continue
            k = PRODUCT_INDEX[i][j]
            if GRADES[k] == gi + GRADES[j]:
                acc[k] += PRODUCT_SIGN[i][j] * xi * yj
    return Multivector(tuple(acc))


def dual(x: Multivector) -> Multivector:
    return x.dual()


def reverse(x: Multivector) -> Multivector:
    return x.reverse()


# -- vectors ---------------------------------------------------------------

UNIT_TOL = 1e-12


def unit_vector(components: Sequence[float]) -> Vec3:
    """Validate a 3-vector as unit length within 1e-12 and return a tuple."""
    x, y, z = (float(c) for c in components)
    norm = math.sqrt(x * x + y * y + z * z)
    if abs(norm - 1.0) > UNIT_TOL:
        raise ValueError(f"vector {components!r} has norm {norm!r}, expected 1")
    return (x, y, z)


def normalized(components: Sequence[float]) -> Vec3:
    x, y, z = (float(c) for c in components)
    norm = math.sqrt(x * x + y * y + z * z)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return (x / norm, y / norm, z / norm)


def cross_product(a: Sequence[float], b: Sequence[float]) -> Vec3:
    """Right-handed cross product; equals the grade-1 part of dual(a ^ b)."""
    ax, ay, az = (float(c) for c in a)
    bx, by, bz = (float(c) for c in b)
    return (ay * bz - az * by, az * bx - ax * bz, ax * by - ay * bx)


# -- quaternion even subalgebra ---------------------------------------------

# Images of the quaternion units inside the even subalgebra.  The reversed
# bivectors are used because (ey ez)(ez ex) = -(ex ey): mapping the plain
# cyclic bivectors onto i, j, k straight would only give an anti-isomorphism.
QUATERNION_IMAGES: Mapping[str, Multivector] = {
    "i": -E_YZ,
    "j": -E_ZX,
    "k": -E_XY,
}

_HAMILTON_SIGNS = {
    ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
    ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
    ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
    ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
}


def _hamilton(p: tuple[float, float, float, float],
              q: tuple[float, float, float, float]) -> tuple[float, float, float, float]:
    w1, x1, y1, z1 = p
    w2, x2, y2, z2 = q
    return (
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    )


def even_subalgebra_iso_check(samples: int,
                              rng=None,
                              images: Mapping[str, Multivector] = QUATERNION_IMAGES,
                              tol: float = COEFF_TOL) -> bool:
    """Check that the even subalgebra (grades 0 and 2) is the quaternions.

    Verifies that I is central on all 8 basis blades with I^2 = -1, that the
    unit images satisfy the full Hamilton table, and that the induced linear
    map intertwines the geometric product with quaternion multiplication on
    `samples` random even multivectors.  Returns False on any violation, so
    a deliberately swapped image map acts as a negative control.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")

    for blade in BASIS_BLADES:
        if not (geometric_product(I_BLADE, blade) - geometric_product(blade, I_BLADE)).is_zero(0.0):
            return False
    if not geometric_product(I_BLADE, I_BLADE).approx_eq(Multivector.scalar(-1.0), 0.0):
        return False

    units: dict[str, Multivector] = {"1": ONE, **images}
    for (na, nb), (sign, nc) in _HAMILTON_SIGNS.items():
        got = geometric_product(units[na], units[nb])
        if not got.approx_eq(sign * units[nc], tol):
            return False
    for name in ("i", "j", "k"):
        if not geometric_product(units["1"], units[name]).approx_eq(units[name], tol):
            return False

    def to_quaternion(m: Multivector) -> tuple[float, float, float, float]:
        # Solve m = w*1 + x*img(i) + y*img(j) + z*img(k) on the even slots.
        # Each default image is a single negated bivector blade, but accept
        # any map whose images are +-single blades so controls stay simple.
        comps = [0.0, 0.0, 0.0, 0.0]
        comps[0] = m.coeffs[0]
        for axis, name in enumerate(("i", "j", "k"), start=1):
            img = images[name]
            slot = max(range(8), key=lambda idx: abs(img.coeffs[idx]))
            comps[axis] = m.coeffs[slot] / img.coeffs[slot]
        return tuple(comps)

    if rng is None:
        import random

        rand = random.Random(20240 + samples)
        draw = lambda: rand.uniform(-1.0, 1.0)
    else:
        draw = lambda: float(rng.uniform(-1.0, 1.0))

    for _ in range(samples):
        u = ONE * draw() + sum((draw() * units[n] for n in ("i", "j", "k")), Multivector.zero())
        v = ONE * draw() + sum((draw() * units[n] for n in ("i", "j", "k")), Multivector.zero())
        lhs = to_quaternion(geometric_product(u, v))
        rhs = _hamilton(to_quaternion(u), to_quaternion(v))
        if any(abs(a - b) > tol for a, b in zip(lhs, rhs)):
            return False
    return True
