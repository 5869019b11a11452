"""Exact integer and polynomial linear algebra for knot invariants.

Matrices are plain lists of integer rows. Everything here is exact except
the floating point eigenvalue guard of :func:`hermitian_signature`, which only
decides whether a sample point is too close to a jump of the signature
function; the signature itself is counted in exact arithmetic whenever the
form is small enough (see ``settings.numerics.exactSizeLimit``).
"""

import math
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict

from libknots.config import settings
from libknots.errors import NearSingular, NonSquare, SymmetryError
from libknots.util import logger

IntMatrix = list[list[int]]

_T = sympy.Symbol("t")
_X = sympy.Symbol("x")


def shape(A: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def _require_square(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    if any(len(row) != n for row in A):
        raise NonSquare(f"expected a square matrix, got {n} rows of lengths {sorted({len(r) for r in A})}")
    return n


# --- Smith normal form ---
class SNFResult(BaseModel):
    """``U @ A @ W == D`` with unimodular U, W and a divisibility chain on D."""

    D: IntMatrix
    U: IntMatrix
    W: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        rows, cols = shape(self.D)
        return [self.D[i][i] for i in range(min(rows, cols))]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFResult:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    D = [list(map(int, row)) for row in A]
    U = identity(rows)
    W = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in W:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        D[target] = [a + factor * b for a, b in zip(D[target], D[source])]
        U[target] = [a + factor * b for a, b in zip(U[target], U[source])]

    def add_col(target: int, source: int, factor: int) -> None:
        for row in D:
            row[target] += factor * row[source]
        for row in W:
            row[target] += factor * row[source]

    for t in range(min(rows, cols)):
        while True:
            entries = [
                (abs(D[i][j]), i, j)
                for i in range(t, rows)
                for j in range(t, cols)
                if D[i][j]
            ]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            pivot = D[t][t]

            clean = True
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // pivot))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // pivot))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue

            # the pivot has to divide the rest of the block
            offender = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if D[i][j] % pivot
                ),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)

        if t < rows and t < cols and D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]

    return SNFResult(D=D, U=U, W=W)


def det_exact(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = _require_square(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, previous = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // previous
        previous = M[k][k]
    return sign * M[n - 1][n - 1]


# --- Laurent polynomials ---
class LaurentPoly(BaseModel):
    """Integer Laurent polynomial ``sum(coeffs[i] * t**(low + i))``."""

    model_config = ConfigDict(frozen=True)

    low: int = 0
    coeffs: tuple[int, ...] = ()

    @classmethod
    def new(cls, low: int, coeffs: Sequence[int]) -> "LaurentPoly":
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            low += 1
        return cls(low=low if coeffs else 0, coeffs=tuple(coeffs))

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(low=0, coeffs=(1,))

    @classmethod
    def symmetric(cls, coeffs: Sequence[int]) -> "LaurentPoly":
        if len(coeffs) % 2 == 0:
            raise SymmetryError(f"a symmetric coefficient list has odd length, got {list(coeffs)}")
        return cls.new(-(len(coeffs) // 2), coeffs)

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_symmetric(self) -> bool:
        return self.coeffs == self.coeffs[::-1] and self.low == -self.high

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return LaurentPoly.new(self.low + other.low, product)

    def __call__(self, t):
        return sum(c * t ** (self.low + i) for i, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in reversed(range(len(self.coeffs))):
            c, e = self.coeffs[i], self.low + i
            if c == 0:
                continue
            mag = abs(c)
            body = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            term = f"{mag}{body}" if (mag != 1 or not body) else body
            if not terms:
                terms.append(term if c > 0 else f"-{term}")
            else:
                terms.append(f"{'+' if c > 0 else '-'} {term}")
        return " ".join(terms)


def alexander_from_seifert(V: Sequence[Sequence[int]]) -> LaurentPoly:
    """det(V - t V^T), shifted to a symmetric Laurent polynomial with value 1 at t = 1."""
    m = _require_square(V)
    if m == 0:
        return LaurentPoly.one()
    Vt = transpose(V)
    points = []
    for t in range(m + 1):
        values = [[V[i][j] - t * Vt[i][j] for j in range(m)] for i in range(m)]
        points.append((t, det_exact(values)))
    poly = sympy.Poly(sympy.interpolate(points, _T), _T)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    raw = LaurentPoly.new(0, coeffs)
    if raw.is_zero():
        raise SymmetryError("det(V - tV^T) vanishes identically")

    span = raw.high - raw.low
    if span % 2:
        raise SymmetryError(f"det(V - tV^T) has odd span {span}", coeffs=coeffs)
    delta = LaurentPoly.new(-span // 2, raw.coeffs)
    if sum(delta.coeffs) < 0:
        delta = LaurentPoly.new(delta.low, [-c for c in delta.coeffs])
    return delta


# --- unit circle roots ---
class UnitRoot(BaseModel):
    """A root e^{i theta} of a symmetric polynomial with theta in (0, pi].

    ``lo``/``hi`` isolate x = 2 cos(theta) as a root of the irreducible
    integer polynomial ``factor`` (coefficients, highest degree first).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    theta: float
    lo: Fraction
    hi: Fraction
    factor: tuple[int, ...]
    multiplicity: int = 1

    @property
    def rational(self) -> Fraction | None:
        if len(self.factor) != 2:
            return None
        a, b = self.factor
        return Fraction(-b, a)


def compact_form(p: LaurentPoly) -> sympy.Poly:
    """Return g with p(t) = g(t + 1/t) for a symmetric Laurent polynomial p."""
    if not p.is_symmetric():
        raise SymmetryError(f"{p} is not symmetric under t -> 1/t")
    f = sympy.Poly(list(reversed(p.coeffs)) or [0], _T, domain="ZZ")
    g = sympy.Poly(0, _X, domain="ZZ")
    while not f.is_zero:
        c = f.LC()
        d = f.degree() // 2
        g += sympy.Poly(c * _X**d, _X, domain="ZZ")
        f = f - sympy.Poly(c * (_T**2 + 1) ** d, _T, domain="ZZ")
        if not f.is_zero:
            lowest = min(monom[0] for monom in f.monoms())
            f = f.exquo(sympy.Poly(_T**lowest, _T, domain="ZZ"))
    return g


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def isolate_unit_roots(p: LaurentPoly) -> list[UnitRoot]:
    g = compact_form(p)
    if g.degree() <= 0:
        return []
    eps = sympy.Rational(1, 2**settings.numerics.rootPrecisionBits)
    roots = []
    _, factors = g.factor_list()
    for factor, multiplicity in factors:
        for (lo, hi), _ in factor.intervals(eps=eps, inf=-2, sup=2):
            lo, hi = _to_fraction(lo), _to_fraction(hi)
            if lo == hi == 2:
                continue
            x = float(lo + hi) / 2
            roots.append(
                UnitRoot(
                    theta=math.acos(max(-1.0, min(1.0, x / 2))),
                    lo=lo,
                    hi=hi,
                    factor=tuple(int(c) for c in factor.all_coeffs()),
                    multiplicity=multiplicity,
                )
            )
    return sorted(roots, key=lambda root: root.theta)


def unit_circle_roots(p: LaurentPoly) -> list[float]:
    """Angles theta in (0, pi] with p(e^{i theta}) = 0, ascending."""
    return [root.theta for root in isolate_unit_roots(p)]


# --- exact inertia ---
class _Rationals:
    zero = Fraction(0)

    def const(self, value) -> Fraction:
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def sign(self, a) -> int:
        return (a > 0) - (a < 0)


class _RootField:
    """Arithmetic in Q[x]/(f) at the real root of f isolated by (lo, hi)."""

    def __init__(self, factor: Sequence[int], lo: Fraction, hi: Fraction) -> None:
        self.f = sympy.Poly(list(factor), _X, domain="QQ")
        self.lo = sympy.Rational(lo.numerator, lo.denominator)
        self.hi = sympy.Rational(hi.numerator, hi.denominator)
        self.zero = sympy.Poly(0, _X, domain="QQ")
        self.x = sympy.Poly(_X, _X, domain="QQ").rem(self.f)

    def const(self, value) -> sympy.Poly:
        value = Fraction(value)
        return sympy.Poly(sympy.Rational(value.numerator, value.denominator), _X, domain="QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return (a * b).rem(self.f)

    def div(self, a, b):
        return (a * b.invert(self.f)).rem(self.f)

    def is_zero(self, a) -> bool:
        return a.is_zero

    def sign(self, a) -> int:
        # a does not vanish at the root, so it has constant sign on a small enough interval
        while a.count_roots(self.lo, self.hi) > 0:
            mid = (self.lo + self.hi) / 2
            if sympy.sign(self.f.eval(mid)) == sympy.sign(self.f.eval(self.lo)):
                self.lo = mid
            else:
                self.hi = mid
        return int(sympy.sign(a.eval(self.lo)))


def _inertia(A: list[list], field) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix by congruence."""
    A = [row[:] for row in A]
    n = len(A)
    positive = negative = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if not field.is_zero(A[i][i])), None)
        if k is None:
            pair = next(
                (
                    (i, j)
                    for i in active
                    for j in active
                    if i < j and not field.is_zero(A[i][j])
                ),
                None,
            )
            if pair is None:
                break
            i, j = pair
            # e_i += e_j makes the diagonal entry 2 A[i][j]
            for l in active:
                A[i][l] = field.add(A[i][l], A[j][l])
            for l in active:
                A[l][i] = field.add(A[l][i], A[l][j])
            k = i

        pivot = A[k][k]
        if field.sign(pivot) > 0:
            positive += 1
        else:
            negative += 1
        active.remove(k)
        for i in active:
            if field.is_zero(A[i][k]):
                continue
            factor = field.div(A[i][k], pivot)
            for j in active:
                if not field.is_zero(A[k][j]):
                    A[i][j] = field.sub(A[i][j], field.mul(factor, A[k][j]))
    return positive, negative, len(active)


def signature_exact(A: Sequence[Sequence]) -> int:
    """Signature of a rational symmetric matrix (zero eigenvalues allowed)."""
    _require_square(A)
    field = _Rationals()
    positive, negative, _ = _inertia([[Fraction(a) for a in row] for row in A], field)
    return positive - negative


def _realified(V: Sequence[Sequence[int]], c, field) -> list[list]:
    """Real symmetric form whose signature is twice that of M(omega), cos(omega) = c.

    With S = V + V^T and K = V - V^T the Hermitian form M = (1 - c) S - i sin K
    realises to [[(1-c)S, sK], [-sK, (1-c)S]]; scaling the second block by s and
    dividing by 1 - c > 0 removes the square root.
    """
    m = len(V)
    one = field.const(1)
    upper = field.add(one, c)
    lower = field.sub(one, field.mul(c, c))
    R = [[field.zero] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        for j in range(m):
            s = V[i][j] + V[j][i]
            k = V[i][j] - V[j][i]
            R[i][j] = field.const(s)
            R[m + i][m + j] = field.mul(lower, field.const(s))
            R[i][m + j] = field.mul(upper, field.const(k))
            R[m + i][j] = field.mul(upper, field.const(-k))
    return R


def hermitian_matrix(V: Sequence[Sequence[int]], theta: float) -> np.ndarray:
    A = np.array(V, dtype=float).reshape(len(V), len(V))
    omega = complex(math.cos(theta), math.sin(theta))
    return (1 - omega) * A + (1 - omega.conjugate()) * A.T


def _guard(V: Sequence[Sequence[int]], theta: float) -> np.ndarray:
    M = hermitian_matrix(V, theta)
    eigenvalues = np.linalg.eigvalsh(M)
    tolerance = np.abs(M).sum(axis=0).max() * 2.0 ** -settings.numerics.singularToleranceBits
    smallest = float(np.min(np.abs(eigenvalues)))
    if smallest < tolerance:
        raise NearSingular(
            f"form is numerically singular at theta={theta:.12g}",
            theta=theta,
            smallest=smallest,
            tolerance=float(tolerance),
        )
    return eigenvalues


def signature_at_cos(V: Sequence[Sequence[int]], c: Fraction) -> int:
    """Signature of M(omega) for omega in the upper half plane with cos = c, -1 <= c < 1.

    Raises NearSingular when the form is singular at omega.
    """
    m = _require_square(V)
    if m == 0:
        return 0
    if not -1 <= c < 1:
        raise NearSingular(f"cos(theta) = {c} is not inside [-1, 1)", cos=str(c))
    if m > settings.numerics.exactSizeLimit:
        eigenvalues = _guard(V, math.acos(float(c)))
        return int(np.sum(eigenvalues > 0) - np.sum(eigenvalues < 0))

    field = _Rationals()
    if c == -1:
        S = [[Fraction(V[i][j] + V[j][i]) for j in range(m)] for i in range(m)]
        positive, negative, nullity = _inertia(S, field)
    else:
        positive, negative, nullity = _inertia(_realified(V, c, field), field)
        positive, negative, nullity = positive // 2, negative // 2, nullity // 2
    if nullity:
        raise NearSingular(f"form is singular at cos(theta) = {c}", cos=str(c), nullity=nullity)
    return positive - negative


def hermitian_signature(V: Sequence[Sequence[int]], theta: float) -> int:
    """Signature of (1 - w) V + (1 - w̄) V^T for w = e^{i theta}.

    Raises NearSingular when the sample sits on a jump.
    """
    theta = math.fmod(theta, 2 * math.pi)
    if theta < 0:
        theta += 2 * math.pi
    if theta == 0:
        raise NearSingular("the form vanishes at theta = 0", theta=theta)
    if theta > math.pi:
        theta = 2 * math.pi - theta
    c = Fraction(-1) if theta == math.pi else Fraction(math.cos(theta)).limit_denominator(2**30)
    return signature_at_cos(V, c)


def hermitian_signature_at_root(V: Sequence[Sequence[int]], root: UnitRoot) -> int:
    """Signature of the (singular) form exactly at a root of the Alexander polynomial."""
    m = _require_square(V)
    if m == 0:
        return 0
    if m > settings.numerics.exactSizeLimit:
        return _numeric_signature_at(V, root.theta)

    rational = root.rational
    if rational is not None:
        field = _Rationals()
        c = rational / 2
    else:
        field = _RootField(root.factor, root.lo, root.hi)
        c = field.mul(field.x, field.const(Fraction(1, 2)))
    positive, negative, nullity = _inertia(_realified(V, c, field), field)
    logger.debug(f"Form at theta={root.theta:.6f} has nullity {nullity // 2}")
    return (positive - negative) // 2


def _numeric_signature_at(V: Sequence[Sequence[int]], theta: float) -> int:
    M = hermitian_matrix(V, theta)
    eigenvalues = np.linalg.eigvalsh(M)
    norm = float(np.abs(M).sum(axis=0).max())
    zero = norm * len(V) * 1e-9
    gap = norm * 1e-5
    ambiguous = [e for e in eigenvalues if zero < abs(e) < gap]
    if ambiguous:
        raise NearSingular(
            f"cannot separate the kernel of the form at theta={theta:.12g}",
            theta=theta,
        )
    return int(sum(1 for e in eigenvalues if e > zero) - sum(1 for e in eigenvalues if e < -zero))
