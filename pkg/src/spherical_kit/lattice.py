"""Exact linear feasibility, integer lattices and Hilbert bases.

Everything here works over ``Fraction`` and Python integers.  Two
feasibility solvers with the same contract are provided: ``feasible`` runs
phase one of a dense simplex with Bland's rule, ``feasible_oracle`` runs
Fourier-Motzkin elimination.  They share nothing but the problem type.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .errors import CapExceededError, SphericalKitError

GE1, GE0, FREE = "ge1", "ge0", "free"
GE, EQ = ">=0", "=0"

DEFAULT_CAP = 64


class NotInLatticeError(SphericalKitError, ValueError):
    pass


@dataclass(frozen=True)
class FeasibilityProblem:
    """Homogeneous linear constraints on ``n`` rational unknowns.

    ``lower[i]`` is one of ``"ge1"``, ``"ge0"``, ``"free"``.  Weak rows are
    ``(row, ">=0")`` or ``(row, "=0")``.  Strict rows are required to be
    ``> 0`` and are solved as ``>= 1``; since every row is homogeneous any
    solution can be rescaled, so nothing is lost.
    """

    n: int
    lower: tuple[str, ...] = ()
    weak_rows: tuple[tuple[tuple, str], ...] = ()
    strict_rows: tuple[tuple, ...] = ()

    def __post_init__(self):
        if not self.lower:
            object.__setattr__(self, "lower", (GE0,) * self.n)
        if len(self.lower) != self.n:
            raise ValueError("one lower bound per variable is required")
        for b in self.lower:
            if b not in (GE1, GE0, FREE):
                raise ValueError(f"unknown bound {b!r}")
        for row, rel in self.weak_rows:
            if len(row) != self.n or rel not in (GE, EQ):
                raise ValueError(f"bad weak row {row!r} {rel!r}")
        for row in self.strict_rows:
            if len(row) != self.n:
                raise ValueError(f"bad strict row {row!r}")

    def with_strict(self, row) -> "FeasibilityProblem":
        return FeasibilityProblem(self.n, self.lower, self.weak_rows, self.strict_rows + (tuple(row),))

    def satisfied_by(self, x) -> bool:
        if len(x) != self.n:
            return False
        for b, v in zip(self.lower, x):
            if (b == GE1 and v < 1) or (b == GE0 and v < 0):
                return False
        for row, rel in self.weak_rows:
            s = _dot(row, x)
            if (rel == GE and s < 0) or (rel == EQ and s != 0):
                return False
        return all(_dot(row, x) > 0 for row in self.strict_rows)

    def normalized_rows(self):
        """All constraints as ``(row, rhs, is_equality)`` meaning row.x >= rhs (or ==)."""
        out = []
        for i, b in enumerate(self.lower):
            if b != FREE:
                out.append((_unit(self.n, i), Fraction(1 if b == GE1 else 0), False))
        for row, rel in self.weak_rows:
            out.append((tuple(Fraction(v) for v in row), Fraction(0), rel == EQ))
        for row in self.strict_rows:
            out.append((tuple(Fraction(v) for v in row), Fraction(1), False))
        return out


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _unit(n, i):
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


# --------------------------------------------------------------------------
# simplex, phase one


def feasible(p: FeasibilityProblem) -> tuple[Fraction, ...] | None:
    """Return a rational point satisfying ``p`` or ``None``."""
    n = p.n
    # x_i = y_i + l_i for bounded variables, x_i = y_i+ - y_i- for free ones
    cols: list[tuple[int, int]] = []  # (variable, sign)
    for i, b in enumerate(p.lower):
        cols.append((i, 1))
        if b == FREE:
            cols.append((i, -1))
    shift = [Fraction(1) if b == GE1 else Fraction(0) for b in p.lower]

    rows, rhs, slack = [], [], []
    for row, rel in p.weak_rows:
        rows.append([Fraction(row[i]) * s for i, s in cols])
        rhs.append(-_dot(row, shift))
        slack.append(rel == GE)
    for row in p.strict_rows:
        rows.append([Fraction(row[i]) * s for i, s in cols])
        rhs.append(1 - _dot(row, shift))
        slack.append(True)

    m = len(rows)
    n_struct = len(cols)
    n_slack = sum(slack)
    # tableau columns: structural | surplus | artificial | rhs
    width = n_struct + n_slack + m + 1
    tab = []
    k = 0
    for r in range(m):
        line = rows[r] + [Fraction(0)] * (n_slack + m) + [Fraction(rhs[r])]
        if slack[r]:
            line[n_struct + k] = Fraction(-1)
            k += 1
        if line[-1] < 0:
            line = [-v for v in line]
        line[n_struct + n_slack + r] = Fraction(1)
        tab.append(line)
    basis = [n_struct + n_slack + r for r in range(m)]
    # objective: minimise the sum of artificials, stored as reduced costs
    obj = [Fraction(0)] * width
    for r in range(m):
        for c in range(width):
            obj[c] -= tab[r][c]
    for r in range(m):
        obj[n_struct + n_slack + r] = Fraction(0)

    while True:
        enter = next((c for c in range(width - 1) if obj[c] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for r in range(m):
            if tab[r][enter] > 0:
                ratio = tab[r][-1] / tab[r][enter]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:  # cannot happen in phase one (objective bounded below)
            break
        _pivot(tab, obj, leave, enter)
        basis[leave] = enter

    if obj[-1] != 0:
        return None
    y = [Fraction(0)] * n_struct
    for r, b in enumerate(basis):
        if b < n_struct:
            y[b] = tab[r][-1]
    x = list(shift)
    for (i, s), v in zip(cols, y):
        x[i] += s * v
    x = tuple(x)
    assert p.satisfied_by(x), "simplex produced an invalid witness"
    return x


def _pivot(tab, obj, r, c):
    piv = tab[r][c]
    tab[r] = [v / piv for v in tab[r]]
    for rr in range(len(tab)):
        if rr != r and tab[rr][c] != 0:
            f = tab[rr][c]
            tab[rr] = [a - f * b for a, b in zip(tab[rr], tab[r])]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [a - f * b for a, b in zip(obj, tab[r])]


# --------------------------------------------------------------------------
# Fourier-Motzkin


def _normalize_ineq(coeffs, rhs):
    """Scale ``coeffs.x >= rhs`` to coprime integers (positive scaling only)."""
    den = 1
    for v in list(coeffs) + [rhs]:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in coeffs]
    r = int(rhs * den)
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(ints), r
    return tuple(v // g for v in ints), Fraction(r, g)


def feasible_oracle(p: FeasibilityProblem) -> tuple[Fraction, ...] | None:
    """Same contract as ``feasible``, by Fourier-Motzkin elimination."""
    n = p.n
    ineqs = set()
    for row, rhs, is_eq in p.normalized_rows():
        ineqs.add(_normalize_ineq(row, rhs))
        if is_eq:
            ineqs.add(_normalize_ineq(tuple(-v for v in row), -rhs))
    stages = [None] * n
    current = ineqs
    for k in range(n - 1, -1, -1):
        stages[k] = current
        pos, neg, rest = [], [], set()
        for coeffs, rhs in current:
            c = coeffs[k]
            if c > 0:
                pos.append((coeffs, rhs))
            elif c < 0:
                neg.append((coeffs, rhs))
            else:
                rest.add((coeffs, rhs))
        for (pc, pr), (nc, nr) in itertools.product(pos, neg):
            a, b = pc[k], -nc[k]
            coeffs = tuple(Fraction(b * u + a * v) for u, v in zip(pc, nc))
            rest.add(_normalize_ineq(coeffs, Fraction(b * pr + a * nr)))
        current = rest
    for coeffs, rhs in current:
        if rhs > 0:
            return None
    x = [Fraction(0)] * n
    for k in range(n):
        lo, hi = None, None
        for coeffs, rhs in stages[k]:
            c = coeffs[k]
            if c == 0:
                continue
            bound = Fraction(rhs - sum(coeffs[j] * x[j] for j in range(k))) / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None:
            x[k] = lo
        elif hi is not None:
            x[k] = min(hi, Fraction(0))
        if lo is not None and hi is not None and lo > hi:
            raise AssertionError("Fourier-Motzkin back substitution failed")
    x = tuple(x)
    assert p.satisfied_by(x), "Fourier-Motzkin produced an invalid witness"
    return x


# --------------------------------------------------------------------------
# integer lattices


def rational_rank(vectors) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors or not vectors[0]:
        return 0
    return Matrix(vectors).rank()


def integer_kernel_basis(equations, n: int) -> list[tuple[int, ...]]:
    """A lattice basis of ``{x in Z^n : equations . x = 0}``.

    Unimodular column operations bring the equation matrix to column
    echelon form; the tracked transform's columns over zero columns span
    the kernel.
    """
    a = [list(map(int, row)) for row in equations if any(row)]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # columns are u[*][j]

    def colop(mat, j, k, q):  # col_j -= q col_k
        for row in mat:
            row[j] -= q * row[k]

    def swap(mat, j, k):
        for row in mat:
            row[j], row[k] = row[k], row[j]

    pivot_col = 0
    for row_idx in range(len(a)):
        if pivot_col >= n:
            break
        while True:
            nz = [j for j in range(pivot_col, n) if a[row_idx][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[row_idx][j]))
            if j0 != pivot_col:
                swap(a, j0, pivot_col)
                swap(u, j0, pivot_col)
            done = True
            for j in range(pivot_col + 1, n):
                q = a[row_idx][j] // a[row_idx][pivot_col]
                if q:
                    colop(a, j, pivot_col, q)
                    colop(u, j, pivot_col, q)
                if a[row_idx][j] != 0:
                    done = False
            if done:
                pivot_col += 1
                break
    return [tuple(u[i][j] for i in range(n)) for j in range(pivot_col, n)]


def _in_lattice(v, equations) -> bool:
    return all(_dot(row, v) == 0 for row in equations)


def is_lattice_basis(vectors, equations, n: int) -> bool:
    """Whether ``vectors`` freely generate ``{x in Z^n : equations . x = 0}``."""
    vectors = [tuple(int(c) for c in v) for v in vectors]
    for v in vectors:
        if len(v) != n or not _in_lattice(v, equations):
            raise NotInLatticeError(f"vector {v} is not in the lattice")
    eq_rank = rational_rank([list(r) for r in equations]) if equations else 0
    lattice_rank = n - eq_rank
    if len(vectors) != lattice_rank:
        return False
    if lattice_rank == 0:
        return True
    if rational_rank(vectors) != lattice_rank:
        return False
    # independent vectors spanning the right space generate the saturated
    # lattice exactly when the elementary divisors are all 1
    factors = invariant_factors(Matrix(vectors), domain=ZZ)
    return all(abs(int(f)) == 1 for f in factors)


# --------------------------------------------------------------------------
# Hilbert bases


def hilbert_cap() -> int:
    raw = os.environ.get("SPHERICAL_KIT_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise SphericalKitError(f"SPHERICAL_KIT_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise SphericalKitError("SPHERICAL_KIT_CAP must be positive")
    return cap


def _conformal_le(g, s) -> bool:
    """``g`` is conformally below ``s``: same orthant and |g_i| <= |s_i|."""
    for a, b in zip(g, s):
        if a == 0:
            continue
        if (a > 0) != (b > 0) or b == 0 or abs(a) > abs(b):
            return False
    return True


def _reduce(s, basis):
    changed = True
    while changed and any(s):
        changed = False
        for g in basis:
            if _conformal_le(g, s):
                s = tuple(a - b for a, b in zip(s, g))
                changed = True
                break
    return s


def graver_basis(equations, n: int, cap: int | None = None) -> list[tuple[int, ...]]:
    """Graver basis of the kernel lattice by Pottier's completion procedure.

    The nonnegative elements of the Graver basis are exactly the Hilbert
    basis of the orthant cone, which makes this an independent check on
    ``hilbert_basis``.
    """
    cap = hilbert_cap() if cap is None else cap
    gens = integer_kernel_basis(equations, n)
    basis: list[tuple[int, ...]] = []
    for g in gens:
        for v in (g, tuple(-c for c in g)):
            if v not in basis:
                basis.append(v)
    pending = [tuple(a + b for a, b in zip(f, g)) for f, g in itertools.combinations(basis, 2)]
    while pending:
        s = pending.pop()
        r = _reduce(s, basis)
        if not any(r):
            continue
        if sum(map(abs, r)) > cap:
            raise CapExceededError(
                f"Hilbert basis completion reached 1-norm {sum(map(abs, r))} above cap {cap}"
            )
        pending.extend(tuple(a + b for a, b in zip(r, g)) for g in basis)
        basis.append(r)
    minimal = [
        g for g in basis
        if not any(h != g and _conformal_le(h, g) for h in basis)
    ]
    return sorted(set(minimal))


def hilbert_basis(equations, n: int, cap: int | None = None) -> list[tuple[int, ...]]:
    """Indecomposable elements of ``{x in Z^n : x >= 0, equations . x = 0}``.

    Completion over the nonnegative orthant (Contejean-Devie): grow
    candidate vectors one unit at a time, only in directions that move
    ``equations . x`` back towards zero, and stop growing a candidate once
    it dominates a solution already found.  Candidates whose coordinate
    sum would exceed ``cap`` raise ``CapExceededError``.

    Sorted lexicographically in descending order, so that with no equations
    the result is the standard basis in its natural order.
    """
    cap = hilbert_cap() if cap is None else cap
    equations = [tuple(int(v) for v in row) for row in equations]
    for row in equations:
        if len(row) != n:
            raise ValueError(f"equation {row} has wrong length for n={n}")
    if n == 0:
        return []
    images = [tuple(row[j] for row in equations) for j in range(n)]
    # Every Hilbert basis element is reached through candidates below it,
    # so the coordinate-sum bound from the extreme rays prunes soundly.
    bound = _ray_bound(equations, n)
    found: list[tuple[int, ...]] = []
    frontier = {tuple(1 if i == j else 0 for i in range(n)) for j in range(n)}
    level = 1
    while frontier and level <= bound:
        if level > cap:
            raise CapExceededError(
                f"Hilbert basis completion reached coordinate sum {level} above cap {cap}"
            )
        ordered = sorted(frontier)
        solved = [p for p in ordered if not any(_dominates(p, b) for b in found)
                  and all(_dot(row, p) == 0 for row in equations)]
        found.extend(solved)
        nxt = set()
        for p in ordered:
            image = tuple(_dot(row, p) for row in equations)
            if not any(image):
                continue
            for j in range(n):
                if _dot(image, images[j]) < 0:
                    q = p[:j] + (p[j] + 1,) + p[j + 1:]
                    if not any(_dominates(q, b) for b in found):
                        nxt.add(q)
        frontier = nxt
        level += 1
    return sorted(found, reverse=True)


def extreme_rays(equations, n: int) -> list[tuple[int, ...]]:
    """Primitive generators of the extreme rays of ``{x >= 0, equations . x = 0}``.

    A ray is a solution whose support carries a one-dimensional kernel.
    """
    rays = []
    for size in range(1, n + 1):
        for cols in itertools.combinations(range(n), size):
            sub = [[row[j] for j in cols] for row in equations]
            kernel = integer_kernel_basis(sub, size)
            if len(kernel) != 1:
                continue
            v = kernel[0]
            if all(c < 0 for c in v):
                v = tuple(-c for c in v)
            if all(c > 0 for c in v):
                full = [0] * n
                for j, c in zip(cols, v):
                    full[j] = c
                rays.append(tuple(full))
    return sorted(rays, reverse=True)


def _ray_bound(equations, n: int) -> int:
    # a Hilbert basis element is a ray or lies in the half-open parallelepiped
    # spanned by linearly independent rays
    rays = extreme_rays(equations, n)
    if not rays:
        return 0
    dim = rational_rank(rays)
    norms = sorted((sum(r) for r in rays), reverse=True)
    return max(norms[0], sum(norms[:dim]))


def _dominates(x, y) -> bool:
    return all(a >= b for a, b in zip(x, y))


def hilbert_basis_bruteforce(equations, n: int, bound: int) -> list[tuple[int, ...]]:
    """Indecomposable solutions with coordinate sum at most ``bound``.

    Solutions are listed by increasing coordinate sum; one is kept unless it
    is a kept solution plus another nonzero solution.
    """
    sols_by_sum: list[list[tuple[int, ...]]] = [[] for _ in range(bound + 1)]
    for total in range(1, bound + 1):
        for x in _compositions(total, n):
            if _in_lattice(x, equations):
                sols_by_sum[total].append(x)
    all_sols = set(itertools.chain.from_iterable(sols_by_sum))
    out = []
    for total in range(1, bound + 1):
        for x in sols_by_sum[total]:
            decomposable = any(
                all(a <= b for a, b in zip(y, x)) and y != x
                and tuple(b - a for a, b in zip(y, x)) in all_sols
                for y in out
            )
            if not decomposable:
                out.append(x)
    return sorted(out, reverse=True)


def _compositions(total, n):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest
