"""Exact arithmetic and linear algebra for finitely generated Z/p^s-modules.

Conventions used throughout the package:

* A module is a direct sum of cyclic pieces Z/p^t with 1 <= t <= s, stored
  per (integer) degree as a multiset of exponents t, sorted descending.
  Two modules are equal iff their sorted exponent multisets agree
  degree-wise; that sorted form is the canonical one.
* Elements are integer coordinate tuples.  Coordinate i is meaningful only
  modulo the order p^{t_i} of its generator and is stored reduced.
* Matrices act on column vectors: column j holds the image of the j-th
  domain generator.  Entry (i, j) is stored reduced mod p^{t_i}.  A map out
  of a generator of order p^{t_j} into one of order p^{t_i} with t_i > t_j
  must have entry divisible by p^{t_i - t_j}, otherwise it is not a module
  map and the constructor rejects it.
* Everything here is exact integer arithmetic; no floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    InputError,
    InvalidExponentError,
    NotInjectiveError,
    PreconditionError,
    RingMismatchError,
    UnsupportedInputError,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    """The ambient ring Z/p^s."""

    p: int
    s: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"p must be prime, got {self.p}")
        if self.s < 1:
            raise InvalidExponentError(f"s must be >= 1, got {self.s}")

    @property
    def modulus(self) -> int:
        return self.p ** self.s

    def valuation(self, a: int) -> int:
        """p-adic valuation of the class of a; the zero class gets s."""
        a %= self.modulus
        if a == 0:
            return self.s
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def unit_inverse(self, a: int) -> int:
        return pow(a, -1, self.modulus)


Components = tuple[tuple[int, tuple[int, ...]], ...]


@dataclass(frozen=True)
class GradedModule:
    """Finitely generated Z/p^s-module, one exponent multiset per degree."""

    ring: RingSpec
    components: Components

    def __post_init__(self):
        canon = []
        seen = set()
        for degree, exps in sorted(self.components):
            if degree in seen:
                raise InputError(f"degree {degree} listed twice")
            seen.add(degree)
            exps = tuple(sorted(exps, reverse=True))
            for t in exps:
                if not isinstance(t, int) or not 1 <= t <= self.ring.s:
                    raise InvalidExponentError(
                        f"summand exponent {t!r} outside [1, {self.ring.s}]"
                    )
            if exps:
                canon.append((degree, exps))
        object.__setattr__(self, "components", tuple(canon))

    @classmethod
    def from_dict(cls, ring: RingSpec, components: dict) -> "GradedModule":
        return cls(ring, tuple((d, tuple(e)) for d, e in components.items()))

    @classmethod
    def single(cls, ring: RingSpec, exponents, degree: int = 0) -> "GradedModule":
        return cls(ring, ((degree, tuple(exponents)),))

    @classmethod
    def free(cls, ring: RingSpec, rank: int, degree: int = 0) -> "GradedModule":
        return cls.single(ring, (ring.s,) * rank, degree)

    @classmethod
    def zero(cls, ring: RingSpec) -> "GradedModule":
        return cls(ring, ())

    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.components)

    def exponents_at(self, degree: int) -> tuple[int, ...]:
        for d, exps in self.components:
            if d == degree:
                return exps
        return ()

    def orders_at(self, degree: int) -> tuple[int, ...]:
        return tuple(self.ring.p ** t for t in self.exponents_at(degree))

    def rank_at(self, degree: int) -> int:
        return len(self.exponents_at(degree))

    def total_rank(self) -> int:
        return sum(len(exps) for _, exps in self.components)

    def is_zero(self) -> bool:
        return not self.components

    def is_free(self) -> bool:
        return all(t == self.ring.s for _, exps in self.components for t in exps)

    def to_json_dict(self) -> dict:
        return {
            "p": self.ring.p,
            "s": self.ring.s,
            "components": {str(d): list(exps) for d, exps in self.components},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GradedModule":
        ring = RingSpec(int(data["p"]), int(data["s"]))
        comps = {}
        for key, exps in data.get("components", {}).items():
            comps[int(key)] = tuple(int(t) for t in exps)
        return cls.from_dict(ring, comps)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for d, exps in self.components:
            body = " + ".join(f"Z/{self.ring.p ** t}" for t in exps)
            parts.append(f"[{d}] {body}")
        return "; ".join(parts)


def dim_of(module: GradedModule, t: int, degree_range=None) -> int:
    """Number of Z/p^t-summands of ``module`` across ``degree_range``.

    ``degree_range`` is an inclusive (lo, hi) pair, or None for all degrees.
    """
    if not 1 <= t <= module.ring.s:
        raise InvalidExponentError(f"exponent {t} outside [1, {module.ring.s}]")
    lo, hi = degree_range if degree_range is not None else (None, None)
    total = 0
    for d, exps in module.components:
        if lo is not None and not lo <= d <= hi:
            continue
        total += sum(1 for e in exps if e == t)
    return total


def tensor_reduce(module: GradedModule, u: int) -> GradedModule:
    """``module`` tensored with Z/p^u; each exponent t becomes min(t, u)."""
    if not 1 <= u <= module.ring.s:
        raise InvalidExponentError(f"exponent {u} outside [1, {module.ring.s}]")
    ring = RingSpec(module.ring.p, u)
    comps = tuple(
        (d, tuple(min(t, u) for t in exps)) for d, exps in module.components
    )
    return GradedModule(ring, comps)


def tor(m: GradedModule, n: GradedModule) -> GradedModule:
    """Tor over Z/p^s, additively over cyclic summands.

    On a pair of cyclic summands of exponents t and u the result is
    Z/p^e with e = min(t, u, s-t, s-u); e = 0 contributes nothing.  Degrees
    combine additively, as for a graded tensor product.
    """
    if m.ring != n.ring:
        raise RingMismatchError(f"rings differ: {m.ring} vs {n.ring}")
    s = m.ring.s
    comps: dict[int, list[int]] = {}
    for d1, exps1 in m.components:
        for d2, exps2 in n.components:
            bucket = comps.setdefault(d1 + d2, [])
            for t in exps1:
                for u in exps2:
                    e = min(t, u, s - t, s - u)
                    if e > 0:
                        bucket.append(e)
    return GradedModule.from_dict(m.ring, {d: tuple(v) for d, v in comps.items()})


# ---------------------------------------------------------------------------
# Morphisms


Matrix = tuple[tuple[int, ...], ...]


def _reduce_rows(matrix, cod_orders) -> Matrix:
    return tuple(
        tuple(int(x) % order for x in row)
        for row, order in zip(matrix, cod_orders)
    )


@dataclass(frozen=True)
class ModuleMorphism:
    """A degree-homogeneous module map, with an explicit degree shift.

    The matrix stored at domain degree d maps into codomain degree
    d + shift.  Matrices are present exactly for the degrees where both
    components are nonzero.
    """

    domain: GradedModule
    codomain: GradedModule
    matrices: tuple[tuple[int, Matrix], ...]
    shift: int = 0

    def __post_init__(self):
        if self.domain.ring != self.codomain.ring:
            raise RingMismatchError("domain and codomain rings differ")
        ring = self.domain.ring
        given = dict(self.matrices)
        canon = []
        for d in self.domain.degrees():
            dom_exps = self.domain.exponents_at(d)
            cod_exps = self.codomain.exponents_at(d + self.shift)
            if not cod_exps:
                if d in given:
                    raise InputError(f"matrix given at degree {d} with zero codomain")
                continue
            mat = given.pop(d, None)
            if mat is None:
                mat = tuple((0,) * len(dom_exps) for _ in cod_exps)
            if len(mat) != len(cod_exps) or any(len(r) != len(dom_exps) for r in mat):
                raise InputError(f"matrix shape mismatch at degree {d}")
            cod_orders = tuple(ring.p ** t for t in cod_exps)
            mat = _reduce_rows(mat, cod_orders)
            for i, t_i in enumerate(cod_exps):
                for j, t_j in enumerate(dom_exps):
                    if t_i > t_j and mat[i][j] % ring.p ** (t_i - t_j):
                        raise InputError(
                            "entry (%d, %d) at degree %d breaks well-definedness: "
                            "p^%d does not divide %d"
                            % (i, j, d, t_i - t_j, mat[i][j])
                        )
            canon.append((d, mat))
        if given:
            raise InputError(
                f"matrices at degrees outside the domain: {sorted(given)}"
            )
        object.__setattr__(self, "matrices", tuple(sorted(canon)))

    @classmethod
    def from_dict(cls, domain, codomain, matrices: dict, shift: int = 0):
        return cls(
            domain,
            codomain,
            tuple((d, tuple(tuple(row) for row in m)) for d, m in matrices.items()),
            shift,
        )

    @classmethod
    def identity(cls, module: GradedModule) -> "ModuleMorphism":
        mats = {}
        for d, exps in module.components:
            n = len(exps)
            mats[d] = tuple(
                tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
            )
        return cls.from_dict(module, module, mats)

    @classmethod
    def zero(cls, domain, codomain, shift: int = 0) -> "ModuleMorphism":
        return cls(domain, codomain, (), shift)

    def matrix_at(self, degree: int):
        for d, m in self.matrices:
            if d == degree:
                return m
        return None

    def apply_at(self, degree: int, coords):
        """Image of a coordinate tuple at the given domain degree."""
        dom_exps = self.domain.exponents_at(degree)
        if len(coords) != len(dom_exps):
            raise InputError("coordinate length mismatch")
        cod_exps = self.codomain.exponents_at(degree + self.shift)
        mat = self.matrix_at(degree)
        if mat is None:
            return (0,) * len(cod_exps)
        p = self.domain.ring.p
        return tuple(
            sum(row[j] * coords[j] for j in range(len(coords))) % p ** t
            for row, t in zip(mat, cod_exps)
        )

    def to_json_dict(self) -> dict:
        return {
            "shift": self.shift,
            "domain": self.domain.to_json_dict(),
            "codomain": self.codomain.to_json_dict(),
            "matrices": {str(d): [list(r) for r in m] for d, m in self.matrices},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ModuleMorphism":
        return cls.from_dict(
            GradedModule.from_json_dict(data["domain"]),
            GradedModule.from_json_dict(data["codomain"]),
            {int(k): tuple(tuple(r) for r in m) for k, m in data["matrices"].items()},
            int(data.get("shift", 0)),
        )


def compose(outer: ModuleMorphism, inner: ModuleMorphism) -> ModuleMorphism:
    if inner.codomain != outer.domain:
        raise InputError("composition mismatch: inner codomain != outer domain")
    shift = inner.shift + outer.shift
    mod = inner.domain.ring.modulus
    mats = {}
    for d in inner.domain.degrees():
        if not outer.codomain.rank_at(d + shift):
            continue
        a = inner.matrix_at(d)
        b = outer.matrix_at(d + inner.shift)
        ncols = inner.domain.rank_at(d)
        nrows = outer.codomain.rank_at(d + shift)
        if a is None or b is None:
            mats[d] = tuple((0,) * ncols for _ in range(nrows))
            continue
        mid = len(a)
        mats[d] = tuple(
            tuple(
                sum(b[i][k] * a[k][j] for k in range(mid)) % mod
                for j in range(ncols)
            )
            for i in range(nrows)
        )
    return ModuleMorphism.from_dict(inner.domain, outer.codomain, mats, shift)


def tensor_morphism(phi: ModuleMorphism, u: int) -> ModuleMorphism:
    """The induced map phi (x) Z/p^u between the tensor-reduced modules."""
    dom = tensor_reduce(phi.domain, u)
    cod = tensor_reduce(phi.codomain, u)
    mats = {d: m for d, m in phi.matrices}
    return ModuleMorphism.from_dict(dom, cod, mats, phi.shift)


def elements_at(module: GradedModule, degree: int):
    """Iterate all coordinate tuples of the degree-``degree`` component."""
    orders = module.orders_at(degree)
    return itertools.product(*(range(o) for o in orders))


# ---------------------------------------------------------------------------
# Smith normal form over Z/p^s


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form_matrix(rows, ring: RingSpec):
    """Diagonalize a matrix over Z/p^s.

    Returns (U, Uinv, V, Vinv, vals) with U*A*V = D, where D is diagonal
    with entries p^vals[k] (a valuation of s means the zero class) and the
    valuations are non-decreasing.  The pivot rule is fixed: the entry of
    minimal p-valuation wins, ties broken by smallest row then smallest
    column, which makes the output deterministic.
    """
    mod, p, s = ring.modulus, ring.p, ring.s
    a = [[int(x) % mod for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    u, uinv = _identity(m), _identity(m)
    v, vinv = _identity(n), _identity(n)
    vals: list[int] = []

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]
        for r in uinv:
            r[i], r[k] = r[k], r[i]

    def swap_cols(j, l):
        for r in a:
            r[j], r[l] = r[l], r[j]
        for r in v:
            r[j], r[l] = r[l], r[j]
        vinv[j], vinv[l] = vinv[l], vinv[j]

    def scale_row(k, unit):
        inv = ring.unit_inverse(unit)
        a[k] = [x * inv % mod for x in a[k]]
        u[k] = [x * inv % mod for x in u[k]]
        for r in uinv:
            r[k] = r[k] * unit % mod

    def add_row(k, i, c):
        # row_k += c * row_i
        a[k] = [(x + c * y) % mod for x, y in zip(a[k], a[i])]
        u[k] = [(x + c * y) % mod for x, y in zip(u[k], u[i])]
        for r in uinv:
            r[i] = (r[i] - c * r[k]) % mod

    def add_col(l, j, c):
        # col_l += c * col_j
        for r in a:
            r[l] = (r[l] + c * r[j]) % mod
        for r in v:
            r[l] = (r[l] + c * r[j]) % mod
        vinv[j] = [(x - c * y) % mod for x, y in zip(vinv[j], vinv[l])]

    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                val = ring.valuation(a[i][j])
                if best is None or val < best[0]:
                    best = (val, i, j)
                    if val == 0:
                        break
            if best is not None and best[0] == 0:
                break
        val, bi, bj = best
        if val >= s:
            break
        if bi != k:
            swap_rows(k, bi)
        if bj != k:
            swap_cols(k, bj)
        pivot = p ** val
        scale_row(k, a[k][k] // pivot)
        for i in range(m):
            if i != k and a[i][k]:
                add_row(i, k, -(a[i][k] // pivot))
        for j in range(n):
            if j != k and a[k][j]:
                add_col(j, k, -(a[k][j] // pivot))
        vals.append(val)

    vals.extend([s] * (min(m, n) - len(vals)))
    return u, uinv, v, vinv, vals


@dataclass(frozen=True)
class BasisChange:
    """Per-degree invertible matrix over Z/p^s together with its inverse.

    ``exponents`` optionally records the generator-order labels attached to
    the columns of the new basis (used by split_injection_normalize, where
    the codomain has mixed orders).
    """

    ring: RingSpec
    blocks: tuple[tuple[int, tuple[Matrix, Matrix]], ...]
    exponents: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        mod = self.ring.modulus
        for degree, (mat, inv) in self.blocks:
            n = len(mat)
            if len(inv) != n:
                raise InputError(f"inverse size mismatch at degree {degree}")
            for i in range(n):
                for j in range(n):
                    acc = sum(mat[i][k] * inv[k][j] for k in range(n)) % mod
                    if acc != (1 if i == j else 0):
                        raise InputError(
                            f"matrix times inverse is not the identity at degree {degree}"
                        )

    def matrix_at(self, degree: int):
        for d, (mat, _) in self.blocks:
            if d == degree:
                return mat
        return None

    def inverse_at(self, degree: int):
        for d, (_, inv) in self.blocks:
            if d == degree:
                return inv
        return None

    def exponents_at(self, degree: int):
        for d, exps in self.exponents:
            if d == degree:
                return exps
        return None


@dataclass(frozen=True)
class SNFResult:
    """U * A * V = D with D diagonal of p-powers, valuations non-decreasing.

    ``diagonal`` is keyed by domain degree; U blocks live on the codomain
    degrees (domain degree + shift), V blocks on the domain degrees.
    """

    u: BasisChange
    v: BasisChange
    diagonal: tuple[tuple[int, tuple[int, ...]], ...]

    def valuations_at(self, degree: int):
        for d, vals in self.diagonal:
            if d == degree:
                return vals
        return None


def _require_free(module: GradedModule, which: str):
    if not module.is_free():
        raise UnsupportedInputError(
            f"{which} must be free over Z/p^s; lift to a free presentation first"
        )


def smith_normal_form(phi: ModuleMorphism) -> SNFResult:
    """Smith normal form of a morphism between free modules, per degree."""
    _require_free(phi.domain, "domain")
    _require_free(phi.codomain, "codomain")
    ring = phi.domain.ring
    ublocks, vblocks, diag = [], [], []
    for d, mat in phi.matrices:
        u, uinv, v, vinv, vals = smith_normal_form_matrix(mat, ring)
        as_mat = lambda rows: tuple(tuple(r) for r in rows)
        ublocks.append((d + phi.shift, (as_mat(u), as_mat(uinv))))
        vblocks.append((d, (as_mat(v), as_mat(vinv))))
        diag.append((d, tuple(vals)))
    return SNFResult(
        BasisChange(ring, tuple(ublocks)),
        BasisChange(ring, tuple(vblocks)),
        tuple(diag),
    )


def image_dims(phi: ModuleMorphism) -> GradedModule:
    """Summand decomposition of Im(phi) inside a free codomain.

    The image is the span of the matrix columns, so the diagonal of the
    Smith form reads off the decomposition: a valuation v < s contributes a
    Z/p^{s-v} summand.
    """
    _require_free(phi.codomain, "codomain")
    ring = phi.domain.ring
    comps: dict[int, tuple[int, ...]] = {}
    for d, mat in phi.matrices:
        _, _, _, _, vals = smith_normal_form_matrix(mat, ring)
        exps = tuple(ring.s - v for v in vals if v < ring.s)
        if exps:
            comps[d + phi.shift] = exps
    return GradedModule.from_dict(ring, comps)


def split_injection_normalize(phi: ModuleMorphism) -> BasisChange:
    """Change basis in the codomain so that phi sends generators to generators.

    Requires a free domain.  On success the image of phi is visibly a direct
    summand: in the new basis, phi(x_j) = e_j for every domain generator.
    If phi is not injective the procedure discovers a nonzero kernel element
    and raises NotInjectiveError carrying it.
    """
    _require_free(phi.domain, "domain")
    ring = phi.domain.ring
    mod, p, s = ring.modulus, ring.p, ring.s
    blocks, labels_out = [], []
    for d in phi.codomain.degrees():
        dom_deg = d - phi.shift
        mat = phi.matrix_at(dom_deg)
        cod_exps = list(phi.codomain.exponents_at(d))
        n = len(cod_exps)
        basis = _identity(n)       # columns = new basis in original coordinates
        basis_inv = _identity(n)
        labels = cod_exps[:]
        m = phi.domain.rank_at(dom_deg)
        for j in range(m):
            y = [mat[i][j] for i in range(n)]
            cur = [
                sum(basis_inv[i][k] * y[k] for k in range(n)) % mod
                for i in range(n)
            ]
            pivot = None
            for i in range(j, n):
                if labels[i] == s and cur[i] % p:
                    pivot = i
                    break
            if pivot is None:
                witness = [0] * m
                witness[j] = p ** (s - 1)
                for i in range(j):
                    witness[i] = (-(p ** (s - 1)) * cur[i]) % mod
                raise NotInjectiveError(
                    f"map is not injective at degree {dom_deg}",
                    witness=(dom_deg, tuple(witness)),
                )
            # Replace basis vector at the pivot with y: this is a unit scaling
            # followed by transvections from lower-or-equal-order generators,
            # so the result is again a basis.
            unit_inv = ring.unit_inverse(cur[pivot])
            new_basis = [row[:] for row in basis]
            for i in range(n):
                new_basis[i][pivot] = y[i] % mod
            # basis_inv update: B_new = B * E with E = I except column pivot = cur
            # so B_new^{-1} = E^{-1} * B^{-1}.
            einv_col = [(-c * unit_inv) % mod for c in cur]
            einv_col[pivot] = unit_inv
            new_inv = [row[:] for row in basis_inv]
            for jj in range(n):
                acc = basis_inv[pivot][jj] % mod
                for i in range(n):
                    if i == pivot:
                        new_inv[i][jj] = acc * unit_inv % mod
                    else:
                        new_inv[i][jj] = (basis_inv[i][jj] - cur[i] * unit_inv * acc) % mod
            basis, basis_inv = new_basis, new_inv
            if pivot != j:
                for row in basis:
                    row[j], row[pivot] = row[pivot], row[j]
                basis_inv[j], basis_inv[pivot] = basis_inv[pivot], basis_inv[j]
                labels[j], labels[pivot] = labels[pivot], labels[j]
        as_mat = lambda rows: tuple(tuple(x % mod for x in r) for r in rows)
        blocks.append((d, (as_mat(basis), as_mat(basis_inv))))
        labels_out.append((d, tuple(labels)))
    return BasisChange(ring, tuple(blocks), tuple(labels_out))


# ---------------------------------------------------------------------------
# Kernels, injectivity, surjectivity


def free_presentation(module: GradedModule):
    """A free cover and its relation matrix, per degree.

    Generators are the summands; the relations are p^{t_i} times each
    generator.  Returns (free module, {degree: diagonal relation matrix}).
    This is the convention every solver in this module stacks with.
    """
    ring = module.ring
    cover = GradedModule(
        ring,
        tuple((d, (ring.s,) * len(exps)) for d, exps in module.components),
    )
    relations = {
        d: tuple(
            tuple(ring.p ** exps[i] if i == j else 0 for j in range(len(exps)))
            for i in range(len(exps))
        )
        for d, exps in module.components
    }
    return cover, relations


def kernel_generators(phi: ModuleMorphism):
    """Generators of Ker(phi), as (degree, coordinate tuple) pairs.

    Works for arbitrary (non-free) domain and codomain by solving
    A*x = 0 modulo the codomain generator orders via one Smith form of the
    stacked matrix [A | diag(p^{t_i})].
    """
    ring = phi.domain.ring
    p, s = ring.p, ring.s
    _, relations = free_presentation(phi.codomain)
    out = []
    for d in phi.domain.degrees():
        dom_exps = phi.domain.exponents_at(d)
        m = len(dom_exps)
        cod_exps = phi.codomain.exponents_at(d + phi.shift)
        n = len(cod_exps)
        if n == 0:
            for j in range(m):
                gen = tuple(1 if i == j else 0 for i in range(m))
                out.append((d, gen))
            continue
        mat = phi.matrix_at(d)
        rel = relations[d + phi.shift]
        stacked = [list(mat[i]) + list(rel[i]) for i in range(n)]
        _, _, v, _, vals = smith_normal_form_matrix(stacked, ring)
        width = m + n
        for k in range(width):
            if k < len(vals):
                val = vals[k]
                if val == 0:
                    continue
                scale = p ** (s - val) if val < s else 1
            else:
                scale = 1
            coords = tuple(
                scale * v[j][k] % p ** dom_exps[j] for j in range(m)
            )
            if any(coords):
                out.append((d, coords))
    return out


def injectivity_witness(phi: ModuleMorphism):
    """A nonzero kernel element, or None when phi is injective."""
    gens = kernel_generators(phi)
    return gens[0] if gens else None


def is_injective(phi: ModuleMorphism) -> bool:
    return injectivity_witness(phi) is None


def is_surjective(phi: ModuleMorphism) -> bool:
    ring = phi.domain.ring
    _, relations = free_presentation(phi.codomain)
    for d in phi.codomain.degrees():
        n = phi.codomain.rank_at(d)
        mat = phi.matrix_at(d - phi.shift)
        m = phi.domain.rank_at(d - phi.shift)
        if mat is None:
            mat = tuple((0,) * m for _ in range(n))
        rel = relations[d]
        stacked = [list(mat[i]) + list(rel[i]) for i in range(n)]
        _, _, _, _, vals = smith_normal_form_matrix(stacked, ring)
        if len(vals) < n or any(v != 0 for v in vals):
            return False
    return True


# ---------------------------------------------------------------------------
# Direct sums and the factorization check


@dataclass(frozen=True)
class DirectSumSplit:
    """A module presented as A + B, remembering which summand is which.

    The combined module is in canonical (sorted) form, so the constructor
    records where each A- and B-generator lands and exposes the inclusion
    and projection morphisms for the A part.
    """

    a: GradedModule
    b: GradedModule
    module: GradedModule = field(init=False, compare=False)
    _a_slots: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.a.ring != self.b.ring:
            raise RingMismatchError("summands live over different rings")
        comps: dict[int, tuple[int, ...]] = {}
        slots = []
        degrees = sorted(set(self.a.degrees()) | set(self.b.degrees()))
        for d in degrees:
            tagged = [(t, 0, i) for i, t in enumerate(self.a.exponents_at(d))]
            tagged += [(t, 1, i) for i, t in enumerate(self.b.exponents_at(d))]
            tagged.sort(key=lambda x: (-x[0], x[1], x[2]))
            comps[d] = tuple(t for t, _, _ in tagged)
            slots.append(
                (d, tuple(pos for pos, (_, src, _) in enumerate(tagged) if src == 0))
            )
        object.__setattr__(
            self, "module", GradedModule.from_dict(self.a.ring, comps)
        )
        object.__setattr__(self, "_a_slots", tuple(slots))

    def _slots_at(self, degree):
        for d, sl in self._a_slots:
            if d == degree:
                return sl
        return ()

    def include_a(self) -> ModuleMorphism:
        mats = {}
        for d, _ in self.a.components:
            slots = self._slots_at(d)
            n = self.module.rank_at(d)
            mats[d] = tuple(
                tuple(1 if (i in slots and slots.index(i) == j) else 0
                      for j in range(len(slots)))
                for i in range(n)
            )
        return ModuleMorphism.from_dict(self.a, self.module, mats)

    def project_a(self) -> ModuleMorphism:
        mats = {}
        for d, _ in self.a.components:
            slots = self._slots_at(d)
            n = self.module.rank_at(d)
            mats[d] = tuple(
                tuple(1 if slots[i] == j else 0 for j in range(n))
                for i in range(len(slots))
            )
        return ModuleMorphism.from_dict(self.module, self.a, mats)


def factor_tensor_check(f: ModuleMorphism, g: ModuleMorphism,
                        split: DirectSumSplit) -> bool:
    """Whether g . i_A . pi_A . f is injective.

    Preconditions: the domain of f is free, p^{s-1} * B = 0, and g . f is
    injective.  Under these the answer is always True; violations of each
    precondition are reported distinctly.
    """
    if f.codomain != split.module or g.domain != split.module:
        raise PreconditionError("f and g must meet in the split module A + B")
    if not f.domain.is_free():
        raise PreconditionError("domain of f must be free")
    s = f.domain.ring.s
    if any(t > s - 1 for _, exps in split.b.components for t in exps):
        raise PreconditionError("B must satisfy p^{s-1} * B = 0")
    if not is_injective(compose(g, f)):
        raise PreconditionError("g . f must be injective")
    through_a = compose(g, compose(split.include_a(), compose(split.project_a(), f)))
    return is_injective(through_a)
