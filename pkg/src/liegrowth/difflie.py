"""Differentials on the free algebras, bigraded homology, and growth bounds.

A differential is specified on generators (degree -1, weight-preserving,
squaring to zero) and extended as a graded derivation.  Homology of the
weight-k component of the commutator span is computed blockwise over the
prime field; each (degree, weight) block is a small exact rank problem.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import _fp
from .errors import (
    InputError,
    NotAcyclicError,
    ParityError,
    PreconditionError,
    ResourceGuardError,
    UnsupportedInputError,
)
from .freelie import (
    FreeNAElement,
    GeneratorSet,
    TensorElement,
    _row_to_tensor,
    _span_blocks,
    bracket,
    lie_component,
    tree_degree,
    witt,
)
from .zpmod import GradedModule, RingSpec, smith_normal_form_matrix


@dataclass(frozen=True)
class DifferentialSpec:
    """Images of each generator under d; degree -1 and weight-preserving.

    A nonzero image must be a weight-1 element (a combination of
    generators), so that the derivation extension preserves weight, and
    d(d(gen)) must come out to zero for every generator.
    """

    gens: GeneratorSet
    images: tuple  # one FreeNAElement per generator

    def __post_init__(self):
        if len(self.images) != self.gens.n:
            raise InputError("need exactly one image per generator")
        for i, img in enumerate(self.images):
            if img.is_zero():
                continue
            if img.gens != self.gens:
                raise InputError("image over a different generator set")
            if img.weight != 1:
                raise InputError("differential images must have weight 1")
            if img.degree != self.gens.degrees[i] - 1:
                raise InputError(
                    f"d must lower degree by exactly 1 on generator {self.gens.names[i]}"
                )
        for i in range(self.gens.n):
            dd = differentiate(self.images[i], _Partial(self.gens, self.images))
            if not dd.is_zero():
                raise InputError(f"d*d is nonzero on generator {self.gens.names[i]}")


class _Partial:
    """Duck-typed stand-in so validation can call differentiate on itself."""

    def __init__(self, gens, images):
        self.gens = gens
        self.images = images


def differential_pair(p: int, deg_x: int, r: int = 1):
    """The standard acyclic pair: generators x, y with d(x) = y, d(y) = 0."""
    if deg_x < 2:
        raise InputError("deg(x) must be at least 2 so that deg(y) is positive")
    ring = RingSpec(p, r)
    gens = GeneratorSet.build([("x", deg_x), ("y", deg_x - 1)], ring)
    spec = DifferentialSpec(
        gens,
        (FreeNAElement.generator(gens, "y"), FreeNAElement.zero(gens)),
    )
    return gens, spec


def _d_tree(tree, spec):
    """d of a single tree, as a list of (tree, coeff) pairs."""
    gens = spec.gens
    if isinstance(tree, int):
        return list(spec.images[tree].terms)
    left, right = tree
    out = [((dt, right), c) for dt, c in _d_tree(left, spec)]
    sign = -1 if tree_degree(left, gens) % 2 else 1
    out.extend(((left, dt), sign * c) for dt, c in _d_tree(right, spec))
    return out


def differentiate(element, spec):
    """Extend the differential as a graded derivation.

    Accepts either a FreeNAElement (Leibniz rule on the two branches of a
    node) or a TensorElement (sum over letter positions with Koszul signs).
    Weight is preserved and degree drops by one.
    """
    gens = spec.gens
    if isinstance(element, FreeNAElement):
        terms = []
        for tree, coeff in element.terms:
            terms.extend((t, coeff * c) for t, c in _d_tree(tree, spec))
        return FreeNAElement(gens, tuple(terms))
    if isinstance(element, TensorElement):
        terms = []
        for word, coeff in element.terms:
            sign = 1
            for i, letter in enumerate(word):
                for img_tree, c in spec.images[letter].terms:
                    new_word = word[:i] + (img_tree,) + word[i + 1:]
                    terms.append((new_word, sign * coeff * c))
                if gens.degrees[letter] % 2:
                    sign = -sign
        return TensorElement(gens, tuple(terms))
    raise InputError(f"cannot differentiate a {type(element).__name__}")


# ---------------------------------------------------------------------------
# Homology of the weight-k component


@dataclass(frozen=True)
class HomologyRow:
    degree: int
    dim_total: int
    dim_cycles: int
    dim_boundaries: int
    dim_homology: int


@dataclass(frozen=True)
class HomologyReport:
    weight: int
    rows: tuple  # HomologyRow per degree, ascending (prime-field runs only)
    cycle_decomposition: GradedModule | None = None
    boundary_decomposition: GradedModule | None = None

    def total_homology(self) -> int:
        return sum(r.dim_homology for r in self.rows)

    def dims_by_degree(self, which: str) -> dict:
        key = {
            "L": "dim_total",
            "Z": "dim_cycles",
            "B": "dim_boundaries",
            "H": "dim_homology",
        }[which]
        return {r.degree: getattr(r, key) for r in self.rows if getattr(r, key)}

    def to_json_dict(self) -> dict:
        if self.rows:
            return {
                "weight": self.weight,
                "Z": {str(r.degree): r.dim_cycles for r in self.rows},
                "B": {str(r.degree): r.dim_boundaries for r in self.rows},
                "H": {str(r.degree): r.dim_homology for r in self.rows},
            }
        return {
            "weight": self.weight,
            "Z": self.cycle_decomposition.to_json_dict(),
            "B": self.boundary_decomposition.to_json_dict(),
        }


@functools.lru_cache(maxsize=None)
def _rank_data(gens: GeneratorSet, spec: DifferentialSpec, k: int):
    """Per-degree (dim, rank of d out of the degree) over F_p at weight k."""
    p = gens.ring.p
    blocks = _span_blocks(gens, k, p)
    dims = {deg: len(rows) for deg, (_, rows, _) in blocks.items() if len(rows)}
    ranks = {}
    for deg, (words, rows, _) in blocks.items():
        if not len(rows):
            continue
        target = blocks.get(deg - 1)
        if target is None or not len(target[0]):
            ranks[deg] = 0
            continue
        t_words = target[0]
        t_index = {w: i for i, w in enumerate(t_words)}
        imgs = []
        for row in rows:
            image = differentiate(_row_to_tensor(gens, words, row), spec)
            vec = np.zeros(len(t_words), dtype=np.int64)
            for w, c in image.terms:
                vec[t_index[w]] = c % p
            imgs.append(vec)
        ranks[deg] = _fp.rank(np.array(imgs, dtype=np.int64), p) if imgs else 0
    return dims, ranks


def homology(gens: GeneratorSet, spec: DifferentialSpec, k: int, u: int = 1):
    """Cycle, boundary and homology dimensions at weight k.

    Over the prime field (u = 1) returns exact per-degree dimensions of
    Z = Ker(d), B = Im(d) and H = Z/B inside the weight-k commutator span.
    For u > 1 the report instead carries summand decompositions of Z and B
    computed through Smith forms; homology as a quotient is not reported
    there.
    """
    p = gens.ring.p
    if u == 1:
        dims, ranks = _rank_data(gens, spec, k)
        rows = []
        for deg in sorted(dims):
            total = dims[deg]
            z = total - ranks.get(deg, 0)
            b = ranks.get(deg + 1, 0)
            rows.append(HomologyRow(deg, total, z, b, z - b))
        return HomologyReport(k, tuple(rows))
    return _homology_decompositions(gens, spec, k, u)


def _homology_decompositions(gens, spec, k, u):
    ring_u = RingSpec(gens.ring.p, u)
    p, modulus = ring_u.p, ring_u.modulus
    dims_mod, basis = lie_component(gens, k, u)
    by_degree: dict[int, list[TensorElement]] = {}
    for elem in basis:
        by_degree.setdefault(elem.degree, []).append(elem)
    cycle_comps: dict[int, tuple[int, ...]] = {}
    boundary_comps: dict[int, tuple[int, ...]] = {}
    for deg in sorted(by_degree):
        elems = by_degree[deg]
        images = [differentiate(e, spec) for e in elems]
        words = sorted({w for img in images for w, _ in img.terms})
        index = {w: i for i, w in enumerate(words)}
        img_rows = []
        for img in images:
            vec = [0] * len(words)
            for w, c in img.terms:
                vec[index[w]] = c % modulus
            img_rows.append(vec)
        if words:
            _, _, _, _, vals = smith_normal_form_matrix(img_rows, ring_u)
            b_exps = tuple(u - v for v in vals if v < u)
            if b_exps:
                boundary_comps[deg - 1] = tuple(
                    sorted(boundary_comps.get(deg - 1, ()) + b_exps, reverse=True)
                )
        # Kernel of d on the span: columns of M are the images d(basis_j);
        # solve M c = 0 over Z/p^u, then decompose the kernel submodule.
        n_basis = len(elems)
        if words:
            m_cols = [
                [img_rows[j][i] for j in range(n_basis)] for i in range(len(words))
            ]
            _, _, v, _, vals = smith_normal_form_matrix(m_cols, ring_u)
            kernel_coeffs = []
            for pos in range(n_basis):
                if pos < len(vals):
                    val = vals[pos]
                    if val == 0:
                        continue
                    scale = p ** (u - val) if val < u else 1
                else:
                    scale = 1
                coeffs = [scale * v[j][pos] % modulus for j in range(n_basis)]
                if any(coeffs):
                    kernel_coeffs.append(coeffs)
        else:
            kernel_coeffs = [
                [1 if i == j else 0 for j in range(n_basis)] for i in range(n_basis)
            ]
        if kernel_coeffs:
            all_words = sorted({w for e in elems for w, _ in e.terms})
            widx = {w: i for i, w in enumerate(all_words)}
            vec_rows = []
            for coeffs in kernel_coeffs:
                vec = [0] * len(all_words)
                for c, e in zip(coeffs, elems):
                    for w, x in e.terms:
                        vec[widx[w]] = (vec[widx[w]] + c * x) % modulus
                vec_rows.append(vec)
            if any(any(r) for r in vec_rows):
                _, _, _, _, vals = smith_normal_form_matrix(vec_rows, ring_u)
                z_exps = tuple(u - v for v in vals if v < u)
                if z_exps:
                    cycle_comps[deg] = z_exps
    return HomologyReport(
        k,
        (),
        cycle_decomposition=GradedModule.from_dict(ring_u, cycle_comps),
        boundary_decomposition=GradedModule.from_dict(ring_u, boundary_comps),
    )


# ---------------------------------------------------------------------------
# The explicit cycles


def _cycle_weight_limit(p: int) -> int:
    return 12 if p == 3 else 5


def _check_cycle_guard(p: int, target_weight: int, max_weight):
    limit = _cycle_weight_limit(p) if max_weight is None else max_weight
    if target_weight > limit:
        raise ResourceGuardError(
            f"cycle of weight {target_weight} exceeds the guard of {limit}"
        )


def tau(x_elem: FreeNAElement, spec: DifferentialSpec, k: int,
        max_weight: int | None = None) -> FreeNAElement:
    """The iterated bracket ad^{p^k - 1}(x)(dx) for an even-degree x.

    Degree p^k deg(x) - 1, weight p^k wt(x).
    """
    if x_elem.is_zero() or x_elem.degree % 2:
        raise ParityError("tau needs a nonzero even-degree element")
    p = x_elem.gens.ring.p
    _check_cycle_guard(p, p ** k * x_elem.weight, max_weight)
    out = differentiate(x_elem, spec)
    for _ in range(p ** k - 1):
        out = bracket(x_elem, out)
    return out


def sigma(x_elem: FreeNAElement, spec: DifferentialSpec, k: int,
          max_weight: int | None = None) -> FreeNAElement:
    """The binomial-weighted bracket sum companion of tau.

    (1/2) sum_{j=1}^{p^k - 1} (1/p) C(p^k, j) [ad^{j-1}(x)(dx),
    ad^{p^k-1-j}(x)(dx)], with the binomials computed in the integers,
    divided exactly by p, and reduced mod p.  Needs p odd (1/2 must exist)
    and an even-degree x.  Degree p^k deg(x) - 2, weight p^k wt(x).
    """
    p = x_elem.gens.ring.p
    if p == 2:
        raise UnsupportedInputError("sigma is not defined at p = 2")
    if x_elem.is_zero() or x_elem.degree % 2:
        raise ParityError("sigma needs a nonzero even-degree element")
    q = p ** k
    _check_cycle_guard(p, q * x_elem.weight, max_weight)
    inv2 = pow(2, -1, p)
    ad_pow = [differentiate(x_elem, spec)]
    for _ in range(q - 2):
        ad_pow.append(bracket(x_elem, ad_pow[-1]))
    out = FreeNAElement.zero(x_elem.gens)
    for j in range(1, q):
        c = comb(q, j) // p % p * inv2 % p
        if c:
            out = out + bracket(ad_pow[j - 1], ad_pow[q - 1 - j]).scale(c)
    return out


# ---------------------------------------------------------------------------
# Bigraded complexes and acyclic bases


@dataclass(frozen=True)
class BigradedComplex:
    """Free F_p chain blocks indexed by (degree, weight).

    ``differentials[(degree, weight)]`` maps the block into
    (degree - 1, weight); an absent entry means the zero map.  Shapes and
    d*d = 0 are checked at construction.
    """

    p: int
    ranks: tuple  # (((degree, weight), rank), ...)
    differentials: tuple  # (((degree, weight), matrix-rows), ...)

    def __post_init__(self):
        ranks = dict(self.ranks)
        diffs = dict(self.differentials)
        for (deg, w), mat in diffs.items():
            rows = len(mat)
            cols = len(mat[0]) if rows else 0
            if cols != ranks.get((deg, w), 0) or rows != ranks.get((deg - 1, w), 0):
                raise InputError(f"differential shape mismatch at {(deg, w)}")
        for (deg, w), mat in diffs.items():
            below = diffs.get((deg - 1, w))
            if below is None:
                continue
            prod = np.array(below, dtype=np.int64) @ np.array(mat, dtype=np.int64)
            if np.any(prod % self.p):
                raise InputError(f"d*d is nonzero at {(deg, w)}")

    def rank_at(self, degree: int, weight: int) -> int:
        return dict(self.ranks).get((degree, weight), 0)

    def diff_at(self, degree: int, weight: int):
        return dict(self.differentials).get((degree, weight))

    def weights(self):
        return sorted({w for (_, w), r in self.ranks if r})


def bigraded_complex(gens: GeneratorSet, spec: DifferentialSpec, weights):
    """The commutator-span complex over F_p restricted to the given weights.

    Block bases are the rref span bases; the differential is re-expressed
    in those coordinates.
    """
    p = gens.ring.p
    ranks = []
    diffs = []
    for w in weights:
        blocks = _span_blocks(gens, w, p)
        for deg in sorted(blocks):
            words, rows, _ = blocks[deg]
            if not len(rows):
                continue
            ranks.append(((deg, w), len(rows)))
            target = blocks.get(deg - 1)
            if target is None or not len(target[1]):
                continue
            t_words, t_rows, t_piv = target
            t_index = {word: i for i, word in enumerate(t_words)}
            cols = []
            for row in rows:
                image = differentiate(_row_to_tensor(gens, words, row), spec)
                vec = np.zeros(len(t_words), dtype=np.int64)
                for word, c in image.terms:
                    vec[t_index[word]] = c % p
                coords, ok = _fp.coords_in_rowspace(t_rows, list(t_piv), vec, p)
                if not ok:
                    raise AssertionError("differential left the commutator span")
                cols.append(coords)
            mat = tuple(
                tuple(int(cols[j][i]) for j in range(len(cols)))
                for i in range(len(t_rows))
            )
            diffs.append(((deg, w), mat))
    return BigradedComplex(p, tuple(ranks), tuple(diffs))


@dataclass(frozen=True)
class AcyclicBasis:
    """Paired bases of an exact complex: d(first) = second in each pair.

    ``even_pairs`` holds pairs whose first element has even degree,
    ``odd_pairs`` the others.  Entries are ((degree, weight), coords) with
    coordinates relative to the complex's block bases.
    """

    even_pairs: tuple
    odd_pairs: tuple

    def all_pairs(self):
        return self.even_pairs + self.odd_pairs


def acyclic_basis(cx: BigradedComplex) -> AcyclicBasis:
    """Build an acyclic basis by lifting kernels up through the degrees.

    Walks each weight from the bottom degree up: the kernel basis at one
    level is lifted through d to the next, a kernel basis of the new level
    is adjoined, and each lift pairs with its image.  Any failed lift, or a
    leftover kernel at the top, is reported with the first (degree, weight)
    where homology is nonzero.
    """
    p = cx.p
    even_pairs = []
    odd_pairs = []
    for w in cx.weights():
        degs = sorted(deg for (deg, wt), r in cx.ranks if wt == w and r)
        prev_kernel: list = []
        prev_deg = None
        for deg in degs:
            r = cx.rank_at(deg, w)
            mat = cx.diff_at(deg, w)
            rows_below = cx.rank_at(deg - 1, w)
            if mat is None:
                m = np.zeros((rows_below, r), dtype=np.int64)
            else:
                m = np.array(mat, dtype=np.int64)
            contiguous = prev_deg is not None and deg == prev_deg + 1
            if prev_kernel and not contiguous:
                raise NotAcyclicError(
                    f"nonzero homology at degree {prev_deg}, weight {w}",
                    spot=(prev_deg, w),
                )
            lifts = []
            if contiguous:
                for target in prev_kernel:
                    sol = _fp.solve(m, target, p)
                    if sol is None:
                        raise NotAcyclicError(
                            f"nonzero homology at degree {prev_deg}, weight {w}",
                            spot=(prev_deg, w),
                        )
                    lifts.append(sol % p)
            for sol, target in zip(lifts, prev_kernel):
                pair = (
                    ((deg, w), tuple(int(x) for x in sol)),
                    ((deg - 1, w), tuple(int(x) for x in target)),
                )
                if deg % 2 == 0:
                    even_pairs.append(pair)
                else:
                    odd_pairs.append(pair)
            if m.shape[0] == 0:
                kernel = [np.eye(r, dtype=np.int64)[i] for i in range(r)]
            else:
                rows, pivots = _fp.rref(m, p)
                free_cols = [c for c in range(r) if c not in pivots]
                kernel = []
                for c in free_cols:
                    vec = np.zeros(r, dtype=np.int64)
                    vec[c] = 1
                    for i, pc in enumerate(pivots):
                        vec[pc] = (-rows[i, c]) % p
                    kernel.append(vec)
            if len(lifts) + len(kernel) != r:
                raise NotAcyclicError(
                    f"nonzero homology at degree {deg}, weight {w}",
                    spot=(deg, w),
                )
            prev_kernel = kernel
            prev_deg = deg
        if prev_kernel:
            raise NotAcyclicError(
                f"nonzero homology at degree {prev_deg}, weight {w}",
                spot=(prev_deg, w),
            )
    return AcyclicBasis(tuple(even_pairs), tuple(odd_pairs))


# ---------------------------------------------------------------------------
# Weighted dimensions and the growth inequalities


def weighted_dim(dims_by_weight, k: int) -> Fraction:
    """sum_{i <= k} dim(M^i) / i, exactly."""
    if k < 1:
        raise InputError("k must be at least 1")
    if not isinstance(dims_by_weight, dict):
        dims_by_weight = {i + 1: d for i, d in enumerate(dims_by_weight)}
    return sum(
        (Fraction(dims_by_weight.get(i, 0), i) for i in range(1, k + 1)),
        Fraction(0),
    )


def _check_acyclic_generators(gens: GeneratorSet, spec: DifferentialSpec):
    """The generator module itself must be exact under d, over F_p."""
    p = gens.ring.p
    degs = sorted(set(gens.degrees))
    slots = {d: [i for i in range(gens.n) if gens.degrees[i] == d] for d in degs}
    ranks = {}
    for d in degs:
        below = slots.get(d - 1, [])
        if not below:
            ranks[d] = 0
            continue
        rows = []
        for i in slots[d]:
            vec = [0] * len(below)
            for leaf, c in spec.images[i].terms:
                vec[below.index(leaf)] = c % p
            rows.append(vec)
        ranks[d] = _fp.rank(np.array(rows, dtype=np.int64), p) if rows else 0
    for d in degs:
        kernel = len(slots[d]) - ranks.get(d, 0)
        image_from_above = ranks.get(d + 1, 0)
        if kernel != image_from_above:
            raise NotAcyclicError(
                f"generator module is not acyclic at degree {d}", spot=(d, 1)
            )


@dataclass(frozen=True)
class InequalityRow:
    k: int
    dim_l: Fraction
    dim_h: Fraction
    dim_b: Fraction
    homology_small: bool
    boundaries_large: bool


def check_weight_inequalities(gens: GeneratorSet, spec: DifferentialSpec,
                              max_k: int):
    """Exact-rational checks of the two weighted-dimension inequalities.

    For each k <= max_k: dim^k(H) < dim^k(L)/p and
    dim^k(B) > (p-1)/(2p) * dim^k(L), over F_p, for an acyclic generator
    module.  No tolerances: Fractions all the way.
    """
    _check_acyclic_generators(gens, spec)
    p = gens.ring.p
    l_dims, h_dims, b_dims = {}, {}, {}
    for w in range(1, max_k + 1):
        report = homology(gens, spec, w)
        l_dims[w] = sum(r.dim_total for r in report.rows)
        h_dims[w] = report.total_homology()
        b_dims[w] = sum(r.dim_boundaries for r in report.rows)
    rows = []
    for k in range(1, max_k + 1):
        dl = weighted_dim(l_dims, k)
        dh = weighted_dim(h_dims, k)
        db = weighted_dim(b_dims, k)
        rows.append(
            InequalityRow(
                k, dl, dh, db,
                dh < Fraction(1, p) * dl,
                db > Fraction(p - 1, 2 * p) * dl,
            )
        )
    return tuple(rows)


@dataclass(frozen=True)
class BoundaryGrowthRow:
    k: int
    cumulative_boundaries: int
    lower_bound: Fraction
    holds: bool


@dataclass(frozen=True)
class BoundaryGrowthReport:
    rows: tuple
    boundaries_by_degree: tuple  # (degree, dim) pairs, ascending


def boundary_growth(gens: GeneratorSet, spec: DifferentialSpec, max_k: int):
    """Cumulative boundary dimensions against the Witt lower bound.

    For each k <= max_k, sums dim B_j over topological degrees j <= n*k
    (n = top generator degree, all weights included) and checks that the
    total strictly exceeds (p-1)/(2pk) * W_l(k) with l = number of
    generators.  Needs at least two generators.
    """
    ell = gens.n
    if ell < 2:
        raise PreconditionError("total dimension of the generator module must be >= 2")
    _check_acyclic_generators(gens, spec)
    p = gens.ring.p
    n = max(gens.degrees)
    top_degree = n * max_k
    max_weight = top_degree // min(gens.degrees)
    boundaries: dict[int, int] = {}
    for w in range(1, max_weight + 1):
        report = homology(gens, spec, w)
        for r in report.rows:
            if r.dim_boundaries and r.degree <= top_degree:
                boundaries[r.degree] = boundaries.get(r.degree, 0) + r.dim_boundaries
    rows = []
    for k in range(1, max_k + 1):
        lhs = sum(d for j, d in boundaries.items() if j <= n * k)
        rhs = Fraction(p - 1, 2 * p * k) * witt(ell, k)
        rows.append(BoundaryGrowthRow(k, lhs, rhs, lhs > rhs))
    return BoundaryGrowthReport(
        tuple(rows), tuple(sorted(boundaries.items()))
    )
