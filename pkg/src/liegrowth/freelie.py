"""Free nonassociative algebras, Hall bases, and tensor-algebra models.

The free graded Lie algebra on a generator set V is modelled here as the
span of iterated graded commutators inside the tensor algebra T(V): every
binary bracketing tree maps to the alternating word sum

    [a, b]  ->  a*b - (-1)^{deg(a) deg(b)} b*a,

and rank questions about weighted components reduce to exact linear
algebra on word coordinates.  This span satisfies graded antisymmetry,
the Jacobi identity and the odd-cube relation identically, because they
hold for the commutator of any graded associative algebra.

Trees are plain nested tuples: a leaf is a generator index (int), a node
is a pair (left, right).  Both are hashable and cheap to compare.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import _fp
from .errors import (
    InputError,
    InvalidExponentError,
    ResourceGuardError,
)
from .zpmod import GradedModule, RingSpec, smith_normal_form_matrix

WORD_GUARD = 2 ** 20  # n^k above this is refused


@dataclass(frozen=True)
class GeneratorSet:
    """An ordered list of named generators with positive topological degrees."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    ring: RingSpec

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise InputError("names and degrees must have equal length")
        if len(set(self.names)) != len(self.names):
            raise InputError("generator names must be distinct")
        if any(d < 1 for d in self.degrees):
            raise InputError("generator degrees must be positive")

    @classmethod
    def build(cls, gens, ring: RingSpec) -> "GeneratorSet":
        names = tuple(n for n, _ in gens)
        degrees = tuple(d for _, d in gens)
        return cls(names, degrees, ring)

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def parity(self, i: int) -> int:
        return self.degrees[i] % 2


# ---------------------------------------------------------------------------
# Bracketing trees

# A BracketTree is a plain nested structure: an int (generator index) at
# the leaves, a pair (left, right) at the nodes.  Hashable, cheap, and a
# natural dict key for sparse linear combinations.
BracketTree = object


def tree_weight(tree) -> int:
    if isinstance(tree, int):
        return 1
    return tree_weight(tree[0]) + tree_weight(tree[1])


def tree_degree(tree, gens: GeneratorSet) -> int:
    if isinstance(tree, int):
        return gens.degrees[tree]
    return tree_degree(tree[0], gens) + tree_degree(tree[1], gens)


def tree_sort_key(tree):
    """Total order on trees: weight first, then recursive structure."""
    if isinstance(tree, int):
        return (1, 0, tree)
    return (tree_weight(tree), 1, tree_sort_key(tree[0]), tree_sort_key(tree[1]))


def tree_to_names(tree, gens: GeneratorSet):
    if isinstance(tree, int):
        return gens.names[tree]
    return [tree_to_names(tree[0], gens), tree_to_names(tree[1], gens)]


def tree_from_names(data, gens: GeneratorSet):
    if isinstance(data, str):
        return gens.index(data)
    left, right = data
    return (tree_from_names(left, gens), tree_from_names(right, gens))


def right_normed_tree(word):
    """The bracket [w0, [w1, [... wk]]] for a tuple of generator indices."""
    tree = word[-1]
    for c in reversed(word[:-1]):
        tree = (c, tree)
    return tree


# ---------------------------------------------------------------------------
# Elements of L'(V) and of T(V)


def _normalize_terms(pairs, modulus, sort_key):
    acc = {}
    for key, coeff in pairs:
        acc[key] = (acc.get(key, 0) + coeff) % modulus
    return tuple(sorted(((k, c) for k, c in acc.items() if c), key=lambda kc: sort_key(kc[0])))


@dataclass(frozen=True)
class FreeNAElement:
    """Homogeneous formal sum of bracketing trees with Z/p^r coefficients."""

    gens: GeneratorSet
    terms: tuple  # ((tree, coeff), ...) sorted, nonzero coefficients

    def __post_init__(self):
        terms = _normalize_terms(self.terms, self.gens.ring.modulus, tree_sort_key)
        sigs = {(tree_degree(t, self.gens), tree_weight(t)) for t, _ in terms}
        if len(sigs) > 1:
            raise InputError(f"inhomogeneous element: signatures {sorted(sigs)}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def zero(cls, gens) -> "FreeNAElement":
        return cls(gens, ())

    @classmethod
    def from_tree(cls, gens, tree, coeff: int = 1) -> "FreeNAElement":
        return cls(gens, ((tree, coeff),))

    @classmethod
    def generator(cls, gens, name: str) -> "FreeNAElement":
        return cls.from_tree(gens, gens.index(name))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        return tree_degree(self.terms[0][0], self.gens) if self.terms else None

    @property
    def weight(self):
        return tree_weight(self.terms[0][0]) if self.terms else None

    def __add__(self, other: "FreeNAElement") -> "FreeNAElement":
        if self.gens != other.gens:
            raise InputError("elements over different generator sets")
        return FreeNAElement(self.gens, self.terms + other.terms)

    def scale(self, c: int) -> "FreeNAElement":
        return FreeNAElement(self.gens, tuple((t, c * x) for t, x in self.terms))

    def to_json(self):
        return [
            {"coeff": c, "tree": tree_to_names(t, self.gens)} for t, c in self.terms
        ]


def bracket(a: FreeNAElement, b: FreeNAElement) -> FreeNAElement:
    """The formal bracket [a, b] in L'(V): bilinear node formation."""
    if a.gens != b.gens:
        raise InputError("elements over different generator sets")
    terms = [((ta, tb), ca * cb) for ta, ca in a.terms for tb, cb in b.terms]
    return FreeNAElement(a.gens, tuple(terms))


@dataclass(frozen=True)
class TensorElement:
    """Linear combination of words in T(V); not necessarily homogeneous."""

    gens: GeneratorSet
    terms: tuple  # ((word, coeff), ...) words sorted lexicographically

    def __post_init__(self):
        terms = _normalize_terms(
            self.terms, self.gens.ring.modulus, lambda w: (len(w), w)
        )
        object.__setattr__(self, "terms", terms)

    @classmethod
    def zero(cls, gens) -> "TensorElement":
        return cls(gens, ())

    @classmethod
    def from_word(cls, gens, word, coeff: int = 1) -> "TensorElement":
        return cls(gens, ((tuple(word), coeff),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        sigs = {
            (sum(self.gens.degrees[i] for i in w), len(w)) for w, _ in self.terms
        }
        return len(sigs) <= 1

    @property
    def weight(self):
        return len(self.terms[0][0]) if self.terms else None

    @property
    def degree(self):
        if not self.terms:
            return None
        return sum(self.gens.degrees[i] for i in self.terms[0][0])

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if self.gens != other.gens:
            raise InputError("elements over different generator sets")
        return TensorElement(self.gens, self.terms + other.terms)

    def scale(self, c: int) -> "TensorElement":
        return TensorElement(self.gens, tuple((w, c * x) for w, x in self.terms))

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """Concatenation product of T(V); no signs here, they live in brackets."""
        if self.gens != other.gens:
            raise InputError("elements over different generator sets")
        terms = [
            (wa + wb, ca * cb) for wa, ca in self.terms for wb, cb in other.terms
        ]
        return TensorElement(self.gens, tuple(terms))

    def coefficient(self, word) -> int:
        word = tuple(word)
        for w, c in self.terms:
            if w == word:
                return c
        return 0

    def to_json(self):
        return [
            {"coeff": c, "word": [self.gens.names[i] for i in w]}
            for w, c in self.terms
        ]

    @classmethod
    def from_json(cls, gens, data) -> "TensorElement":
        return cls(
            gens,
            tuple(
                (tuple(gens.index(n) for n in item["word"]), int(item["coeff"]))
                for item in data
            ),
        )


def zeta(element: TensorElement, i: int) -> TensorElement:
    """Projection onto the weight-i part of T(V)."""
    return TensorElement(
        element.gens, tuple((w, c) for w, c in element.terms if len(w) == i)
    )


def tensor_dim(gens: GeneratorSet, k: int) -> int:
    """Dimension n^k of the weight-k word space; the algebra is reduced, k >= 1."""
    if k < 1:
        raise InputError("the tensor algebra here is reduced: weights start at 1")
    return gens.n ** k


def embed_tensor(element: FreeNAElement) -> TensorElement:
    """Expand bracketing trees into alternating word sums inside T(V)."""
    gens = element.gens

    def expand(tree) -> TensorElement:
        if isinstance(tree, int):
            return TensorElement.from_word(gens, (tree,))
        left, right = tree
        a, b = expand(left), expand(right)
        sign = -1 if (tree_degree(left, gens) % 2 and tree_degree(right, gens) % 2) else 1
        return a * b + (b * a).scale(-sign)

    out = TensorElement.zero(gens)
    for tree, coeff in element.terms:
        out = out + expand(tree).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# Moebius, Witt, Hall


def mobius(s: int) -> int:
    if s < 1:
        raise InputError(f"mobius needs a positive integer, got {s}")
    if s == 1:
        return 1
    count = 0
    d = 2
    while d * d <= s:
        if s % d == 0:
            s //= d
            if s % d == 0:
                return 0
            count += 1
        else:
            d += 1
    if s > 1:
        count += 1
    return (-1) ** count


def witt(n: int, k: int) -> int:
    """(1/k) * sum over d | k of mu(d) n^{k/d}; always an exact integer."""
    if n < 1 or k < 1:
        raise InputError("witt needs positive n and k")
    total = 0
    for d in range(1, k + 1):
        if k % d == 0:
            total += mobius(d) * n ** (k // d)
    if total % k:
        raise AssertionError(f"Witt sum {total} not divisible by {k}")
    return total // k


@dataclass(frozen=True)
class HallBasis:
    """Basic products per weight; weight-1 entries are the generators."""

    n_generators: int
    weights: tuple  # weights[k-1] = tuple of trees of weight k

    def at_weight(self, k: int):
        return self.weights[k - 1]


def basic_products(n_gens: int, k: int):
    """The basic products (Hall basis elements) of weight k.

    The total order used in the inductive construction is tree_sort_key:
    generators in declaration order, then weight-major recursive comparison.
    Any total order compatible with the construction would do; this one is
    fixed so the output is deterministic.  The length equals witt(n_gens, k).
    """
    if n_gens < 1:
        raise InputError("need at least one generator")
    return hall_basis(n_gens, k).at_weight(k)


def hall_basis(n_gens: int, max_weight: int) -> HallBasis:
    per_weight = [tuple(range(n_gens))]
    for k in range(2, max_weight + 1):
        found = []
        for i in range(1, k):
            for u in per_weight[i - 1]:
                ku = tree_sort_key(u)
                for v in per_weight[k - i - 1]:
                    if ku >= tree_sort_key(v):
                        continue
                    if not isinstance(v, int) and tree_sort_key(v[0]) > ku:
                        continue
                    found.append((u, v))
        found.sort(key=tree_sort_key)
        per_weight.append(tuple(found))
    return HallBasis(n_gens, tuple(per_weight[:max_weight]))


# ---------------------------------------------------------------------------
# Weighted components of the commutator span


def _check_word_guard(gens: GeneratorSet, k: int):
    if gens.n ** k > WORD_GUARD:
        raise ResourceGuardError(
            f"{gens.n}^{k} words exceed the guard of {WORD_GUARD}"
        )


@functools.lru_cache(maxsize=None)
def _span_blocks(gens: GeneratorSet, k: int, p: int):
    """Per-degree word bases and rref span bases of the weight-k commutator span.

    Returns a dict degree -> (words, rows, pivots) where ``words`` is the
    sorted tuple of weight-k words of that degree, ``rows`` the rref basis
    (numpy, mod p) of the span in those word coordinates.  Callers must not
    mutate the arrays.  The span is generated by the right-normed brackets
    [g_{i_1}, [g_{i_2}, [...]]], which suffice: the Jacobi identity rewrites
    any bracketing as an integer combination of right-normed ones.
    """
    _check_word_guard(gens, k)
    import itertools

    by_degree: dict[int, list] = {}
    words_by_degree: dict[int, list] = {}
    index_by_degree: dict[int, dict] = {}
    for word in itertools.product(range(gens.n), repeat=k):
        deg = sum(gens.degrees[i] for i in word)
        words_by_degree.setdefault(deg, []).append(word)
    for deg, words in words_by_degree.items():
        words.sort()
        index_by_degree[deg] = {w: i for i, w in enumerate(words)}
        by_degree[deg] = []
    for word in itertools.product(range(gens.n), repeat=k):
        tree = right_normed_tree(word)
        elem = embed_tensor(FreeNAElement.from_tree(gens, tree))
        if elem.is_zero():
            continue
        deg = elem.degree
        row = np.zeros(len(words_by_degree[deg]), dtype=np.int64)
        idx = index_by_degree[deg]
        for w, c in elem.terms:
            row[idx[w]] = c % p
        by_degree[deg].append(row)
    out = {}
    for deg, rows in by_degree.items():
        if rows:
            basis, pivots = _fp.rref(np.array(rows, dtype=np.int64), p)
        else:
            basis = np.zeros((0, len(words_by_degree[deg])), dtype=np.int64)
            pivots = []
        out[deg] = (tuple(words_by_degree[deg]), basis, tuple(pivots))
    return out


def _row_to_tensor(gens, words, row) -> TensorElement:
    return TensorElement(
        gens, tuple((w, int(c)) for w, c in zip(words, row) if c % gens.ring.modulus)
    )


def lie_component(gens: GeneratorSet, k: int, u: int):
    """Summand decomposition and a basis of the weight-k commutator span.

    Coefficients are taken in Z/p^u for u <= the ring exponent of ``gens``.
    Over the prime field (u = 1) ranks come from row reduction; over larger
    u the Smith form of the generator matrix gives the decomposition, and
    the basis elements returned are p^v times rows of the inverse column
    transform, ordered to match the exponent lists.
    """
    if not 1 <= u <= gens.ring.s:
        raise InvalidExponentError(f"coefficient exponent {u} outside [1, {gens.ring.s}]")
    _check_word_guard(gens, k)
    p = gens.ring.p
    ring_u = RingSpec(p, u)
    comps: dict[int, tuple[int, ...]] = {}
    basis: list[TensorElement] = []
    out_gens = GeneratorSet(gens.names, gens.degrees, ring_u)
    if u == 1:
        blocks = _span_blocks(gens, k, p)
        for deg in sorted(blocks):
            words, rows, _ = blocks[deg]
            if len(rows):
                comps[deg] = (1,) * len(rows)
                for row in rows:
                    basis.append(_row_to_tensor(out_gens, words, row))
        return GradedModule.from_dict(ring_u, comps), basis

    import itertools

    modulus = ring_u.modulus
    by_degree: dict[int, list] = {}
    words_by_degree: dict[int, list] = {}
    for word in itertools.product(range(gens.n), repeat=k):
        deg = sum(gens.degrees[i] for i in word)
        words_by_degree.setdefault(deg, []).append(word)
    for deg in words_by_degree:
        words_by_degree[deg].sort()
    for word in itertools.product(range(gens.n), repeat=k):
        tree = right_normed_tree(word)
        elem = embed_tensor(FreeNAElement.from_tree(gens, tree))
        if elem.is_zero():
            continue
        deg = elem.degree
        idx = {w: i for i, w in enumerate(words_by_degree[deg])}
        row = [0] * len(words_by_degree[deg])
        for w, c in elem.terms:
            row[idx[w]] = c % modulus
        by_degree.setdefault(deg, []).append(row)
    for deg in sorted(by_degree):
        rows = by_degree[deg]
        words = tuple(words_by_degree[deg])
        _, _, _, vinv, vals = smith_normal_form_matrix(rows, ring_u)
        exps = []
        for pos, v in enumerate(vals):
            if v >= u:
                break
            exps.append(u - v)
            scaled = [(p ** v) * x % modulus for x in vinv[pos]]
            basis.append(_row_to_tensor(out_gens, words, scaled))
        if exps:
            comps[deg] = tuple(exps)
    return GradedModule.from_dict(ring_u, comps), basis


# ---------------------------------------------------------------------------
# Diagnostic: weighted dimensions against the Witt numbers


@dataclass(frozen=True)
class PBWRow:
    weight: int
    total: int
    even: int
    odd: int
    witt: int
    matches_witt: bool


@dataclass(frozen=True)
class PBWDiagnostic:
    rows: tuple
    product_series: tuple
    target_series: tuple
    series_matches: bool

    def to_json_dict(self):
        return {
            "rows": [
                {
                    "weight": r.weight,
                    "total": r.total,
                    "even": r.even,
                    "odd": r.odd,
                    "witt": r.witt,
                    "matches_witt": r.matches_witt,
                }
                for r in self.rows
            ],
            "product_series": list(self.product_series),
            "target_series": list(self.target_series),
            "series_matches": self.series_matches,
        }


def _series_mul(a, b, K):
    out = [0] * (K + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > K:
                break
            out[i + j] += x * y
    return out


def pbw_series_diagnostic(gens: GeneratorSet, max_weight: int) -> PBWDiagnostic:
    """Report weighted dimensions of the commutator span against W_n(k).

    Also multiplies out (1+t^k)^{odd_k} (1-t^k)^{-even_k} over the computed
    splits and compares against 1/(1 - n t) modulo t^{max_weight+1}.  This
    is a report, never an assertion: over mixed-parity generator sets the
    counts can legitimately differ from the ungraded Witt numbers.
    """
    K = max_weight
    rows = []
    series = [1] + [0] * K
    for k in range(1, K + 1):
        dims, _ = lie_component(gens, k, 1)
        even = sum(len(e) for d, e in dims.components if d % 2 == 0)
        odd = sum(len(e) for d, e in dims.components if d % 2 == 1)
        total = even + odd
        w = witt(gens.n, k)
        rows.append(PBWRow(k, total, even, odd, w, total == w))
        one_plus = [0] * (K + 1)
        one_plus[0] = 1
        if k <= K:
            one_plus[k] = 1
        for _ in range(odd):
            series = _series_mul(series, one_plus, K)
        geom = [1 if i % k == 0 else 0 for i in range(K + 1)]
        for _ in range(even):
            series = _series_mul(series, geom, K)
    target = [gens.n ** j for j in range(K + 1)]
    return PBWDiagnostic(
        tuple(rows), tuple(series), tuple(target), series == target
    )
