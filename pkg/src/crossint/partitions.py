"""Blocks, partitions and families over a ground set [n].

A block is stored as an ``int`` bitmask (element ``i`` is bit ``i - 1``), so
enumerated work is limited to ``n <= 64``.  Formula-only code elsewhere in
the package accepts any ``n``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .stirling import stirling

MAX_N = 64
DEFAULT_BUDGET = int(os.environ.get("CROSSINT_BUDGET", 10**7))


class BudgetExceeded(RuntimeError):
    """Raised instead of enumerating more than ``budget`` objects."""

    def __init__(self, what: str, count: int, budget: int):
        super().__init__(f"{what}: {count} exceeds budget {budget}")
        self.what = what
        self.count = count
        self.budget = budget


class GroundSetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GroundSet:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set size must be positive")

    @property
    def mask(self) -> int:
        return (1 << self.n) - 1


# -- blocks -------------------------------------------------------------


def block(*elements: int) -> int:
    """Bitmask of a block given its elements (1-based)."""
    m = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"element {e} is not in [n]")
        m |= 1 << (e - 1)
    if not m:
        raise ValueError("blocks are nonempty")
    return m


def block_elements(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _low(mask: int) -> int:
    return mask & -mask


# -- partitions ---------------------------------------------------------


class Partition:
    """A set of pairwise disjoint nonempty blocks over [n].

    Full when the blocks cover [n]; partial otherwise (t-covers are partial).
    Immutable and hashable.
    """

    __slots__ = ("n", "blocks", "_hash", "_key")

    def __init__(self, n: int, blocks: Iterable[int]):
        bl = frozenset(int(b) for b in blocks)
        if n < 1:
            raise ValueError("ground set size must be positive")
        seen = 0
        full = (1 << n) - 1
        for b in bl:
            if b <= 0 or b & ~full:
                raise ValueError(f"block {block_elements(b)} is empty or outside [{n}]")
            if b & seen:
                raise ValueError("blocks must be pairwise disjoint")
            seen |= b
        self._init(n, bl)

    def _init(self, n, bl):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", bl)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_key", None)

    @classmethod
    def _trusted(cls, n: int, blocks: Iterable[int]) -> "Partition":
        p = object.__new__(cls)
        p._init(n, frozenset(blocks))
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Build from element lists, e.g. ``from_blocks(4, [[1, 4], [2], [3]])``."""
        return cls(n, [block(*b) for b in blocks])

    # ordering and identity
    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.blocks))
            object.__setattr__(self, "_hash", h)
        return h

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.sorted_blocks())

    def __contains__(self, b):
        return b in self.blocks

    def sorted_blocks(self) -> list[int]:
        return sorted(self.blocks, key=_low)

    @property
    def union(self) -> int:
        u = 0
        for b in self.blocks:
            u |= b
        return u

    @property
    def support_size(self) -> int:
        return self.union.bit_count()

    def is_full(self, k: int | None = None) -> bool:
        if self.union != (1 << self.n) - 1:
            return False
        return k is None or len(self.blocks) == k

    def rgs(self) -> tuple[int, ...]:
        """Restricted growth string (full partitions only)."""
        if not self.is_full():
            raise ValueError("restricted growth strings need a full partition")
        a = [0] * self.n
        for idx, b in enumerate(self.sorted_blocks()):
            for e in block_elements(b):
                a[e - 1] = idx
        return tuple(a)

    def sort_key(self) -> tuple:
        """Canonical order: RGS for full partitions, block list otherwise."""
        key = self._key
        if key is None:
            if self.is_full():
                key = (0, self.rgs())
            else:
                key = (1, tuple(tuple(block_elements(b)) for b in self.sorted_blocks()))
            object.__setattr__(self, "_key", key)
        return key

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # set-like operations on blocks
    def __and__(self, other: "Partition") -> "Partition":
        return shared_blocks(self, other)

    def issubset(self, other: "Partition") -> bool:
        return self.blocks <= other.blocks

    def element_lists(self) -> list[list[int]]:
        return [block_elements(b) for b in self.sorted_blocks()]

    def to_text(self) -> str:
        return "{" + "|".join(",".join(map(str, els)) for els in self.element_lists()) + "}"

    __str__ = to_text

    def __repr__(self):
        return f"Partition(n={self.n}, {self.to_text()})"

    @classmethod
    def parse(cls, text: str, n: int) -> "Partition":
        """Inverse of :meth:`to_text`, e.g. ``Partition.parse("{1,4|2|3}", 4)``."""
        s = text.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError(f"malformed partition {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls(n, [])
        blocks = []
        for part in body.split("|"):
            blocks.append(block(*(int(x) for x in part.split(","))))
        return cls(n, blocks)

    def relabel(self, perm: Sequence[int]) -> "Partition":
        """Image under the permutation ``i -> perm[i-1]`` of [n]."""
        return Partition._trusted(self.n, (_map_mask(b, perm) for b in self.blocks))


def _map_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << (perm[i] - 1)
        mask >>= 1
        i += 1
    return out


def singletons_of(elements: Iterable[int], n: int) -> Partition:
    """``[B] = {{i} : i in B}``."""
    return Partition(n, [1 << (e - 1) for e in elements])


def singletons(m: int, n: int) -> Partition:
    """``[[m]]``, the m singletons ``{1}, ..., {m}``."""
    return singletons_of(range(1, m + 1), n)


def _same_ground(*parts: Partition) -> int:
    ns = {p.n for p in parts}
    if len(ns) != 1:
        raise GroundSetMismatch(f"ground sets differ: {sorted(ns)}")
    return ns.pop()


def shared_blocks(p: Partition, q: Partition) -> Partition:
    """Blocks present in both ``p`` and ``q``, as a partial partition."""
    n = _same_ground(p, q)
    return Partition._trusted(n, p.blocks & q.blocks)


def shared_count(p: Partition, q: Partition) -> int:
    return len(p.blocks & q.blocks)


# -- families -----------------------------------------------------------


class Family:
    """A finite set of full k-partitions of [n], kept in canonical order."""

    __slots__ = ("n", "k", "members", "_index")

    def __init__(self, n: int, k: int, members: Iterable[Partition] = (), *, check: bool = True):
        mem = set(members)
        if check:
            for p in mem:
                if p.n != n:
                    raise GroundSetMismatch(f"member {p} is not over [{n}]")
                if not p.is_full(k):
                    raise ValueError(f"member {p} is not a full {k}-partition of [{n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "members", tuple(sorted(mem, key=Partition.sort_key)))
        object.__setattr__(self, "_index", frozenset(mem))

    @classmethod
    def _ordered(cls, n: int, k: int, members: Sequence[Partition]) -> "Family":
        # members already distinct and in canonical order
        f = object.__new__(cls)
        object.__setattr__(f, "n", n)
        object.__setattr__(f, "k", k)
        object.__setattr__(f, "members", tuple(members))
        object.__setattr__(f, "_index", frozenset(members))
        return f

    def __setattr__(self, name, value):
        raise AttributeError("Family is immutable")

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.members)

    def __contains__(self, p):
        return p in self._index

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self._index == other._index

    def __hash__(self):
        return hash((self.n, self.k, self._index))

    def __le__(self, other: "Family") -> bool:
        return self._index <= other._index

    def __repr__(self):
        return f"Family(n={self.n}, k={self.k}, size={len(self)})"

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.n)

    def as_set(self) -> frozenset:
        return self._index

    def to_text(self) -> str:
        lines = [f"n={self.n} k={self.k}"]
        lines.extend(p.to_text() for p in self.members)
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Family":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise ValueError("empty family file")
        header = dict(tok.split("=") for tok in lines[0].split())
        n, k = int(header["n"]), int(header["k"])
        return cls(n, k, (Partition.parse(ln, n) for ln in lines[1:]))

    @classmethod
    def read(cls, path) -> "Family":
        with open(path) as fh:
            return cls.parse(fh.read())

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_text())


def common_blocks(families: Sequence[Family]) -> Partition:
    """Blocks lying in every member of every family.

    ``len(common_blocks(fams)) >= t`` is exactly triviality of the tuple.
    """
    if not families:
        raise ValueError("need at least one family")
    n = families[0].n
    if any(f.n != n for f in families):
        raise GroundSetMismatch("families over different ground sets")
    if any(len(f) == 0 for f in families):
        raise ValueError("common blocks of an empty family are undefined")
    acc = None
    for fam in families:
        for p in fam:
            acc = set(p.blocks) if acc is None else acc & p.blocks
            if not acc:
                return Partition._trusted(n, ())
    return Partition._trusted(n, acc)


def is_trivial(families: Sequence[Family], t: int) -> bool:
    return len(common_blocks(families)) >= t


def is_cross_t_intersecting(families: Sequence[Family], t: int) -> bool:
    """Every choice of one member per family has >= t common blocks."""
    if len(families) == 2:
        a, b = families
        return all(shared_count(p, q) >= t for p in a for q in b)
    return all(
        len(frozenset.intersection(*(p.blocks for p in choice))) >= t
        for choice in itertools.product(*families)
    )


# -- enumeration --------------------------------------------------------


def check_budget(n: int, k: int, budget: int | None = None) -> int:
    """Return S(n, k), raising :class:`BudgetExceeded` above the budget."""
    budget = DEFAULT_BUDGET if budget is None else budget
    count = stirling(n, k)
    if count > budget:
        raise BudgetExceeded(f"S({n},{k})", count, budget)
    return count


def partition_array(n: int, k: int, budget: int | None = None, backend=None) -> np.ndarray:
    """All k-partitions of [n] as a (S(n,k), k) array of block masks."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n > MAX_N:
        raise ValueError(f"enumeration is limited to n <= {MAX_N}")
    count = check_budget(n, k, budget)
    return kernels.rgs_block_masks(n, k, count, backend=backend)


def enumerate_partitions(n: int | GroundSet, k: int, budget: int | None = None) -> Iterator[Partition]:
    """Yield every k-partition of [n] once, in lexicographic RGS order."""
    if isinstance(n, GroundSet):
        n = n.n
    arr = partition_array(n, k, budget)
    for row in arr.tolist():
        yield Partition._trusted(n, row)


# -- universes ----------------------------------------------------------


class Universe:
    """All k-partitions of [n] with block-membership bitsets.

    ``bits[b]`` has bit ``i`` set when member ``i`` contains block id ``b``.
    """

    def __init__(self, n: int, k: int, budget: int | None = None):
        self.n = n
        self.k = k
        self.masks = partition_array(n, k, budget)
        self.size = len(self.masks)
        self.members = tuple(Partition._trusted(n, row) for row in self.masks.tolist())
        self.index = {p: i for i, p in enumerate(self.members)}
        uniq, inv = np.unique(self.masks.ravel(), return_inverse=True)
        self.block_masks = uniq  # block id -> mask
        self.block_id = {int(m): i for i, m in enumerate(uniq.tolist())}
        self.member_blocks = inv.reshape(self.masks.shape).astype(np.int32)
        words = max(1, (self.size + 63) // 64)
        table = np.zeros((len(uniq), words * 64), dtype=bool)
        rows = np.repeat(np.arange(self.size), k)
        table[self.member_blocks.ravel(), rows] = True
        packed = np.packbits(table, axis=1, bitorder="little")
        self.bit_table = np.ascontiguousarray(packed).view(np.uint64)
        self._prepared = {}
        self.full_bits = (1 << self.size) - 1

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"Universe(n={self.n}, k={self.k}, size={self.size})"

    def prepared_bits(self, backend=None):
        key = backend or kernels.BACKEND
        if key not in self._prepared:
            self._prepared[key] = kernels.prepare_block_bits(self.bit_table, backend)
        return self._prepared[key]

    def bits_of(self, fam: Family | Iterable[Partition]) -> int:
        bits = 0
        for p in fam:
            i = self.index.get(p)
            if i is None:
                raise ValueError(f"{p} is not a {self.k}-partition of [{self.n}]")
            bits |= 1 << i
        return bits

    def indices(self, bits: int) -> np.ndarray:
        if not bits:
            return np.zeros(0, dtype=np.int64)
        raw = np.frombuffer(bits.to_bytes((bits.bit_length() + 7) // 8, "little"), dtype=np.uint8)
        return np.flatnonzero(np.unpackbits(raw, bitorder="little"))

    def family(self, bits: int) -> Family:
        return Family._ordered(self.n, self.k, [self.members[i] for i in self.indices(bits).tolist()])

    def all(self) -> Family:
        return Family._ordered(self.n, self.k, self.members)

    def filter(self, pred) -> Family:
        return Family._ordered(self.n, self.k, [p for p in self.members if pred(p)])

    def block_ids_in(self, other: "Universe") -> np.ndarray:
        """Map this universe's block ids to ``other``'s (-1 when absent)."""
        return np.array([other.block_id.get(int(m), -1) for m in self.block_masks.tolist()], dtype=np.int32)


@lru_cache(maxsize=32)
def _universe_cached(n: int, k: int) -> Universe:
    return Universe(n, k, budget=None)


def universe(n: int, k: int, budget: int | None = None) -> Universe:
    """Cached :class:`Universe`; the budget is checked before building."""
    check_budget(n, k, budget)
    return _universe_cached(n, k)


# -- isomorphism --------------------------------------------------------


def _element_invariants(fam: Family) -> list[tuple]:
    n = fam.n
    sizes = [[] for _ in range(n)]
    co = [[0] * n for _ in range(n)]
    for p in fam:
        for b in p.blocks:
            els = block_elements(b)
            c = len(els)
            for e in els:
                sizes[e - 1].append(c)
                row = co[e - 1]
                for f in els:
                    row[f - 1] += 1
    base = [tuple(sorted(s)) for s in sizes]
    # one refinement round: multiset of (co-occurrence, neighbour colour)
    return [
        (base[i], tuple(sorted((co[i][j], base[j]) for j in range(n) if j != i)))
        for i in range(n)
    ]


def _encode(fam: Family, perm: Sequence[int]) -> tuple:
    return tuple(sorted(tuple(sorted(_map_mask(b, perm) for b in p.blocks)) for p in fam))


def canonical_form(fam: Family) -> tuple:
    """Permutation-invariant encoding of a family.

    The minimum encoding over every relabelling that lists elements in
    nondecreasing invariant order.  Invariants are isomorphism-invariant,
    so the candidate set is equivariant and the minimum is canonical.
    """
    n = fam.n
    inv = _element_invariants(fam)
    classes: dict[tuple, list[int]] = {}
    for i, key in enumerate(inv):
        classes.setdefault(key, []).append(i + 1)
    ordered = [classes[key] for key in sorted(classes)]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in ordered)):
        order = [e for grp in choice for e in grp]  # new label j+1 <- old element order[j]
        perm = [0] * n
        for new, old in enumerate(order, start=1):
            perm[old - 1] = new
        enc = _encode(fam, perm)
        if best is None or enc < best:
            best = enc
    return (n, fam.k, len(fam), tuple(sorted(inv)), best)


def are_isomorphic(f1: Family, f2: Family) -> bool:
    """Whether some permutation of [n] maps ``f1`` onto ``f2``."""
    if f1.n != f2.n:
        raise GroundSetMismatch("families over different ground sets")
    if f1.k != f2.k or len(f1) != len(f2):
        return False
    if f1 == f2:
        return True
    if sorted(_element_invariants(f1)) != sorted(_element_invariants(f2)):
        return False
    return canonical_form(f1) == canonical_form(f2)


def pair_isomorphic(a: tuple[Family, Family], b: tuple[Family, Family]) -> bool:
    """Isomorphism of ordered pairs under a single permutation of [n]."""
    (f1, g1), (f2, g2) = a, b
    if (f1.k, g1.k, len(f1), len(g1)) != (f2.k, g2.k, len(f2), len(g2)):
        return False
    n = f1.n
    for perm in itertools.permutations(range(1, n + 1)):
        if _encode(f1, perm) == _encode(f2, list(range(1, n + 1))) and _encode(
            g1, perm
        ) == _encode(g2, list(range(1, n + 1))):
            return True
    return False
