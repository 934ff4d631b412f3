"""Finite group arithmetic on explicit multiplication tables.

Elements are integers 0..n-1 with 0 the identity.  Subgroups are stored as
bitmasks over element indices (Python ints double as arbitrarily wide
bitsets), which keeps the lattice scans that dominate the obstruction
calculus cheap and allocation-free.  All exact arithmetic uses
fractions.Fraction; no floats appear anywhere in this package.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class NonGroup(ValueError):
    """The multiplication table violates a group axiom (args carry a witness)."""


class CapExceeded(RuntimeError):
    """A lattice scan exceeded its configured size cap."""


class NotCyclic(ValueError):
    """Operation requires a cyclic subgroup."""


ASSOC_FULL_CHECK_LIMIT = 64
ASSOC_SAMPLES = 10_000
SUBGROUP_CAP = 2000


def moebius(d: int) -> int:
    """Arithmetic Moebius function; mu(1) = 1."""
    if d < 1:
        raise ValueError(f"moebius undefined for {d}")
    result = 1
    q = 2
    while q * q <= d:
        if d % q == 0:
            d //= q
            if d % q == 0:
                return 0
            result = -result
        q += 1
    if d > 1:
        result = -result
    return result


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class GroupTable:
    """A finite group given by its full multiplication table.

    Inverses, element orders and conjugacy classes are computed on
    construction; subgroup-lattice data is cached on first use.  Instances
    are never mutated after __init__, so they are safe to share.
    """

    def __init__(self, mul: Sequence[Sequence[int]], check: bool = True, name: str = ""):
        n = len(mul)
        if n == 0:
            raise NonGroup("empty table")
        self.n = n
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        self.name = name
        if check:
            self._check_axioms()
        self.inv = self._compute_inverses()
        self.elem_order = self._compute_orders()
        self.conj_classes, self.class_of = self._compute_classes()
        self.full_mask = (1 << n) - 1
        # lazy caches
        self._cyclic_masks: tuple[int, ...] | None = None
        self._all_subgroup_masks: tuple[int, ...] | None = None
        self._orbit_cache: dict[int, frozenset[int]] = {}
        self._gen_cache: dict[tuple[int, int], int] = {}

    # -- construction checks -------------------------------------------------

    def _check_axioms(self) -> None:
        n, mul = self.n, self.mul
        for row in mul:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise NonGroup("table entries out of range")
        for g in range(n):
            if mul[0][g] != g or mul[g][0] != g:
                raise NonGroup(f"index 0 is not an identity at {g}")
        for g in range(n):
            if 0 not in mul[g]:
                raise NonGroup(f"no inverse for {g}")
        if n <= ASSOC_FULL_CHECK_LIMIT:
            triples = (
                (a, b, c) for a in range(n) for b in range(n) for c in range(n)
            )
        else:
            rng = random.Random(0xA55)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(ASSOC_SAMPLES)
            )
        for a, b, c in triples:
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise NonGroup(f"associativity fails at {(a, b, c)}")

    def _compute_inverses(self) -> tuple[int, ...]:
        return tuple(self.mul[g].index(0) for g in range(self.n))

    def _compute_orders(self) -> tuple[int, ...]:
        orders = []
        for g in range(self.n):
            k, x = 1, g
            while x != 0:
                x = self.mul[x][g]
                k += 1
            orders.append(k)
        return tuple(orders)

    def _compute_classes(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        seen = [False] * self.n
        classes = []
        for g in range(self.n):
            if seen[g]:
                continue
            orbit = sorted({self.conj(x, g) for x in range(self.n)})
            for h in orbit:
                seen[h] = True
            classes.append(tuple(orbit))
        classes.sort(key=lambda c: c[0])
        class_of = [0] * self.n
        for idx, cls in enumerate(classes):
            for h in cls:
                class_of[h] = idx
        return tuple(classes), tuple(class_of)

    # -- element arithmetic ---------------------------------------------------

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def order_of(self, a: int) -> int:
        return self.elem_order[a]

    def conj(self, x: int, g: int) -> int:
        """x g x^-1."""
        return self.mul[self.mul[x][g]][self.inv[x]]

    def comm(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        return self.mul[self.mul[a][b]][self.mul[self.inv[a]][self.inv[b]]]

    def power(self, g: int, k: int) -> int:
        k %= self.elem_order[g]
        out, base = 0, g
        while k:
            if k & 1:
                out = self.mul[out][base]
            base = self.mul[base][base]
            k >>= 1
        return out

    @property
    def is_abelian(self) -> bool:
        return all(len(c) == 1 for c in self.conj_classes)

    def exponent(self) -> int:
        e = 1
        for k in set(self.elem_order):
            e = _lcm(e, k)
        return e

    # -- subgroup machinery ---------------------------------------------------

    def generated_mask(self, gens: Iterable[int]) -> int:
        gens = tuple(sorted(set(gens)))
        key = mask_of(gens)
        cached = self._gen_cache.get((key, 0))
        if cached is not None:
            return cached
        mask = 1
        frontier = [0]
        for g in gens:
            if not (mask >> g) & 1:
                mask |= 1 << g
                frontier.append(g)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (self.mul[x][g], self.mul[g][x]):
                    if not (mask >> y) & 1:
                        mask |= 1 << y
                        frontier.append(y)
        self._gen_cache[(key, 0)] = mask
        return mask

    def closure_mask(self, mask: int) -> int:
        return self.generated_mask(mask_members(mask))

    def is_subgroup_mask(self, mask: int) -> bool:
        if not mask & 1:
            return False
        mem = mask_members(mask)
        for a in mem:
            if not (mask >> self.inv[a]) & 1:
                return False
            row = self.mul[a]
            for b in mem:
                if not (mask >> row[b]) & 1:
                    return False
        return True

    def cyclic_masks(self) -> tuple[int, ...]:
        """Masks of all cyclic subgroups, trivial included, sorted."""
        if self._cyclic_masks is None:
            seen = set()
            for g in range(self.n):
                m, x = 1, g
                while x != 0:
                    m |= 1 << x
                    x = self.mul[x][g]
                seen.add(m)
            self._cyclic_masks = tuple(sorted(seen))
        return self._cyclic_masks

    def all_subgroup_masks(self, cap: int = SUBGROUP_CAP) -> tuple[int, ...]:
        """Every subgroup, by closing the cyclic subgroups under joins."""
        if self._all_subgroup_masks is not None:
            return self._all_subgroup_masks
        if self.n > cap:
            raise CapExceeded(f"|G| = {self.n} exceeds subgroup cap {cap}")
        cyclics = self.cyclic_masks()
        subs = set(cyclics)
        frontier = list(cyclics)
        while frontier:
            a = frontier.pop()
            for c in cyclics:
                if c & ~a:
                    j = self.closure_mask(a | c)
                    if j not in subs:
                        subs.add(j)
                        frontier.append(j)
        self._all_subgroup_masks = tuple(sorted(subs))
        return self._all_subgroup_masks

    def conjugate_mask(self, mask: int, x: int) -> int:
        out = 0
        for g in mask_members(mask):
            out |= 1 << self.conj(x, g)
        return out

    def subgroup_orbit(self, mask: int) -> frozenset[int]:
        """All conjugates of the subgroup given by mask (cached)."""
        hit = self._orbit_cache.get(mask)
        if hit is not None:
            return hit
        orbit = frozenset(self.conjugate_mask(mask, x) for x in range(self.n))
        for m in orbit:
            self._orbit_cache[m] = orbit
        return orbit

    def are_conjugate_masks(self, a: int, b: int) -> bool:
        return b in self.subgroup_orbit(a)

    def normalizer_mask(self, mask: int) -> int:
        out = 0
        for x in range(self.n):
            if self.conjugate_mask(mask, x) == mask:
                out |= 1 << x
        return out

    def centralizer_mask(self, target) -> int:
        """Centralizer of a subgroup mask (int) or an explicit member tuple."""
        members = mask_members(target) if not isinstance(target, tuple) else target
        out = 0
        for x in range(self.n):
            if all(self.mul[x][g] == self.mul[g][x] for g in members):
                out |= 1 << x
        return out

    def centralizer_of_element(self, g: int) -> int:
        return self.centralizer_mask((g,))

    def center_mask(self) -> int:
        return self.centralizer_mask(self.full_mask)

    def is_normal_mask(self, mask: int) -> bool:
        return all(self.conjugate_mask(mask, x) == mask for x in range(self.n))

    # -- derived groups --------------------------------------------------------

    def sub_table(self, mask: int) -> tuple["GroupTable", dict[int, int], tuple[int, ...]]:
        """Group table of a subgroup; returns (table, old->new, new->old)."""
        members = mask_members(mask)
        to_sub = {g: i for i, g in enumerate(members)}
        mul = [[to_sub[self.mul[a][b]] for b in members] for a in members]
        return GroupTable(mul, check=False), to_sub, members

    def quotient(self, nmask: int) -> tuple["GroupTable", tuple[int, ...]]:
        """Quotient by a normal subgroup; returns (table, projection g -> coset)."""
        if not self.is_normal_mask(nmask):
            raise NotNormal("quotient by a non-normal subgroup")
        nmem = mask_members(nmask)
        coset_key = {}
        cosets = []
        proj = [0] * self.n
        for g in range(self.n):
            key = mask_of(self.mul[g][h] for h in nmem)
            if key not in coset_key:
                coset_key[key] = None
                cosets.append((min(mask_members(key)), key))
        cosets.sort()
        key_index = {key: i for i, (_, key) in enumerate(cosets)}
        rep = [m for m, _ in cosets]
        for g in range(self.n):
            key = mask_of(self.mul[g][h] for h in nmem)
            proj[g] = key_index[key]
        k = len(cosets)
        mul = [[proj[self.mul[rep[a]][rep[b]]] for b in range(k)] for a in range(k)]
        return GroupTable(mul, check=False), tuple(proj)

    def __repr__(self) -> str:
        return f"GroupTable({self.name or ''} order={self.n})"


class NotNormal(ValueError):
    """Operation requires a normal subgroup."""


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a GroupTable, stored as an element bitmask."""

    group: GroupTable
    mask: int

    def __post_init__(self):
        if not self.group.is_subgroup_mask(self.mask):
            raise NonGroup(f"not a subgroup: {mask_members(self.mask)}")

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @property
    def members(self) -> tuple[int, ...]:
        return mask_members(self.mask)

    def contains(self, g: int) -> bool:
        return bool((self.mask >> g) & 1)

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other.mask & ~self.mask == 0

    @property
    def is_trivial(self) -> bool:
        return self.mask == 1

    @property
    def is_cyclic(self) -> bool:
        return any(
            self.group.order_of(g) == self.order for g in self.members
        )

    def generators(self) -> tuple[int, ...]:
        """Elements generating the subgroup (cyclic subgroups only)."""
        if not self.is_cyclic:
            raise NotCyclic(f"subgroup of order {self.order} is not cyclic")
        return tuple(g for g in self.members if self.group.order_of(g) == self.order)

    @property
    def is_normal(self) -> bool:
        return self.group.is_normal_mask(self.mask)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((id(self.group), self.mask))

    def __repr__(self):
        return f"Subgroup{self.members}"


def subgroup(G: GroupTable, members: Iterable[int]) -> Subgroup:
    return Subgroup(G, mask_of(members))


def trivial_subgroup(G: GroupTable) -> Subgroup:
    return Subgroup(G, 1)


def full_subgroup(G: GroupTable) -> Subgroup:
    return Subgroup(G, G.full_mask)


def generated_subgroup(G: GroupTable, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, G.generated_mask(gens))


def build_group(mul: Sequence[Sequence[int]], name: str = "") -> GroupTable:
    """Build and verify a GroupTable from a raw multiplication table."""
    return GroupTable(mul, check=True, name=name)


def all_subgroups(G: GroupTable, cap: int = SUBGROUP_CAP) -> list[Subgroup]:
    return [Subgroup(G, m) for m in G.all_subgroup_masks(cap=cap)]


def normalizer(G: GroupTable, H: Subgroup) -> Subgroup:
    return Subgroup(G, G.normalizer_mask(H.mask))


def centralizer(G: GroupTable, target) -> Subgroup:
    """Centralizer of a Subgroup or of a single element index."""
    if isinstance(target, Subgroup):
        return Subgroup(G, G.centralizer_mask(target.mask))
    return Subgroup(G, G.centralizer_of_element(int(target)))


@dataclass(frozen=True)
class CyclicClassSet:
    """Representatives of the conjugacy classes of cyclic subgroups.

    reps[0] is the trivial subgroup; every cyclic subgroup of the parent is
    conjugate to exactly one rep.
    """

    group: GroupTable
    reps: tuple[Subgroup, ...]

    def index_of(self, H: Subgroup) -> int:
        for i, T in enumerate(self.reps):
            if self.group.are_conjugate_masks(T.mask, H.mask):
                return i
        raise ValueError("subgroup is not cyclic or not in this group")


def cyclic_subgroup_reps(G: GroupTable) -> CyclicClassSet:
    """One representative per conjugacy class of cyclic subgroups."""
    remaining = set(G.cyclic_masks())
    reps = []
    while remaining:
        m = min(remaining)
        orbit = G.subgroup_orbit(m)
        remaining -= orbit
        reps.append(min(orbit))
    reps.sort(key=lambda m: (m.bit_count(), m))
    return CyclicClassSet(G, tuple(Subgroup(G, m) for m in reps))


@dataclass(frozen=True)
class ClassFunction:
    """Exact-rational class function, one value per conjugacy class."""

    group: GroupTable
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.group.conj_classes):
            raise ValueError("wrong number of class values")

    def at(self, g: int) -> Fraction:
        return self.values[self.group.class_of[g]]

    def _same_group(self, other: "ClassFunction") -> None:
        if self.group is not other.group:
            raise ValueError("class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_group(other)
        return ClassFunction(
            self.group, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_group(other)
        return ClassFunction(
            self.group, tuple(a - b for a, b in zip(self.values, other.values))
        )

    def scale(self, c) -> "ClassFunction":
        c = Fraction(c)
        return ClassFunction(self.group, tuple(c * v for v in self.values))

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and self.group is other.group
            and self.values == other.values
        )

    def __hash__(self):
        return hash((id(self.group), self.values))


def class_function_from_element_values(G: GroupTable, value_of) -> ClassFunction:
    vals = tuple(Fraction(value_of(cls[0])) for cls in G.conj_classes)
    return ClassFunction(G, vals)


def trivial_char(G: GroupTable) -> ClassFunction:
    return ClassFunction(G, tuple(Fraction(1) for _ in G.conj_classes))


def regular_char(G: GroupTable) -> ClassFunction:
    """reg_G = 1_{e}^G: |G| at the identity, 0 elsewhere."""
    return induced_trivial_char(G, trivial_subgroup(G))


def induced_trivial_char(G: GroupTable, T: Subgroup) -> ClassFunction:
    """Character of the G-set G/T: value at g is #{x : x^-1 g x in T} / |T|."""
    tmask = T.mask
    torder = T.order
    vals = []
    for cls in G.conj_classes:
        g = cls[0]
        count = sum(1 for x in range(G.n) if (tmask >> G.conj(G.inv[x], g)) & 1)
        q, r = divmod(count, torder)
        assert r == 0
        vals.append(Fraction(q))
    return ClassFunction(G, tuple(vals))


def inner_product(chi: ClassFunction, eta: ClassFunction) -> Fraction:
    """(1/|G|) sum_g chi(g) eta(g^-1), exact."""
    chi._same_group(eta)
    G = chi.group
    total = Fraction(0)
    for cls in G.conj_classes:
        g = cls[0]
        total += len(cls) * chi.at(g) * eta.at(G.inv[g])
    return total / G.n


def psi(H: Subgroup, J: Subgroup) -> int:
    """Moebius sum over cyclic subgroups between H and J (Def of the psi invariant)."""
    if H.group is not J.group:
        raise ValueError("subgroups of different groups")
    if not H.is_cyclic:
        raise NotCyclic("psi needs a cyclic lower subgroup")
    if H.mask & ~J.mask:
        raise ValueError("H must be contained in J")
    G = H.group
    hmask, horder = H.mask, H.order
    seen = set()
    total = 0
    for g in J.members:
        m, x = 1, g
        while x != 0:
            m |= 1 << x
            x = G.mul[x][g]
        if m in seen or m & ~J.mask or hmask & ~m:
            seen.add(m)
            continue
        seen.add(m)
        total += moebius(m.bit_count() // horder)
    return total


def psi_bruteforce(H: Subgroup, J: Subgroup) -> int:
    """Independent oracle for psi: filter J's full subgroup list."""
    G = H.group
    sub, to_sub, _ = G.sub_table(J.mask)
    h_in_sub = mask_of(to_sub[g] for g in H.members)
    total = 0
    for m in sub.all_subgroup_masks():
        if h_in_sub & ~m:
            continue
        S = Subgroup(sub, m)
        if S.is_cyclic:
            total += moebius(S.order // H.order)
    return total
