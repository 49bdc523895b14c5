"""Group catalog, conjugacy class tables and class identification.

Groups are loaded from a plain-text catalog (or a user file in the same
format) and verified against their stated order at load time.  Class
tables are computed, not stored: small groups by explicit conjugation
orbits, the alternating and symmetric groups combinatorially from
partitions.
"""

from __future__ import annotations

import hashlib
import math
import os
import pickle
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

from . import perms
from .perms import (
    StabilizerChain,
    build_chain,
    cycle_type,
    format_cycle_type,
    is_transitive,
    parse_perm,
)

CACHE_VERSION = 3


@dataclass(frozen=True)
class ClassEntry:
    label: str
    cycle_type: tuple
    size: int
    representative: tuple | None = None


@dataclass
class ClassTable:
    group_name: str
    degree: int
    entries: list

    def __post_init__(self):
        labels = [e.label for e in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate class labels")

    def order(self) -> int:
        return sum(e.size for e in self.entries)

    def labels_for_type(self, ctype) -> list:
        return [e.label for e in self.entries if e.cycle_type == tuple(ctype)]

    def entry(self, label: str) -> ClassEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(f"no class {label!r} in {self.group_name} degree {self.degree}")

    def cycle_types(self) -> set:
        return {e.cycle_type for e in self.entries}


class UnknownGroup(KeyError):
    pass


class ClassNotFound(ValueError):
    pass


@dataclass
class PermGroup:
    name: str
    degree: int
    generators: list
    expected_order: int | None = None
    _chain: StabilizerChain | None = field(default=None, repr=False)
    _class_table: ClassTable | None = field(default=None, repr=False)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = build_chain(self.generators, self.degree)
            if self.expected_order is not None and self._chain.order != self.expected_order:
                raise ValueError(
                    f"{self.name} degree {self.degree}: chain order "
                    f"{self._chain.order} != cataloged {self.expected_order}"
                )
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order

    def contains(self, p) -> bool:
        return self.chain.contains(p)

    def is_transitive(self) -> bool:
        return is_transitive(self.generators, self.degree)

    def elements(self, bound: int = 200000):
        return self.chain.elements(bound=bound)

    def random_element(self, rng):
        return self.chain.random_element(rng)

    @property
    def class_table(self) -> ClassTable:
        if self._class_table is None:
            self._class_table = _class_table_for(self)
        return self._class_table

    def identify_class(self, p):
        """Class label of p, or the sorted ambiguity set when the cycle
        type is shared by several classes (8A/8B, 11A/11B in M11)."""
        ct = cycle_type(p)
        labels = self.class_table.labels_for_type(ct)
        if not labels:
            raise ClassNotFound(
                f"cycle type {format_cycle_type(ct)} does not occur in "
                f"{self.name} degree {self.degree}"
            )
        if len(labels) == 1:
            return labels[0]
        return tuple(sorted(labels))

    def class_representative(self, label: str):
        e = self.class_table.entry(label)
        if e.representative is not None:
            return e.representative
        raise ClassNotFound(f"no stored representative for {label}")


# ---------------------------------------------------------------------------
# class tables


def _conjugacy_classes_by_enumeration(group: PermGroup):
    """Conjugacy classes via orbit closure under generator conjugation.

    Only used for groups small enough to enumerate (|G| <= 2*10^5).
    """
    elements = set(group.elements())
    gens = [tuple(g) for g in group.generators]
    gen_invs = [perms.inverse(g) for g in gens]
    classes = []
    remaining = set(elements)
    while remaining:
        seed = min(remaining)
        orbit = {seed}
        queue = deque([seed])
        while queue:
            s = queue.popleft()
            for g, gi in zip(gens, gen_invs):
                c = tuple(g[s[i]] for i in gi)
                if c not in orbit:
                    orbit.add(c)
                    queue.append(c)
        classes.append((min(orbit), len(orbit)))
        remaining.difference_update(orbit)
    return classes


def _assign_labels(raw):
    """Label classes 1A, 2A, 2B, ... sorted by element order then type."""
    raw = sorted(raw, key=lambda t: (t[0], t[1], -t[2]))
    out = []
    last = None
    letter = 0
    for order, ctype, size, rep in raw:
        letter = letter + 1 if order == last else 0
        last = order
        out.append(ClassEntry(f"{order}{chr(ord('A') + letter)}", ctype, size, rep))
    return out


def _partitions(n):
    # dense enumeration of partitions of n, descending parts
    def rec(n, maxpart):
        if n == 0:
            yield ()
            return
        for p in range(min(n, maxpart), 0, -1):
            for rest in rec(n - p, p):
                yield (p,) + rest

    return rec(n, n)


def _sym_class_size(n, parts):
    cent = 1
    for v in set(parts):
        m = parts.count(v)
        cent *= v**m * math.factorial(m)
    return math.factorial(n) // cent


def _is_even_type(parts):
    return sum(p - 1 for p in parts) % 2 == 0


def _perm_of_type(parts):
    images = []
    start = 0
    for p in parts:
        images.extend(list(range(start + 1, start + p)) + [start])
        start += p
    return tuple(images)


def _class_table_for(group: PermGroup) -> ClassTable:
    n = group.degree
    if group.name.startswith("S") and group.order == math.factorial(n):
        raw = []
        for parts in _partitions(n):
            order = math.lcm(*parts)
            raw.append((order, parts, _sym_class_size(n, parts), _perm_of_type(parts)))
        return ClassTable(group.name, n, _assign_labels(raw))
    if group.name.startswith("A") and group.order == math.factorial(n) // 2:
        raw = []
        for parts in _partitions(n):
            if not _is_even_type(parts):
                continue
            size = _sym_class_size(n, parts)
            if all(p % 2 == 1 for p in parts) and len(set(parts)) == len(parts):
                # the S_n class splits into two A_n classes of equal size
                order = math.lcm(*parts)
                raw.append((order, parts, size // 2, _perm_of_type(parts)))
                raw.append((order, parts, size // 2, None))
            else:
                raw.append((math.lcm(*parts), parts, size, _perm_of_type(parts)))
        return ClassTable(group.name, n, _assign_labels(raw))
    if group.order > 200000:
        raise ValueError(
            f"no class table rule for large group {group.name} degree {n}"
        )
    raw = []
    for rep, size in _conjugacy_classes_by_enumeration(group):
        raw.append((perms.order_of(rep), cycle_type(rep), size, rep))
    table = ClassTable(group.name, n, _assign_labels(raw))
    if table.order() != group.order:
        raise ValueError("class sizes do not sum to the group order")
    return table


# ---------------------------------------------------------------------------
# catalog


def _catalog_text() -> str:
    return resources.files("m11lab.data").joinpath("groups.cat").read_text()


def catalog_hash() -> str:
    return hashlib.sha256(_catalog_text().encode()).hexdigest()


def _parse_catalog(text: str):
    records = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        name, degree, order = fields[0], int(fields[1]), int(fields[2])
        gens = [parse_perm(tok, degree) for tok in fields[3:]]
        records[(name, degree)] = (order, gens)
    return records


def available_groups():
    return sorted(_parse_catalog(_catalog_text()))


def load_group(name: str, degree: int, verify: bool = True) -> PermGroup:
    """Load a cataloged group; the chain order check runs on first use.

    With verify=True (default) the chain is built right away so a
    transcription error in the catalog fails loudly at load time.
    """
    records = _parse_catalog(_catalog_text())
    try:
        order, gens = records[(name, degree)]
    except KeyError:
        raise UnknownGroup(f"({name}, {degree}) not in catalog") from None
    group = PermGroup(name, degree, gens, expected_order=order)
    cached = _cache_get(name, degree)
    if cached is not None:
        group._chain = cached
    if verify:
        _ = group.chain  # raises on order mismatch
        _cache_put(name, degree, group._chain)
    return group


def load_group_file(path: str, verify: bool = True):
    """Load user-supplied groups from a file in the catalog format."""
    with open(path) as fh:
        records = _parse_catalog(fh.read())
    out = {}
    for (name, degree), (order, gens) in records.items():
        g = PermGroup(name, degree, gens, expected_order=order)
        if verify:
            _ = g.chain
        out[(name, degree)] = g
    return out


# ---------------------------------------------------------------------------
# chain cache


def _cache_dir():
    base = os.environ.get("M11LAB_CACHE_DIR")
    if base is None:
        base = os.path.join(os.path.expanduser("~"), ".cache", "m11lab")
    return base


def _cache_path(name, degree):
    tag = catalog_hash()[:16]
    return os.path.join(_cache_dir(), f"chain-v{CACHE_VERSION}-{tag}-{name}-{degree}.pkl")


def _cache_get(name, degree):
    path = _cache_path(name, degree)
    try:
        with open(path, "rb") as fh:
            chain = pickle.load(fh)
        if isinstance(chain, StabilizerChain):
            return chain
    except (OSError, pickle.PickleError, EOFError):
        pass
    return None


def _cache_put(name, degree, chain):
    path = _cache_path(name, degree)
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path + ".tmp", "wb") as fh:
            pickle.dump(chain, fh)
        os.replace(path + ".tmp", path)
    except OSError:
        pass


# ---------------------------------------------------------------------------
# derived facts used by the certification logic


def six_set_orbit_sizes(group: PermGroup):
    """Sorted orbit sizes of the action on 6-subsets (degree-12 groups)."""
    parts = perms.set_orbit_partition(group.generators, group.degree, 6)
    return sorted(len(p) for p in parts)


def k_set_orbit_sizes(group: PermGroup, k: int):
    parts = perms.set_orbit_partition(group.generators, group.degree, k)
    return sorted(len(p) for p in parts)


def point_stabilizer_order(group: PermGroup, point: int = 0) -> int:
    orbit = perms.orbit_of_point(group.generators, point)
    return group.order // len(orbit)
