"""Permutation arithmetic and deterministic stabilizer chains.

Permutations of degree n are tuples of images on 0..n-1.  Composition is
left to right: compose(p, q) maps i to q[p[i]], so products of group
elements read in the same order as the tuples they sit in.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p) -> bool:
    return all(i == j for i, j in enumerate(p))


def compose(p, q):
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def compose3(p, q, r):
    return tuple(r[q[i]] for i in p)


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def conjugate(s, g, ginv=None):
    """Return g^-1 s g (the conjugation action used for class orbits)."""
    if ginv is None:
        ginv = inverse(g)
    return tuple(g[s[i]] for i in ginv)


def power(p, k: int):
    n = len(p)
    if k < 0:
        return power(inverse(p), -k)
    q = identity(n)
    while k:
        if k & 1:
            q = compose(q, p)
        p = compose(p, p)
        k >>= 1
    return q


def order_of(p) -> int:
    n = len(p)
    seen = [False] * n
    result = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        result = _lcm(result, length)
    return result


def _lcm(a, b):
    from math import gcd

    return a // gcd(a, b) * b


def cycles(p):
    """Nontrivial cycles of p, each rotated to start at its least point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p):
    """Multiset of cycle lengths as a descending tuple (fixed points as 1s)."""
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parts.append(length)
    parts.sort(reverse=True)
    return tuple(parts)


def format_cycle_type(parts) -> str:
    """Render a cycle type like (5,5,1,1) as '5^2.1^2'."""
    out = []
    i = 0
    parts = list(parts)
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j] == parts[i]:
            j += 1
        mult = j - i
        out.append(str(parts[i]) if mult == 1 else f"{parts[i]}^{mult}")
        i = j
    return ".".join(out)


def parse_cycle_type(text: str):
    """Inverse of format_cycle_type; accepts '5^2.1^2' or '5.5.1.1'."""
    parts = []
    for chunk in text.split("."):
        if "^" in chunk:
            base, exp = chunk.split("^")
            parts.extend([int(base)] * int(exp))
        else:
            parts.append(int(chunk))
    parts.sort(reverse=True)
    return tuple(parts)


def format_perm(p) -> str:
    """Disjoint cycle notation, 1-based, '()' for the identity."""
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cs)


def parse_perm(text: str, degree: int) -> Perm:
    """Parse 1-based disjoint cycle notation into a degree-`degree` tuple."""
    images = list(range(degree))
    text = text.strip()
    if text in ("()", "", "id"):
        return tuple(images)
    if not text.startswith("("):
        raise ValueError(f"bad permutation literal: {text!r}")
    for cyc in text.replace(" ", "").strip("()").split(")("):
        pts = [int(v) - 1 for v in cyc.split(",")]
        if any(v < 0 or v >= degree for v in pts):
            raise ValueError(f"point out of range in {text!r} for degree {degree}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle {cyc!r}")
        for a, b in zip(pts, pts[1:]):
            images[a] = b
        images[pts[-1]] = pts[0]
    if sorted(images) != list(range(degree)):
        raise ValueError(f"cycles overlap in {text!r}")
    return tuple(images)


class DegreeMismatch(ValueError):
    pass


class NotInGroup(ValueError):
    pass


@dataclass
class ChainLevel:
    base: int
    gens: list  # strong generators fixing all earlier base points
    transversal: dict  # point -> perm u with u[base] == point


@dataclass
class StabilizerChain:
    """Base, strong generators and transversals for a permutation group.

    Built with the deterministic Schreier-Sims algorithm; the base is
    chosen as the smallest moved point at each level, so rebuilding from
    the same generators reproduces the same chain.
    """

    degree: int
    levels: list = field(default_factory=list)

    @property
    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def base(self):
        return [lvl.base for lvl in self.levels]

    def contains(self, p) -> bool:
        if len(p) != self.degree:
            return False
        return is_identity(self.sift(p))

    def sift(self, p):
        """Strip p through the transversals; identity iff p is a member."""
        for lvl in self.levels:
            img = p[lvl.base]
            u = lvl.transversal.get(img)
            if u is None:
                return p
            p = compose(p, inverse(u))
        return p

    def strong_generators(self):
        gens = []
        for lvl in self.levels:
            for g in lvl.gens:
                if g not in gens:
                    gens.append(g)
        return gens

    def coset_representative(self, level: int, point: int):
        return self.levels[level].transversal[point]

    def elements(self, bound: int | None = None):
        """Enumerate all group elements (product over transversals)."""
        if bound is not None and self.order > bound:
            raise ValueError(f"group order {self.order} exceeds bound {bound}")
        result = [identity(self.degree)]
        for lvl in reversed(self.levels):
            reps = list(lvl.transversal.values())
            result = [compose(g, u) for g in result for u in reps]
        return result

    def random_element(self, rng):
        g = identity(self.degree)
        for lvl in self.levels:
            u = rng.choice(sorted(lvl.transversal.values()))
            g = compose(u, g)
        return g


def _orbit_transversal(base, gens, degree):
    transversal = {base: identity(degree)}
    queue = deque([base])
    while queue:
        a = queue.popleft()
        ua = transversal[a]
        for g in gens:
            b = g[a]
            if b not in transversal:
                transversal[b] = compose(ua, g)
                queue.append(b)
    return transversal


class _ChainBuilder:
    """Deterministic Schreier-Sims with bottom-up level completion.

    Level i holds the strong generators fixing base[0..i-1].  A level is
    complete when every Schreier generator sifts to the identity through
    the levels below it; the driver re-descends whenever a new residue is
    inserted, so the finished chain is fully verified (no Monte Carlo).
    """

    def __init__(self, degree):
        self.degree = degree
        self.base = []
        self.gens = []  # gens[i] = generators of the level-i stabilizer

    def add_base_point(self, point):
        self.base.append(point)
        self.gens.append([])

    def run(self, stop_at_order=None):
        transversals = [
            _orbit_transversal(self.base[i], self.gens[i], self.degree)
            for i in range(len(self.base))
        ]
        if stop_at_order is not None and self._order(transversals) == stop_at_order:
            return self._finish(transversals)
        i = len(self.base) - 1
        while i >= 0:
            restart = self._process(i, transversals)
            if restart is None:
                i -= 1
                continue
            if stop_at_order is not None and self._order(transversals) == stop_at_order:
                return self._finish(transversals)
            i = restart
        return self._finish(transversals)

    def _order(self, transversals):
        n = 1
        for t in transversals:
            n *= len(t) if t else 1
        return n

    def _process(self, i, transversals):
        """Check all Schreier generators of level i.

        Returns None when the level is complete, else the deepest level
        that received a new residue (processing resumes there).  All
        transversals touched by the insertion are refreshed before
        returning, so basic orbit products stay trustworthy.
        """
        trans = _orbit_transversal(self.base[i], self.gens[i], self.degree)
        transversals[i] = trans
        for a in sorted(trans):
            ua = trans[a]
            for g in self.gens[i]:
                b = g[a]
                schreier = compose(compose(ua, g), inverse(trans[b]))
                residue, level = self._sift_from(schreier, i + 1, transversals)
                if residue is not None:
                    for k in range(i + 1, level + 1):
                        if k >= len(self.base):
                            self.add_base_point(
                                min(p for p, q in enumerate(residue) if p != q)
                            )
                            transversals.append(None)
                        self.gens[k].append(residue)
                        transversals[k] = _orbit_transversal(
                            self.base[k], self.gens[k], self.degree
                        )
                    return min(level, len(self.base) - 1)
        return None

    def _sift_from(self, p, start, transversals):
        """Sift p through levels >= start; (residue, drop level) or (None, -1)."""
        if is_identity(p):
            return None, -1
        for j in range(start, len(self.base)):
            img = p[self.base[j]]
            u = transversals[j].get(img)
            if u is None:
                return p, j
            p = compose(p, inverse(u))
            if is_identity(p):
                return None, -1
        return p, len(self.base)

    def _finish(self, transversals):
        chain = StabilizerChain(self.degree)
        for i, b in enumerate(self.base):
            trans = transversals[i]
            if trans is None:
                trans = _orbit_transversal(b, self.gens[i], self.degree)
            chain.levels.append(ChainLevel(b, list(self.gens[i]), trans))
        return chain


def build_chain(generators, degree: int | None = None,
                stop_at_order: int | None = None) -> StabilizerChain:
    """Deterministic Schreier-Sims over the given generators.

    stop_at_order is an optional early exit for subgroup tests: when the
    generated group is known to divide a parent order, reaching that
    order proves completeness (basic orbit products never overshoot the
    true order), so the remaining verification work can be skipped.
    """
    generators = [tuple(g) for g in generators if not is_identity(g)]
    if degree is None:
        if not generators:
            raise ValueError("need explicit degree for the trivial group")
        degree = len(generators[0])
    for g in generators:
        if len(g) != degree:
            raise DegreeMismatch("generators of mixed degree")
        if sorted(g) != list(range(degree)):
            raise ValueError("not a permutation")

    builder = _ChainBuilder(degree)
    for g in generators:
        level = 0
        while level < len(builder.base) and g[builder.base[level]] == builder.base[level]:
            level += 1
        if level == len(builder.base):
            builder.add_base_point(min(i for i, j in enumerate(g) if i != j))
        for k in range(level + 1):
            builder.gens[k].append(g)
    return builder.run(stop_at_order=stop_at_order)


def group_order(generators, degree: int | None = None,
                stop_at_order: int | None = None) -> int:
    if not generators:
        return 1
    return build_chain(generators, degree, stop_at_order=stop_at_order).order


def orbit_of_point(gens, seed: int):
    orbit = {seed}
    queue = deque([seed])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = g[a]
            if b not in orbit:
                orbit.add(b)
                queue.append(b)
    return orbit


def is_transitive(gens, degree: int) -> bool:
    if not gens:
        return degree == 1
    return len(orbit_of_point(gens, 0)) == degree


def orbit_of_set(gens, seed) -> list:
    """Orbit of a point set under the induced action on subsets.

    Returns the orbit as a sorted list of sorted tuples.
    """
    start = tuple(sorted(seed))
    if gens and any(v < 0 or v >= len(gens[0]) for v in start):
        raise ValueError("seed point out of range")
    orbit = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for g in gens:
            t = tuple(sorted(g[v] for v in s))
            if t not in orbit:
                orbit.add(t)
                queue.append(t)
    return sorted(orbit)


def set_orbit_partition(gens, degree: int, k: int):
    """Partition all k-subsets of 0..degree-1 into orbits; returns a list
    of orbits, each a sorted list of k-tuples."""
    from itertools import combinations

    remaining = set(combinations(range(degree), k))
    parts = []
    while remaining:
        seed = min(remaining)
        orb = orbit_of_set(gens, seed)
        parts.append(orb)
        remaining.difference_update(orb)
    parts.sort(key=lambda orb: (len(orb), orb[0]))
    return parts
