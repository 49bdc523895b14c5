"""Straight inner Nielsen classes and the Hurwitz braid action.

A Nielsen tuple is an r-tuple of group elements with product one,
prescribed conjugacy classes and full generated group; tuples are always
considered up to simultaneous conjugation (the inner quotient).  The
canonical key of a tuple is the lexicographic minimum of the
concatenated image sequences over conjugation by all group elements, so
equal keys mean conjugate tuples, with no hashing heuristics involved.

Enumeration fixes the first entry as the minimal element of its class
and walks the remaining entries, deduplicating by the centralizer
action; this realizes the inner quotient exactly without enumerating
all |G| conjugates of every tuple.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import perms
from .groups import PermGroup
from .perms import compose, conjugate, inverse, is_identity, is_transitive


class EnumerationBound(RuntimeError):
    pass


class OrbitNotClosed(ValueError):
    pass


@dataclass(frozen=True)
class ClassTuple:
    group: PermGroup
    labels: tuple

    def __post_init__(self):
        if len(self.labels) < 2:
            raise ValueError("need at least two classes")
        for lab in self.labels:
            entry = self.group.class_table.entry(lab)
            if entry.cycle_type == (1,) * self.group.degree:
                raise ValueError("identity class not allowed in a class tuple")

    @property
    def r(self) -> int:
        return len(self.labels)


def braid_word(*letters) -> tuple:
    """A braid word as signed 1-based generator indices, e.g. (1,), (2,2), (-3,)."""
    w = tuple(int(v) for v in letters)
    if any(v == 0 for v in w):
        raise ValueError("braid letters are nonzero signed indices")
    return w


def braids_preserving_classes(labels):
    """Generators of the stabilizer of the class ordering: B_i when the
    neighbouring classes agree, B_i^2 otherwise."""
    words = []
    for i in range(1, len(labels)):
        if labels[i - 1] == labels[i]:
            words.append((i,))
        else:
            words.append((i, i))
    return words


def all_braids(r: int):
    return [(i,) for i in range(1, r)]


def braid_act(t: tuple, word) -> tuple:
    """Apply a braid word to a tuple, letter by letter.

    B_i maps (.., s_i, s_{i+1}, ..) to (.., s_i s_{i+1} s_i^-1, s_i, ..),
    and B_i^-1 is its inverse.  Product, generated group and class
    multiset are preserved.
    """
    t = list(t)
    r = len(t)
    for letter in word:
        i = abs(letter) - 1
        if not 0 <= i < r - 1:
            raise IndexError(f"braid index {letter} out of range for r={r}")
        a, b = t[i], t[i + 1]
        if letter > 0:
            t[i] = compose(compose(a, b), inverse(a))
            t[i + 1] = a
        else:
            t[i] = b
            t[i + 1] = compose(compose(inverse(b), a), b)
    return tuple(t)


class TupleCanonicalizer:
    """Exact Inn(G)-canonical forms for tuples over a fixed group.

    For each conjugacy class met, the minimal class element m and the
    transporter lists {g : s^g = m} are tabulated once (one pass over
    the group per class).  The canonical conjugator of a tuple is then
    found by filtering the first entry's transporters through the later
    entries, which prunes the |G|-fold minimum to a few dozen candidates.
    """

    def __init__(self, group: PermGroup):
        self.group = group
        self._elements = None
        self._class_data = {}  # class-min element -> (m, {elem: [g, ...]})
        self._min_of = {}  # element -> class-min

    def elements(self):
        if self._elements is None:
            self._elements = self.group.elements()
        return self._elements

    def _class_of(self, s):
        m = self._min_of.get(s)
        if m is not None:
            return self._class_data[m]
        orbit = {s}
        queue = deque([s])
        gens = self.group.generators
        ginvs = [inverse(g) for g in gens]
        while queue:
            x = queue.popleft()
            for g, gi in zip(gens, ginvs):
                c = tuple(g[x[i]] for i in gi)
                if c not in orbit:
                    orbit.add(c)
                    queue.append(c)
        m = min(orbit)
        transporter = {x: [] for x in orbit}
        for h in self.elements():
            hinv = inverse(h)
            x = tuple(h[m[i]] for i in hinv)  # m^h
            transporter[x].append(hinv)
        data = (m, transporter)
        for x in orbit:
            self._min_of[x] = m
        self._class_data[m] = data
        return data

    def class_elements(self, representative):
        m, transporter = self._class_of(tuple(representative))
        return sorted(transporter)

    def centralizer(self, s):
        """All group elements commuting with s."""
        s = tuple(s)
        m, transporter = self._class_of(s)
        if s == m:
            return list(transporter[m])
        h0_inv = inverse(transporter[s][0])
        return [compose(g, h0_inv) for g in transporter[s]]

    def canonical_pair(self, t):
        """Return (key, canonical tuple) for the Inn(G)-orbit of t."""
        m, transporter = self._class_of(t[0])
        candidates = transporter[t[0]]
        best_tuple = [m]
        for k in range(1, len(t)):
            best = None
            keep = []
            for g in candidates:
                c = conjugate(t[k], g)
                if best is None or c < best:
                    best = c
                    keep = [g]
                elif c == best:
                    keep.append(g)
            candidates = keep
            best_tuple.append(best)
        canon = tuple(best_tuple)
        return _key_of(canon), canon

    def canonical_key(self, t) -> bytes:
        return self.canonical_pair(t)[0]


def _key_of(tuples) -> bytes:
    return bytes(v for p in tuples for v in p)


def tuple_from_key(key: bytes, degree: int):
    vals = list(key)
    return tuple(
        tuple(vals[i : i + degree]) for i in range(0, len(vals), degree)
    )


def canonical_form(group: PermGroup, t) -> bytes:
    """Public wrapper; see TupleCanonicalizer."""
    return TupleCanonicalizer(group).canonical_key(t)


@dataclass
class NielsenSet:
    """One representative per Inn(G)-orbit of straight product-one tuples."""

    classes: ClassTuple
    representatives: list  # canonical tuples
    keys: set = field(default_factory=set)
    canonicalizer: TupleCanonicalizer | None = None

    @property
    def size(self) -> int:
        return len(self.representatives)


def enumerate_straight_nielsen(
    group: PermGroup, labels, raw_bound: int = 10**8
) -> NielsenSet:
    """Straight inner Nielsen class SNi^in for the ordered class labels.

    The first entry is pinned to the minimal element m of its class; the
    walk over the remaining entries is deduplicated level by level under
    the centralizer chain (Z = C(m), then the stabilizer of the second
    entry, and so on), which yields exactly one tuple per inner orbit.
    The final entry is forced by the product-one relation and filtered
    by exact class membership, then each surviving orbit representative
    is kept only if it generates the full group.
    """
    ct = ClassTuple(group, tuple(labels))
    canon = TupleCanonicalizer(group)
    r = ct.r
    reps_classes = [group.class_representative(lab) for lab in ct.labels]
    class_lists = [canon.class_elements(rep) for rep in reps_classes]
    last_inv_set = {inverse(s): s for s in class_lists[-1]}

    m, transporter = canon._class_of(tuple(reps_classes[0]))
    centralizer = sorted(transporter[m])  # stabilizer of the pinned first entry

    raw_count = 0
    found = {}
    order = group.order

    def centralizer_orbit_reps(elems, zs):
        """One representative per conjugation orbit of zs (a full subgroup
        given by its element list) on elems."""
        if len(zs) == 1:
            return elems
        seen = set()
        reps = []
        zinvs = [(z, inverse(z)) for z in zs]
        for e in elems:
            if e in seen:
                continue
            orbit = {tuple(z[e[i]] for i in zi) for z, zi in zinvs}
            seen.update(orbit)
            reps.append(e)
        return reps

    def emit(prefix, prefix_prod):
        # the final entry is forced by the product-one relation; it is
        # fixed by the whole remaining stabilizer (which commutes with
        # every prefix entry, hence with the prefix product), so no
        # further deduplication is needed here
        last = last_inv_set.get(prefix_prod)
        if last is not None:
            full = prefix + (last,)
            found.setdefault(_key_of(full[1:]), full)

    def walk(prefix, prefix_prod, level, stab):
        nonlocal raw_count
        if level == r - 1:
            raw_count += 1
            if raw_count > raw_bound:
                raise EnumerationBound(f"raw enumeration exceeded {raw_bound}")
            emit(prefix, prefix_prod)
            return
        if level == r - 2 and len(stab) == 1:
            elems = class_lists[level]
            raw_count += len(elems)
            if raw_count > raw_bound:
                raise EnumerationBound(f"raw enumeration exceeded {raw_bound}")
            for e in elems:
                emit(prefix + (e,), compose(prefix_prod, e))
            return
        for e in centralizer_orbit_reps(class_lists[level], stab):
            stab2 = [z for z in stab if conjugate(e, z) == e] if len(stab) > 1 else stab
            walk(prefix + (e,), compose(prefix_prod, e), level + 1, stab2)

    if r == 2:
        emit((m,), m)
    else:
        walk((m,), m, 1, centralizer)

    # generation filter on orbit representatives
    transitive_target = is_transitive(group.generators, group.degree)
    reps = []
    for key in sorted(found):
        t = found[key]
        if transitive_target and not is_transitive(list(t), group.degree):
            continue
        if perms.group_order(list(t), group.degree, stop_at_order=order) != order:
            continue
        reps.append(t)

    out = NielsenSet(ct, [], set(), canon)
    for t in reps:
        gkey, gcanon = canon.canonical_pair(t)
        if gkey in out.keys:
            raise RuntimeError("canonical-form collision during enumeration")
        out.keys.add(gkey)
        out.representatives.append(gcanon)
    out.representatives.sort()
    return out


def braid_orbits(group, tuples, words, extend: bool = False):
    """Partition a set of tuples into orbits under the given braid words.

    The reported orbits are the equivalence classes of the *input*
    tuples under joint braid reachability, so their sizes always sum to
    the input size.  With extend=False the input must be closed under
    the words (an escaping image raises OrbitNotClosed); with
    extend=True the BFS is allowed to walk through tuples outside the
    input, e.g. through reorderings of the class vector, and the full
    closure is available in the returned index.

    Returns (orbits, index): orbits as sorted key lists, index mapping
    every visited canonical key to its canonical tuple.
    """
    canon = TupleCanonicalizer(group) if isinstance(group, PermGroup) else group
    index = {}
    input_keys = set()
    for t in tuples:
        key, ct = canon.canonical_pair(tuple(t))
        index.setdefault(key, ct)
        input_keys.add(key)
    unseen = set(input_keys)
    orbits = []
    while unseen:
        seed = min(unseen)
        orbit = {seed}
        queue = deque([seed])
        while queue:
            key = queue.popleft()
            t = index[key]
            for w in words:
                image = braid_act(t, w)
                ikey, icanon = canon.canonical_pair(image)
                if ikey not in index:
                    if not extend:
                        raise OrbitNotClosed(
                            "braid image leaves the given tuple set"
                        )
                    index[ikey] = icanon
                if ikey not in orbit:
                    orbit.add(ikey)
                    queue.append(ikey)
        unseen.difference_update(orbit)
        orbits.append(sorted(orbit & input_keys))
    orbits.sort(key=lambda o: (len(o), o[0]))
    return orbits, index


def braid_closure(group, tuples, words):
    """Full closure orbits (not restricted to the input set).

    Returns (orbits, index) where the orbits partition every tuple
    reachable from the input under the words.
    """
    canon = TupleCanonicalizer(group) if isinstance(group, PermGroup) else group
    index = {}
    pending = []
    for t in tuples:
        key, ct = canon.canonical_pair(tuple(t))
        if key not in index:
            index[key] = ct
            pending.append(key)
    orbits = []
    done = set()
    for seed in pending:
        if seed in done:
            continue
        orbit = {seed}
        queue = deque([seed])
        while queue:
            key = queue.popleft()
            t = index[key]
            for w in words:
                image = braid_act(t, w)
                ikey, icanon = canon.canonical_pair(image)
                if ikey not in index:
                    index[ikey] = icanon
                if ikey not in orbit:
                    orbit.add(ikey)
                    queue.append(ikey)
        done.update(orbit)
        orbits.append(sorted(orbit))
    orbits.sort(key=lambda o: (len(o), o[0]))
    return orbits, index


def full_braid_closure(group, tuples):
    """Closure under all braid generators (all orderings of the class
    multiset get mixed in); returns (orbits, index)."""
    r = len(next(iter(tuples)))
    return braid_closure(group, tuples, all_braids(r))


# ---------------------------------------------------------------------------
# orbit dump files


def write_orbit_dump(path, group: PermGroup, labels, words, orbits, index):
    with open(path, "w") as fh:
        fh.write(f"# group {group.name} degree {group.degree}\n")
        fh.write(f"# classes {','.join(labels)}\n")
        fh.write(f"# braids {','.join(_word_name(w) for w in words)}\n")
        for i, orbit in enumerate(orbits, 1):
            fh.write(f"# orbit {i} size {len(orbit)}\n")
            for key in orbit:
                t = index[key]
                fh.write(" ".join(perms.format_perm(p) for p in t) + "\n")


def read_orbit_dump(path, degree: int):
    orbits = []
    header = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if parts[:1] == ["orbit"]:
                    orbits.append([])
                elif parts[:1] == ["group"]:
                    header["group"] = parts[1]
                    header["degree"] = int(parts[3])
                elif parts[:1] == ["classes"]:
                    header["classes"] = parts[1].split(",")
                elif parts[:1] == ["braids"]:
                    header["braids"] = parts[1]
                continue
            t = tuple(perms.parse_perm(tok, degree) for tok in line.split())
            if not orbits:
                orbits.append([])
            orbits[-1].append(t)
    return header, orbits


def _word_name(word):
    out = []
    for letter in word:
        out.append(f"B{letter}" if letter > 0 else f"B{-letter}^-1")
    name = "*".join(out)
    # compress B2*B2 to B2^2 for readability
    if len(word) == 2 and word[0] == word[1] and word[0] > 0:
        name = f"B{word[0]}^2"
    return name


def check_product_one(t) -> bool:
    prod = t[0]
    for s in t[1:]:
        prod = compose(prod, s)
    return is_identity(prod)
