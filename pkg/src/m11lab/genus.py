"""Riemann-Hurwitz arithmetic and reduced braid-monodromy genus.

For a 4-point class tuple the reduced (symmetrized) Hurwitz curve covers
a three-point line; its monodromy is read off the braid orbit after
quotienting by the Klein four group Q generated by B1*B3^-1 and
(B1*B2*B3)^2.  The images of B1*B2, B1*B2*B3 and B2 give gamma_0,
gamma_1 and gamma_infinity.  Conventions for this quotient drift across
the literature, so the construction asserts the defining relations
(gamma_0^3 = gamma_1^2 = gamma_0*gamma_1*gamma_inf = id) on the computed
action instead of trusting them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import perms
from .nielsen import (
    TupleCanonicalizer,
    braid_act,
    full_braid_closure,
)


class GenusError(ValueError):
    pass


class ConventionError(AssertionError):
    """A gamma relation failed; the reduction convention is broken."""


@dataclass(frozen=True)
class RamificationType:
    degree: int
    branch_cycle_types: tuple

    def __post_init__(self):
        for ct in self.branch_cycle_types:
            if sum(ct) != self.degree:
                raise GenusError(
                    f"cycle type {ct} does not sum to degree {self.degree}"
                )

    def index_sum(self) -> int:
        return sum(self.degree - len(ct) for ct in self.branch_cycle_types)


def cycle_index(parts) -> int:
    """ind = degree - number of cycles, for one branch cycle type."""
    return sum(parts) - len(parts)


def riemann_hurwitz_genus(ram: RamificationType) -> int:
    """Genus g from 2(degree + g - 1) = sum of indices."""
    s = ram.index_sum()
    if s % 2:
        raise GenusError(f"odd index sum {s}")
    g = s // 2 - ram.degree + 1
    if g < 0:
        raise GenusError(f"negative genus {g} (inconsistent ramification data)")
    return g


def genus_of_class_tuple(group, labels) -> int:
    """Riemann-Hurwitz genus of a class tuple in the group's action."""
    table = group.class_table
    types = tuple(table.entry(lab).cycle_type for lab in labels)
    return riemann_hurwitz_genus(RamificationType(group.degree, types))


# ---------------------------------------------------------------------------
# reduced actions for r = 4

KLEIN_WORDS = ((1, -3), (1, 2, 3, 1, 2, 3))
GAMMA_WORDS = {"gamma_0": (1, 2), "gamma_1": (1, 2, 3), "gamma_inf": (2,)}


@dataclass
class ReducedAction:
    points: int
    gamma_0: tuple
    gamma_1: tuple
    gamma_inf: tuple
    orbit_size: int
    fiber_sizes: list

    def cycle_types(self):
        return {
            name: perms.cycle_type(p)
            for name, p in (
                ("gamma_0", self.gamma_0),
                ("gamma_1", self.gamma_1),
                ("gamma_inf", self.gamma_inf),
            )
        }

    def assert_relations(self):
        if not perms.is_identity(perms.power(self.gamma_0, 3)):
            raise ConventionError("gamma_0^3 is not the identity")
        if not perms.is_identity(perms.power(self.gamma_1, 2)):
            raise ConventionError("gamma_1^2 is not the identity")
        triple = perms.compose3(self.gamma_0, self.gamma_1, self.gamma_inf)
        if not perms.is_identity(triple):
            raise ConventionError("gamma_0*gamma_1*gamma_inf is not the identity")


def reduced_braid_action(group, tuples, symmetrize: bool = True) -> ReducedAction:
    """Monodromy action of the reduced Hurwitz curve of a 4-point orbit.

    tuples: representatives of one braid orbit of 4-tuples.  With
    symmetrize=True (the variant reproducing the paper's genus values)
    the orbit is first closed under all braid generators, which merges
    the orderings of the class vector; only coordinates in equal classes
    actually meet, so this is the class-preserving symmetrization.  The
    Klein-four quotient and the induced gammas are then computed and the
    defining relations are asserted.
    """
    tuples = list(tuples)
    if not tuples or len(tuples[0]) != 4:
        raise GenusError("reduced actions are defined for r = 4 only")
    canon = group if isinstance(group, TupleCanonicalizer) else TupleCanonicalizer(group)
    if symmetrize:
        orbits, index = full_braid_closure(canon, tuples)
        if len(orbits) != 1:
            raise GenusError(
                f"input spans {len(orbits)} braid orbits; pass one orbit at a time"
            )
        keys = set(orbits[0])
    else:
        index = {}
        keys = set()
        for t in tuples:
            k, ct = canon.canonical_pair(tuple(t))
            index[k] = ct
            keys.add(k)

    # Klein-four quotient
    cls = {}
    fibers = []
    for k in sorted(keys):
        if k in cls:
            continue
        comp = {k}
        queue = deque([k])
        while queue:
            x = queue.popleft()
            for w in KLEIN_WORDS:
                ik, icanon = canon.canonical_pair(braid_act(index[x], w))
                if ik not in keys:
                    raise GenusError("Klein-four move escapes the orbit")
                if ik not in comp:
                    comp.add(ik)
                    queue.append(ik)
        for x in comp:
            cls[x] = len(fibers)
        fibers.append(sorted(comp))

    n = len(fibers)

    def induced(word):
        img = [None] * n
        for ci, members in enumerate(fibers):
            targets = {
                cls[canon.canonical_pair(braid_act(index[k], word))[0]]
                for k in members
            }
            if len(targets) != 1:
                raise ConventionError(
                    f"braid word {word} is not constant on a Klein-four fiber"
                )
            img[ci] = targets.pop()
        return tuple(img)

    action = ReducedAction(
        points=n,
        gamma_0=induced(GAMMA_WORDS["gamma_0"]),
        gamma_1=induced(GAMMA_WORDS["gamma_1"]),
        gamma_inf=induced(GAMMA_WORDS["gamma_inf"]),
        orbit_size=len(keys),
        fiber_sizes=sorted({len(f) for f in fibers}),
    )
    action.assert_relations()
    return action


def reduced_genus(action: ReducedAction) -> int:
    """Riemann-Hurwitz over the three-point base."""
    s = sum(
        cycle_index(perms.cycle_type(p))
        for p in (action.gamma_0, action.gamma_1, action.gamma_inf)
    )
    if s % 2:
        raise GenusError(f"odd total index {s} in reduced action")
    g = s // 2 - action.points + 1
    if g < 0:
        raise GenusError(f"negative reduced genus {g}")
    return g


def genus_report(group, labels, action: ReducedAction) -> dict:
    """Machine-readable summary consumed by the CLI."""
    types = action.cycle_types()
    return {
        "group": group.name,
        "degree": group.degree,
        "classes": list(labels),
        "orbit_size": action.orbit_size,
        "reduced_points": action.points,
        "klein_fiber_sizes": action.fiber_sizes,
        "gamma_cycle_types": {
            k: perms.format_cycle_type(v) for k, v in types.items()
        },
        "reduced_genus": reduced_genus(action),
    }
