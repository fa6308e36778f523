"""Potentials attached to triangulations, before and after reduction.

Every summand is an oriented cycle read off the triangulation: one cycle per
interior triangle, correction cycles through folded sides, and one cycle per
puncture running counter-clockwise around it.  Cancelled triangle adjacencies
are realised by the arrows added at valence-2 punctures, so each cycle always
closes up inside the unreduced quiver.
"""

from __future__ import annotations

import warnings as _warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraElement, Path, cyclic_normal_form
from .qp import QP, split_qp
from .quiver import quiver_from_matrix
from .surface import SurfaceError, signed_adjacency


class PotentialBuildWarning(UserWarning):
    pass


@dataclass
class PotentialAssembly:
    """Summands of the potential of a triangulation, by origin.

    Each value is a (word, coefficient) pair; triangle and correction terms
    are keyed by triangle index, puncture terms by puncture id.
    """

    quiver: object
    order: int
    triangle_terms: dict = field(default_factory=dict)
    correction_terms: dict = field(default_factory=dict)
    puncture_terms: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def total(self):
        terms = {}
        for group in (self.triangle_terms, self.correction_terms, self.puncture_terms):
            for word, coeff in group.values():
                p = Path(tuple(word))
                terms[p] = terms.get(p, Fraction(0)) + coeff
        return cyclic_normal_form(AlgebraElement(self.quiver, self.order, terms))


def _triangle_word(analysis, t, copies):
    """Composable cycle through the three corners of a triangle.

    `copies` picks, per slot, which preimage of the slot's side carries the
    cycle (the side itself, or the folded side parallel to it).
    """
    w = [analysis.resolve(t, m, copies[m], copies[(m + 1) % 3]) for m in range(3)]
    return (w[0], w[2], w[1])


def _loop_slot(analysis, loop):
    """The slot of an enclosing loop that lies outside its self-folded triangle."""
    for slot in analysis.slots_of[loop]:
        if slot[0] not in analysis.self_folded:
            return slot
    raise SurfaceError("enclosing loop %r has no outer triangle" % loop)


def _walk_step_arrow(analysis, corners, u_arc, v_arc):
    """Arrow from u to v realised at one of the given corners."""
    tri = analysis.tri
    found = []
    for (t, m) in corners:
        if t in analysis.self_folded:
            continue
        triple = tri.triangles[t]
        for i in analysis._preimages(triple[m]):
            if i != u_arc:
                continue
            for j in analysis._preimages(triple[(m + 1) % 3]):
                if j == v_arc:
                    found.append(analysis.resolve(t, m, i, j))
    if len(found) != 1:
        raise SurfaceError(
            "expected one arrow %r -> %r around the puncture, found %d"
            % (u_arc, v_arc, len(found)))
    return found[0]


def potential_assembly(tri, order=6):
    """Per-origin summands of the potential of a triangulation."""
    a = tri.analysis()
    surf = tri.surface
    asm = PotentialAssembly(quiver=a.unreduced, order=order)

    def checked(word):
        if len(word) > order:
            raise SurfaceError(
                "cycle of length %d does not fit in truncation order %d" % (len(word), order))
        return word

    for t, triple in enumerate(tri.triangles):
        if t in a.self_folded:
            continue
        if not all(tri.sides[s].is_arc for s in triple):
            continue
        asm.triangle_terms[t] = (checked(_triangle_word(a, t, triple)), Fraction(1))
        loops = [s for s in set(triple) if s in a.enclosed]
        if len(loops) == 2:
            copies = tuple(a.fold_back.get(s, s) for s in triple)
            x = surf.scalars[a.enclosed[loops[0]]] * surf.scalars[a.enclosed[loops[1]]]
            asm.correction_terms[t] = (checked(_triangle_word(a, t, copies)), Fraction(1) / x)

    for q, ends in a.puncture_ends.items():
        if len(ends) == 1:
            folded = ends[0]
            loop = a.fold[folded]
            t, m_loop = _loop_slot(a, loop)
            triple = tri.triangles[t]
            others = [triple[m] for m in range(3) if m != m_loop]
            if not all(tri.sides[s].is_arc for s in others):
                message = ("puncture %r: self-folded triangle flanked by boundary "
                           "segments; no cycle is attached" % q)
                asm.warnings.append(message)
                _warnings.warn(message, PotentialBuildWarning)
                continue
            copies = tuple(folded if m == m_loop else triple[m] for m in range(3))
            asm.puncture_terms[q] = (checked(_triangle_word(a, t, copies)),
                                     Fraction(-1) / surf.scalars[q])
            continue

        cycle = a.puncture_cycle[q]
        nverts = len(cycle)
        keep = [i for i, side in enumerate(ends) if side not in a.enclosed]
        if len(keep) < 2:
            raise SurfaceError("puncture %r retains fewer than two arcs" % q)
        walk = []
        for n, i in enumerate(keep):
            j = keep[(n + 1) % len(keep)]
            span = []
            s = (i + 1) % nverts
            while True:
                span.append(cycle[s])
                if s == j:
                    break
                s = (s + 1) % nverts
            walk.append(_walk_step_arrow(a, span, ends[i], ends[j]))
        asm.puncture_terms[q] = (checked(tuple(reversed(walk))), surf.scalars[q])

    return asm


def unreduced_potential(tri, order=6):
    """Potential on the unreduced adjacency quiver at the given order."""
    return potential_assembly(tri, order).total()


def qp_of_triangulation(tri, order=6):
    """Reduced QP of a triangulation; its quiver matches the adjacency matrix."""
    potential = unreduced_potential(tri, order)
    reduced = split_qp(QP(potential.quiver, potential, order)).reduced
    expected = quiver_from_matrix(signed_adjacency(tri))
    if reduced.quiver.multiplicities() != expected.multiplicities():
        raise SurfaceError("reduced quiver does not match the adjacency matrix")
    return reduced
