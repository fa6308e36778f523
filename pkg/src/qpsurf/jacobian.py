"""Truncated Jacobian ideals: quotient dimensions, rigidity, finite-dimension evidence."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    Path,
    cyclic_derivative,
    least_rotation,
    path_head,
    path_is_cycle,
    path_tail,
    rotations,
    vertex_path,
)
from .linalg import SparseEliminator
from .qp import validate_qp


class JacobianError(ValueError):
    pass


def paths_by_length(quiver, max_len):
    """Lists of all paths of each length 0..max_len, extension on the right."""
    levels = [[vertex_path(v) for v in quiver.vertices]]
    if max_len >= 1:
        levels.append([Path((a.name,)) for a in sorted(quiver.arrows, key=lambda a: a.name)])
    for _ in range(2, max_len + 1):
        nxt = []
        for p in levels[-1]:
            tail = quiver.arrow(p.arrows[-1]).tail
            for a in quiver.arrows:
                if a.head == tail:
                    nxt.append(Path(p.arrows + (a.name,)))
        levels.append(nxt)
    return levels


def jacobian_generators(qp):
    """One cyclic derivative per arrow, in arrow order."""
    problems = validate_qp(qp)
    if problems:
        raise JacobianError("invalid QP: " + "; ".join(problems))
    return [cyclic_derivative(qp.potential, a.name) for a in qp.quiver.arrows]


def _ideal_rows(qp, order):
    """Spanning rows of the two-sided ideal of the derivatives, within degree `order`."""
    from .algebra import truncate

    quiver = qp.quiver
    levels = paths_by_length(quiver, order)
    rows = []
    for gen in jacobian_generators(qp):
        gen = truncate(gen, order)
        if gen.is_zero():
            continue
        gmin = gen.min_degree()
        heads = {path_head(quiver, p) for p in gen.terms}
        tails = {path_tail(quiver, p) for p in gen.terms}
        for lp in range(0, order - gmin + 1):
            for p in levels[lp]:
                if path_tail(quiver, p) not in heads:
                    continue
                left = AlgebraElement.from_path(quiver, order, p) * gen
                if left.is_zero():
                    continue
                for ls in range(0, order - gmin - lp + 1):
                    for s in levels[ls]:
                        if path_head(quiver, s) not in tails:
                            continue
                        row = left * AlgebraElement.from_path(quiver, order, s)
                        if not row.is_zero():
                            rows.append(dict(row.terms))
    return rows, levels


def _truncate_row(row, degree):
    return {p: c for p, c in row.items() if len(p) <= degree}


@dataclass
class DimensionReport:
    order: int
    dims: list
    path_counts: list
    ranks: list
    certified: bool
    certified_order: int | None
    absorbed: list = field(default_factory=list)

    @property
    def dimension(self):
        return self.dims[-1]

    def to_text(self):
        lines = ["order #paths ideal-rank dim certified"]
        for d in range(self.order + 1):
            cert = "yes" if self.certified and self.certified_order is not None \
                and d >= self.certified_order else "no"
            lines.append("%d %d %d %d %s"
                         % (d, self.path_counts[d], self.ranks[d], self.dims[d], cert))
        return "\n".join(lines) + "\n"


def truncated_quotient_dim(qp, order):
    """Per-degree dimensions of the quotient by the derivative ideal.

    dim_d is the dimension of (paths of length <= d) modulo the ideal span
    and all longer paths.  The certificate fires at the first d whose paths
    of length d and d+1 all lie in the span; from there on every longer path
    does too, so the quotient dimension has stabilised.
    """
    if order < 1:
        raise JacobianError("order must be >= 1")
    if order > qp.order:
        raise JacobianError(
            "order %d exceeds the QP truncation %d; rebuild the QP deeper" % (order, qp.order))
    rows, levels = _ideal_rows(qp, order)

    dims = []
    path_counts = []
    ranks = []
    absorbed = []
    total = 0
    for d in range(order + 1):
        total += len(levels[d])
        path_counts.append(total)
        elim = SparseEliminator()
        for row in rows:
            tr = _truncate_row(row, d)
            if tr:
                elim.add_row(tr)
        ranks.append(elim.rank)
        dims.append(total - elim.rank)
        if d >= 1:
            absorbed.append(all(elim.contains({p: Fraction(1)}) for p in levels[d]))
        else:
            absorbed.append(False)

    certified = False
    certified_order = None
    for d in range(1, order):
        if absorbed[d] and absorbed[d + 1]:
            certified = True
            certified_order = d
            break
    return DimensionReport(order=order, dims=dims, path_counts=path_counts,
                           ranks=ranks, certified=certified,
                           certified_order=certified_order, absorbed=absorbed)


@dataclass
class RigidityReport:
    max_order: int
    rigid: bool
    witness: Path | None

    def to_text(self):
        if self.rigid:
            return "rigid-up-to-%d\n" % self.max_order
        return "non-rigid witness: %s\n" % " ".join(self.witness.arrows)


def is_rigid_up_to(qp, order):
    """Test every cycle against the ideal span plus all rotation differences.

    A failing cycle is a sound non-rigidity certificate: membership at every
    finite order is necessary for rigidity.
    """
    if order < 1:
        raise JacobianError("order must be >= 1")
    if order > qp.order:
        raise JacobianError(
            "order %d exceeds the QP truncation %d; rebuild the QP deeper" % (order, qp.order))
    quiver = qp.quiver
    rows, levels = _ideal_rows(qp, order)
    elim = SparseEliminator()
    for row in rows:
        elim.add_row(row)

    reps = []
    seen = set()
    for d in range(2, order + 1):
        for p in levels[d]:
            if not path_is_cycle(quiver, p):
                continue
            rep = least_rotation(p)
            if rep in seen:
                continue
            seen.add(rep)
            reps.append(rep)
            for _, rot in rotations(rep):
                if rot != rep:
                    elim.add_row({rep: Fraction(1), rot: Fraction(-1)})

    for rep in sorted(reps, key=lambda p: (len(p), p.arrows)):
        if not elim.contains({rep: Fraction(1)}):
            return RigidityReport(max_order=order, rigid=False, witness=rep)
    return RigidityReport(max_order=order, rigid=True, witness=None)


def finite_dim_evidence(qp, dmax):
    """Increasing-order dimension reports until stabilisation is certified."""
    report = None
    for d in range(2, dmax + 1):
        report = truncated_quotient_dim(qp, d)
        if report.certified:
            return report
    if report is None:
        report = truncated_quotient_dim(qp, max(1, dmax))
    return report
