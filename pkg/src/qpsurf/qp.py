"""Quivers with potentials: validation, premutation, splitting, mutation, restriction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    Path,
    Substitution,
    apply_substitution,
    arrow_path,
    compose_substitutions,
    cyclic_normal_form,
    is_cyclic_element,
    least_rotation,
    path_head,
    path_is_cycle,
    rotations,
)
from .quiver import Quiver, hook_name
from . import linalg


class QPError(ValueError):
    pass


class QP:
    """A quiver together with a potential at a fixed truncation order.

    The potential is stored as given; use validate_qp to check that no two
    distinct stored cycles are cyclically equivalent.
    """

    def __init__(self, quiver, potential, order=None):
        if order is None:
            order = potential.order
        if potential.quiver != quiver or potential.order != order:
            raise QPError("potential does not live over this quiver at this order")
        if not is_cyclic_element(potential):
            raise QPError("potential has a non-cyclic term")
        self.quiver = quiver
        self.potential = potential
        self.order = int(order)

    def normalized(self):
        return QP(self.quiver, cyclic_normal_form(self.potential), self.order)

    def __eq__(self, other):
        if not isinstance(other, QP):
            return NotImplemented
        return (self.quiver == other.quiver and self.order == other.order
                and cyclic_normal_form(self.potential) == cyclic_normal_form(other.potential))

    def __repr__(self):
        return "QP(%r, %d potential terms, order=%d)" % (
            self.quiver, len(self.potential.terms), self.order)

    def to_text(self):
        out = ["truncation: %d" % self.order, self.quiver.to_text().rstrip("\n"), "potential:"]
        out.append(self.potential.to_text().rstrip("\n"))
        return "\n".join(out) + "\n"

    @staticmethod
    def from_text(text):
        order = None
        quiver_lines = []
        potential_lines = []
        in_potential = False
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("truncation:"):
                order = int(line.split(":", 1)[1])
            elif line == "potential:":
                in_potential = True
            elif in_potential:
                potential_lines.append(line)
            else:
                quiver_lines.append(line)
        if order is None:
            raise QPError("missing 'truncation:' header")
        quiver = Quiver.from_text("\n".join(quiver_lines))
        potential = AlgebraElement.from_text(quiver, order, "\n".join(potential_lines))
        return QP(quiver, potential, order)


def validate_qp(qp):
    """Diagnostics list; empty means the pair is a valid QP."""
    problems = []
    seen = {}
    for p in qp.potential.terms:
        if not path_is_cycle(qp.quiver, p):
            problems.append("non-cyclic term %r" % (p.arrows,))
            continue
        rep = least_rotation(p)
        if rep in seen and seen[rep] != p:
            problems.append(
                "cyclically equivalent distinct terms %r and %r"
                % (seen[rep].arrows, p.arrows))
        else:
            seen[rep] = p
    return problems


def _require_valid(qp):
    problems = validate_qp(qp)
    if problems:
        raise QPError("invalid QP: " + "; ".join(problems))


def _rotate_away_from(quiver, p, k):
    """Least rotation of the cycle whose word does not begin at vertex k."""
    cands = [(rot.arrows, idx, rot) for idx, rot in rotations(p)
             if path_head(quiver, rot) != k]
    if not cands:
        raise QPError("cycle %r cannot avoid beginning at %r" % (p.arrows, k))
    return min(cands)[2]


def premutate_qp(qp, k):
    """Premutation at vertex k.

    Each potential term is rotated so it does not begin at k, every k-hook ab
    inside it is replaced by the composite arrow [a.b], and the sum of
    b* a* [a.b] over all k-hooks of the quiver is added.
    """
    from .quiver import premutate_quiver

    _require_valid(qp)
    q = qp.quiver
    if k not in q.vertices:
        raise QPError("unknown vertex %r" % k)
    new_quiver = premutate_quiver(q, k)  # also rejects 2-cycles at k

    terms = {}
    for p, c in cyclic_normal_form(qp.potential).terms.items():
        rot = _rotate_away_from(q, p, k)
        word = []
        i = 0
        arrows = rot.arrows
        while i < len(arrows):
            a = arrows[i]
            if q.arrow(a).tail == k:
                if i + 1 >= len(arrows):
                    raise QPError("cycle %r begins at %r after rotation" % (arrows, k))
                b = arrows[i + 1]
                word.append(hook_name(a, b))
                i += 2
            else:
                if q.arrow(a).head == k:
                    raise QPError("arrow %r into %r outside a hook" % (a, k))
                word.append(a)
                i += 1
        np = Path(tuple(word))
        terms[np] = terms.get(np, Fraction(0)) + c

    for a in q.arrows:
        if a.tail != k:
            continue
        for b in q.arrows:
            if b.head != k:
                continue
            p = arrow_path(b.name + "*", a.name + "*", hook_name(a.name, b.name))
            terms[p] = terms.get(p, Fraction(0)) + 1

    potential = cyclic_normal_form(AlgebraElement(new_quiver, qp.order, terms))
    return QP(new_quiver, potential, qp.order)


@dataclass
class SplitResult:
    trivial: QP
    reduced: QP
    witness: Substitution


def _two_cycle_rep(x_name, y_name):
    return least_rotation(arrow_path(x_name, y_name))


def _normalize_pairing(qp):
    """Arrow basis change making the degree-2 part a sum of distinct 2-cycles.

    For each unordered vertex pair, the bilinear matrix between the opposite
    arrow blocks that appear in the degree-2 part is diagonalised by an exact
    basis change acting only on those arrows.  Returns the transformed QP,
    the substitution used, and the list of trivial pairs (a_j, b_j).
    """
    s = cyclic_normal_form(qp.potential)
    s2 = s.degree_part(2)
    if s2.is_zero():
        return qp, Substitution.identity(qp.quiver, qp.order), []

    q = qp.quiver
    blocks = {}
    for p, c in s2.terms.items():
        x = q.arrow(p.arrows[0])
        pair = tuple(sorted((x.tail, x.head)))
        blocks.setdefault(pair, {})[p] = c

    images = {}
    pairs = []
    for (u, v) in sorted(blocks):
        coeffs = blocks[(u, v)]
        xs = sorted({name for p in coeffs for name in p.arrows
                     if q.arrow(name).tail == u})
        ys = sorted({name for p in coeffs for name in p.arrows
                     if q.arrow(name).tail == v})
        m = [[coeffs.get(_two_cycle_rep(x, y), Fraction(0)) for y in ys] for x in xs]
        p_ops, q_ops, r = linalg.diagonalize_pairing(m)
        if r == 0:
            raise QPError("degenerate degree-2 pairing on arrows it names")
        # p_ops @ m @ q_ops = E_r, so send x_i to sum_i' p_ops[i'][i] x_i'
        # and y_j to sum_j' q_ops[j][j'] y_j'.
        for i, x in enumerate(xs):
            img = {arrow_path(xs[i2]): p_ops[i2][i] for i2 in range(len(xs))}
            images[x] = AlgebraElement(qp.quiver, qp.order, img)
        for j, y in enumerate(ys):
            img = {arrow_path(ys[j2]): q_ops[j][j2] for j2 in range(len(ys))}
            images[y] = AlgebraElement(qp.quiver, qp.order, img)
        pairs.extend((xs[t], ys[t]) for t in range(r))

    phi = Substitution(qp.quiver, qp.quiver, qp.order, images)
    new_s = cyclic_normal_form(apply_substitution(phi, qp.potential))
    new_qp = QP(qp.quiver, new_s, qp.order)

    expect = {_two_cycle_rep(a, b): Fraction(1) for (a, b) in pairs}
    if new_s.degree_part(2).terms != expect:
        raise QPError("pairing normalisation failed")
    return new_qp, phi, pairs


def _extract_factors(s, a_name, b_name, pair_rep):
    """Factors u (after a_j) and v (before b_j) collected from the potential.

    Terms other than the 2-cycle itself that contain a_j are rotated to start
    with a_j and contribute the remainder to u; terms containing b_j but not
    a_j are rotated to end with b_j and contribute the prefix to v.
    """
    u_terms = {}
    v_terms = {}
    for p, c in s.terms.items():
        if p == pair_rep:
            continue
        arrows = p.arrows
        if a_name in arrows:
            i = arrows.index(a_name)
            rest = Path(arrows[i + 1:] + arrows[:i])
            u_terms[rest] = u_terms.get(rest, Fraction(0)) + c
        elif b_name in arrows:
            i = arrows.index(b_name)
            rest = Path(arrows[i + 1:] + arrows[:i])
            v_terms[rest] = v_terms.get(rest, Fraction(0)) + c
    u = AlgebraElement(s.quiver, s.order, u_terms, check=False)
    v = AlgebraElement(s.quiver, s.order, v_terms, check=False)
    return u, v


def _subquiver(quiver, arrow_names):
    keep = set(arrow_names)
    return Quiver(quiver.vertices, [a for a in quiver.arrows if a.name in keep])


def split_qp(qp):
    """Split a QP into its trivial and reduced parts with an explicit witness.

    After the degree-2 pairing is normalised, the trivial 2-cycles are
    handled one at a time: for the pair (a, b) the unitriangular substitution
    a -> a - v, b -> b - u removes the cross terms a u and v b, pushing any
    new cross terms into strictly higher degree.  Sweeping over the pairs
    until nothing changes terminates at the truncation order.
    """
    _require_valid(qp)
    base, witness, pairs = _normalize_pairing(qp.normalized())
    order = qp.order
    quiver = qp.quiver
    s = base.potential

    if pairs:
        reps = {(a, b): _two_cycle_rep(a, b) for (a, b) in pairs}
        for sweep in range(order + 3):
            changed = False
            for (a, b) in pairs:
                u, v = _extract_factors(s, a, b, reps[(a, b)])
                if u.is_zero() and v.is_zero():
                    continue
                changed = True
                img_a = AlgebraElement.from_word(quiver, order, [a]) - v
                img_b = AlgebraElement.from_word(quiver, order, [b]) - u
                phi = Substitution(quiver, quiver, order, {a: img_a, b: img_b})
                s = cyclic_normal_form(apply_substitution(phi, s))
                witness = compose_substitutions(phi, witness)
            if not changed:
                break
        else:
            raise QPError("splitting did not converge within the truncation order")

    trivial_arrows = set()
    for (a, b) in pairs:
        trivial_arrows.add(a)
        trivial_arrows.add(b)
    triv_terms = {}
    red_terms = {}
    for p, c in s.terms.items():
        if set(p.arrows) & trivial_arrows:
            if len(p) != 2:
                raise QPError("trivial arrow leaked into a higher-degree term")
            triv_terms[p] = c
        else:
            red_terms[p] = c

    triv_quiver = _subquiver(quiver, trivial_arrows)
    red_quiver = _subquiver(quiver, [a.name for a in quiver.arrows
                                     if a.name not in trivial_arrows])
    triv = QP(triv_quiver, AlgebraElement(triv_quiver, order, triv_terms), order)
    red = QP(red_quiver, AlgebraElement(red_quiver, order, red_terms), order)
    if not red.potential.degree_part(2).is_zero():
        raise QPError("reduced part kept a degree-2 term")
    return SplitResult(trivial=triv, reduced=red, witness=witness)


def is_trivial_qp(qp):
    """Degree-2 potential whose cyclic derivatives span the arrow space."""
    if any(len(p) != 2 for p in qp.potential.terms):
        return False
    from .algebra import cyclic_derivative

    elim = linalg.SparseEliminator()
    for a in qp.quiver.arrows:
        d = cyclic_derivative(qp.potential, a.name)
        row = {p.arrows[0]: c for p, c in d.terms.items() if len(p) == 1}
        elim.add_row(row)
    return elim.rank == len(qp.quiver.arrows)


def mutate_qp(qp, k):
    """QP-mutation: the reduced part of the premutation at k."""
    return split_qp(premutate_qp(qp, k)).reduced


def quiver_mutation_matches(qp, k):
    """Whether QP-mutation at k lands on the plainly mutated quiver.

    The two can legitimately differ: the potential decides which 2-cycles of
    the premutation get removed, so a degenerate pairing leaves 2-cycles that
    plain quiver mutation would cancel.  Reported, never asserted.
    """
    from .quiver import mutate_quiver

    got = mutate_qp(qp, k).quiver.multiplicities()
    want = mutate_quiver(qp.quiver, k).multiplicities()
    return got == want


def restrict_qp(qp, keep):
    """Restriction to a vertex subset: arrows and potential terms outside die.

    The vertex set is unchanged; vertices outside the subset become isolated.
    """
    keep = set(keep)
    unknown = keep - set(qp.quiver.vertices)
    if unknown:
        raise QPError("unknown vertices %r" % sorted(unknown))
    kept_arrows = [a for a in qp.quiver.arrows if a.tail in keep and a.head in keep]
    new_quiver = Quiver(qp.quiver.vertices, kept_arrows)
    names = {a.name for a in kept_arrows}
    terms = {p: c for p, c in qp.potential.terms.items()
             if set(p.arrows) <= names}
    return QP(new_quiver, AlgebraElement(new_quiver, qp.order, terms), qp.order)
