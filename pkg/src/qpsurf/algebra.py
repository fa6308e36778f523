"""Truncated arithmetic in the complete path algebra of a quiver.

Elements are finite rational combinations of paths of length at most a fixed
truncation order D.  Multiplication discards any product path longer than D,
which is exact in every degree up to D.  Paths compose like functions: in the
word a1 a2 ... ad the arrow ad is traversed first, so t(a_j) = h(a_{j+1}),
the word starts at t(ad) and ends at h(a1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Path:
    """Arrow-id word; a length-0 path carries its vertex instead."""

    arrows: tuple
    vertex: str = ""

    def __post_init__(self):
        if len(self.arrows) > 0 and self.vertex:
            raise AlgebraError("positive-length path must not carry a vertex")
        if len(self.arrows) == 0 and not self.vertex:
            raise AlgebraError("length-0 path needs a vertex")

    def __len__(self):
        return len(self.arrows)


def vertex_path(v):
    return Path((), v)


def arrow_path(*names):
    return Path(tuple(names))


def path_tail(quiver, p):
    if len(p) == 0:
        return p.vertex
    return quiver.arrow(p.arrows[-1]).tail


def path_head(quiver, p):
    if len(p) == 0:
        return p.vertex
    return quiver.arrow(p.arrows[0]).head


def path_is_composable(quiver, p):
    for j in range(len(p.arrows) - 1):
        if quiver.arrow(p.arrows[j]).tail != quiver.arrow(p.arrows[j + 1]).head:
            return False
    return True


def path_is_cycle(quiver, p):
    return len(p) >= 1 and path_head(quiver, p) == path_tail(quiver, p)


def rotations(p):
    """All rotations of a cyclic word, as (rotation index, Path) pairs."""
    d = len(p.arrows)
    return [(k, Path(p.arrows[k:] + p.arrows[:k])) for k in range(d)]


def least_rotation(p):
    """Lexicographically least rotation; ties broken by rotation index."""
    best = min(rotations(p), key=lambda kr: (kr[1].arrows, kr[0]))
    return best[1]


def term_sort_key(p):
    return (len(p.arrows), p.vertex, p.arrows)


class AlgebraElement:
    """Finite sum of rational coefficients times paths, truncated at order D.

    Treated as immutable: operations return fresh elements and never mutate
    their inputs.
    """

    def __init__(self, quiver, order, terms=None, check=True):
        if order < 1:
            raise AlgebraError("truncation order must be >= 1")
        self.quiver = quiver
        self.order = int(order)
        clean = {}
        for p, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            if check:
                if len(p) > self.order:
                    raise AlgebraError("term of length %d exceeds order %d" % (len(p), self.order))
                if len(p) == 0:
                    if p.vertex not in quiver.vertices:
                        raise AlgebraError("unknown vertex %r" % p.vertex)
                else:
                    for name in p.arrows:
                        quiver.arrow(name)
                    if not path_is_composable(quiver, p):
                        raise AlgebraError("non-composable path %r" % (p.arrows,))
            clean[p] = clean.get(p, Fraction(0)) + c
        self.terms = {p: c for p, c in clean.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(quiver, order):
        return AlgebraElement(quiver, order, {})

    @staticmethod
    def one(quiver, order):
        return AlgebraElement(quiver, order, {vertex_path(v): 1 for v in quiver.vertices})

    @staticmethod
    def from_path(quiver, order, p, coeff=1):
        return AlgebraElement(quiver, order, {p: Fraction(coeff)})

    @staticmethod
    def from_word(quiver, order, names, coeff=1):
        return AlgebraElement.from_path(quiver, order, arrow_path(*names), coeff)

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coefficient(self, p):
        return self.terms.get(p, Fraction(0))

    def degree_part(self, d):
        return AlgebraElement(self.quiver, self.order,
                              {p: c for p, c in self.terms.items() if len(p) == d}, check=False)

    def min_degree(self):
        if not self.terms:
            return None
        return min(len(p) for p in self.terms)

    def arrows_used(self):
        used = set()
        for p in self.terms:
            used.update(p.arrows)
        return used

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda pc: term_sort_key(pc[0]))

    # -- arithmetic --------------------------------------------------------

    def _compatible(self, other):
        if self.quiver != other.quiver or self.order != other.order:
            raise AlgebraError("mixed quivers or truncation orders")

    def __add__(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, Fraction(0)) + c
        return AlgebraElement(self.quiver, self.order, terms, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return AlgebraElement(self.quiver, self.order,
                              {p: c * v for p, v in self.terms.items()}, check=False)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._compatible(other)
        q = self.quiver
        out = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                if len(p1) + len(p2) > self.order:
                    continue
                if path_tail(q, p1) != path_head(q, p2):
                    continue
                if len(p1) == 0 and len(p2) == 0:
                    prod = p1
                elif len(p1) == 0:
                    prod = p2
                elif len(p2) == 0:
                    prod = p1
                else:
                    prod = Path(p1.arrows + p2.arrows)
                out[prod] = out.get(prod, Fraction(0)) + c1 * c2
        return AlgebraElement(self.quiver, self.order, out, check=False)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.quiver == other.quiver and self.order == other.order
                and self.terms == other.terms)

    def __repr__(self):
        return "AlgebraElement(order=%d, %d terms)" % (self.order, len(self.terms))

    # -- text form ---------------------------------------------------------

    def to_text(self):
        if not self.terms:
            return "0\n"
        lines = []
        for p, c in self.sorted_terms():
            word = "e:%s" % p.vertex if len(p) == 0 else " ".join(p.arrows)
            lines.append("%d/%d %s" % (c.numerator, c.denominator, word))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(quiver, order, text):
        terms = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#") or line == "0":
                continue
            parts = line.split()
            coeff = Fraction(parts[0])
            if len(parts) == 2 and parts[1].startswith("e:"):
                p = vertex_path(parts[1][2:])
            else:
                p = arrow_path(*parts[1:])
            terms[p] = terms.get(p, Fraction(0)) + coeff
        return AlgebraElement(quiver, order, terms)


def multiply(x, y):
    """Truncated concatenation product; same as ``x * y``."""
    return x * y


def truncate(x, order):
    """The same element at a lower truncation order; longer terms drop."""
    if order > x.order:
        raise AlgebraError("cannot deepen an element from order %d to %d" % (x.order, order))
    return AlgebraElement(x.quiver, order,
                          {p: c for p, c in x.terms.items() if len(p) <= order}, check=False)


# -- potentials ------------------------------------------------------------


def is_cyclic_element(x):
    """True iff every term is a cyclic path of positive length."""
    return all(path_is_cycle(x.quiver, p) for p in x.terms)


def cyclic_normal_form(x):
    """Rotate every term to its least rotation and merge equal paths.

    Two potentials are cyclically equivalent at a given order exactly when
    their normal forms agree.
    """
    if not is_cyclic_element(x):
        raise AlgebraError("element has a non-cyclic or degree-0 term")
    terms = {}
    for p, c in x.terms.items():
        r = least_rotation(p)
        terms[r] = terms.get(r, Fraction(0)) + c
    return AlgebraElement(x.quiver, x.order, terms, check=False)


def cyclically_equivalent(x, y):
    return cyclic_normal_form(x) == cyclic_normal_form(y)


def cyclic_derivative(x, arrow_name):
    """Sum over occurrences of the arrow of the rotated remainder of each cycle."""
    q = x.quiver
    q.arrow(arrow_name)
    if not is_cyclic_element(x):
        raise AlgebraError("cyclic derivative needs a cyclic element")
    out = {}
    for p, c in x.terms.items():
        for i, name in enumerate(p.arrows):
            if name != arrow_name:
                continue
            rest = p.arrows[i + 1:] + p.arrows[:i]
            rp = Path(rest) if rest else vertex_path(q.arrow(arrow_name).tail)
            out[rp] = out.get(rp, Fraction(0)) + c
    return AlgebraElement(q, x.order, out, check=False)


# -- substitutions ---------------------------------------------------------


class Substitution:
    """Vertex-fixing algebra map determined by images of the base arrows.

    Arrows without an explicit image map to themselves, which requires an
    arrow of the same name in the target quiver.  Every image term must be a
    positive-length path with the same endpoints as the arrow it replaces.
    """

    def __init__(self, base, target, order, images=None):
        if base.vertices != target.vertices:
            raise AlgebraError("base and target quivers must share the vertex set")
        self.base = base
        self.target = target
        self.order = int(order)
        full = {}
        images = images or {}
        for a in base.arrows:
            img = images.get(a.name)
            if img is None:
                if not target.has_arrow(a.name):
                    raise AlgebraError("no image for arrow %r and no identity candidate" % a.name)
                img = AlgebraElement.from_word(target, order, [a.name])
            if img.quiver != target or img.order != self.order:
                raise AlgebraError("image of %r lives in the wrong algebra" % a.name)
            for p in img.terms:
                if len(p) == 0:
                    raise AlgebraError("image of %r has a degree-0 term" % a.name)
                if path_tail(target, p) != a.tail or path_head(target, p) != a.head:
                    raise AlgebraError("image term of %r has wrong endpoints" % a.name)
            full[a.name] = img
        self.images = full

    @staticmethod
    def identity(quiver, order):
        return Substitution(quiver, quiver, order)

    def is_identity(self):
        if self.base != self.target:
            return False
        for a in self.base.arrows:
            img = self.images[a.name]
            if list(img.terms.items()) != [(arrow_path(a.name), Fraction(1))]:
                return False
        return True


def apply_substitution(f, x):
    """Extend the arrow images multiplicatively and linearly, truncating at D."""
    if x.quiver != f.base or x.order != f.order:
        raise AlgebraError("element does not live over the substitution's base")
    out = AlgebraElement.zero(f.target, f.order)
    for p, c in x.terms.items():
        if len(p) == 0:
            out = out + AlgebraElement(f.target, f.order, {p: c})
            continue
        acc = AlgebraElement.from_path(f.target, f.order, vertex_path(path_head(x.quiver, p)))
        for name in p.arrows:
            acc = acc * f.images[name]
            if acc.is_zero():
                break
        out = out + acc.scale(c)
    return out


def compose_substitutions(f, g):
    """Substitution acting as f after g."""
    if g.target != f.base or f.order != g.order:
        raise AlgebraError("substitutions do not compose")
    images = {name: apply_substitution(f, img) for name, img in g.images.items()}
    return Substitution(g.base, f.target, f.order, images)


def substitution_is_isomorphism(f):
    """Check invertibility of the degree-1 part, blockwise over vertex pairs."""
    from . import linalg

    pairs = set()
    for a in f.base.arrows:
        pairs.add((a.tail, a.head))
    for a in f.target.arrows:
        pairs.add((a.tail, a.head))
    for (i, j) in sorted(pairs):
        rows = [a.name for a in f.base.arrows if a.tail == i and a.head == j]
        cols = [a.name for a in f.target.arrows if a.tail == i and a.head == j]
        if len(rows) != len(cols):
            return False
        if not rows:
            continue
        m = [[f.images[r].coefficient(arrow_path(c)) for c in cols] for r in rows]
        if linalg.rank(m) != len(rows):
            return False
    return True
