"""Loop-free quivers, the skew-matrix correspondence, and quiver mutation."""

from __future__ import annotations

from dataclasses import dataclass


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str


class Quiver:
    """Finite loop-free directed multigraph with named arrows.

    Vertices are opaque string ids, kept in lexicographic order.  Arrows are
    kept sorted by name.  Instances are immutable; all operations return new
    quivers.
    """

    def __init__(self, vertices, arrows=()):
        self.vertices = tuple(sorted(vertices))
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        arr = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            arr.append(a)
        arr.sort(key=lambda a: a.name)
        self.arrows = tuple(arr)
        self._by_name = {}
        for a in self.arrows:
            if a.name in self._by_name:
                raise QuiverError("duplicate arrow id %r" % a.name)
            if a.tail not in vset or a.head not in vset:
                raise QuiverError("arrow %r has undeclared endpoint" % a.name)
            if a.tail == a.head:
                raise QuiverError("arrow %r is a loop" % a.name)
            self._by_name[a.name] = a

    def arrow(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError("unknown arrow id %r" % name) from None

    def has_arrow(self, name):
        return name in self._by_name

    def arrows_from_to(self, tail, head):
        return [a for a in self.arrows if a.tail == tail and a.head == head]

    def multiplicities(self):
        """Map (tail, head) -> number of parallel arrows."""
        mult = {}
        for a in self.arrows:
            key = (a.tail, a.head)
            mult[key] = mult.get(key, 0) + 1
        return mult

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return "Quiver(%d vertices, %d arrows)" % (len(self.vertices), len(self.arrows))

    def to_text(self):
        lines = ["v %s" % v for v in self.vertices]
        lines += ["a %s %s %s" % (a.name, a.tail, a.head) for a in self.arrows]
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text):
        vertices = []
        arrows = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "v" and len(parts) == 2:
                vertices.append(parts[1])
            elif parts[0] == "a" and len(parts) == 4:
                arrows.append(Arrow(parts[1], parts[2], parts[3]))
            else:
                raise QuiverError("bad quiver line: %r" % raw)
        return Quiver(vertices, arrows)


class IntegerMatrix:
    """Square integer matrix whose rows/columns are indexed by vertex ids."""

    def __init__(self, vertices, rows):
        self.vertices = tuple(vertices)
        n = len(self.vertices)
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise QuiverError("matrix shape does not match vertex count")
        self.rows = rows
        self._index = {v: i for i, v in enumerate(self.vertices)}

    def entry(self, i, j):
        return self.rows[self._index[i]][self._index[j]]

    def entries_by_id(self):
        out = {}
        for i in self.vertices:
            for j in self.vertices:
                out[(i, j)] = self.entry(i, j)
        return out

    def is_skew_symmetric(self):
        n = len(self.vertices)
        return all(self.rows[i][j] == -self.rows[j][i] for i in range(n) for j in range(n))

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        if set(self.vertices) != set(other.vertices):
            return False
        return self.entries_by_id() == other.entries_by_id()

    def __repr__(self):
        return "IntegerMatrix(%r)" % (self.vertices,)

    def to_text(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows) + "\n"

    @staticmethod
    def from_text(text):
        rows = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([int(x) for x in line.split()])
        n = len(rows)
        width = len(str(n))
        vertices = ["%0*d" % (width, k + 1) for k in range(n)]
        return IntegerMatrix(vertices, rows)


def is_two_acyclic(q):
    """True iff no ordered vertex pair carries arrows in both directions."""
    mult = q.multiplicities()
    return all((j, i) not in mult for (i, j) in mult)


def quiver_from_matrix(b):
    """2-acyclic quiver of a skew-symmetric matrix: b_ij > 0 gives b_ij arrows i -> j."""
    if not b.is_skew_symmetric():
        raise QuiverError("matrix is not skew-symmetric")
    arrows = []
    for i in b.vertices:
        for j in b.vertices:
            m = b.entry(i, j)
            for k in range(1, m + 1):
                arrows.append(Arrow("%s>%s#%d" % (i, j, k), i, j))
    return Quiver(b.vertices, arrows)


def matrix_from_quiver(q):
    """Inverse of quiver_from_matrix; rejects quivers with a 2-cycle."""
    if not is_two_acyclic(q):
        raise QuiverError("quiver has a 2-cycle; matrix entries would be ill-defined")
    mult = q.multiplicities()
    verts = q.vertices
    rows = []
    for i in verts:
        rows.append([mult.get((i, j), 0) - mult.get((j, i), 0) for j in verts])
    return IntegerMatrix(verts, rows)


def _check_mutable(q, k):
    if k not in q.vertices:
        raise QuiverError("unknown vertex %r" % k)
    mult = q.multiplicities()
    for (i, j) in mult:
        if j == k and (k, i) in mult:
            raise QuiverError("2-cycle incident to vertex %r" % k)


def hook_name(a, b):
    """Name of the composite arrow replacing the hook ab."""
    return "[%s.%s]" % (a, b)


def premutate_quiver(q, k):
    """Premutation at k: composite arrows for all k-hooks, reverse arrows at k.

    A k-hook is a length-2 path ab with t(a) = k = h(b); it yields a new arrow
    [a.b] : t(b) -> h(a).  Arrows incident to k get replaced by reversals
    named with a trailing '*'.
    """
    _check_mutable(q, k)
    outgoing = [a for a in q.arrows if a.tail == k]
    incoming = [a for a in q.arrows if a.head == k]
    arrows = []
    for a in q.arrows:
        if a.tail == k or a.head == k:
            arrows.append(Arrow(a.name + "*", a.head, a.tail))
        else:
            arrows.append(a)
    for a in outgoing:
        for b in incoming:
            arrows.append(Arrow(hook_name(a.name, b.name), b.tail, a.head))
    return Quiver(q.vertices, arrows)


def _drop_opposite_pairs(q):
    """Remove a maximal disjoint collection of 2-cycles, pairing smallest names first."""
    mult = {}
    for a in q.arrows:
        mult.setdefault((a.tail, a.head), []).append(a.name)
    removed = set()
    for (i, j) in sorted(mult):
        if i >= j or (j, i) not in mult:
            continue
        fwd = sorted(mult[(i, j)])
        back = sorted(mult[(j, i)])
        for n in range(min(len(fwd), len(back))):
            removed.add(fwd[n])
            removed.add(back[n])
    return Quiver(q.vertices, [a for a in q.arrows if a.name not in removed])


def mutate_quiver(q, k):
    """Quiver mutation: premutation followed by 2-cycle removal."""
    return _drop_opposite_pairs(premutate_quiver(q, k))


def mutate_matrix(b, k):
    """Matrix mutation rule for skew-symmetric integer matrices.

    Computed directly on entries; serves as the independent cross-check for
    the quiver route and for triangulation flips.
    """
    if not b.is_skew_symmetric():
        raise QuiverError("matrix is not skew-symmetric")
    if k not in b.vertices:
        raise QuiverError("unknown vertex %r" % k)
    ki = b.vertices.index(k)
    n = len(b.vertices)
    old = b.rows
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == ki or j == ki:
                row.append(-old[i][j])
            elif old[i][ki] * old[ki][j] > 0:
                sign = 1 if old[i][ki] > 0 else -1
                row.append(old[i][j] + sign * old[i][ki] * old[ki][j])
            else:
                row.append(old[i][j])
        rows.append(row)
    return IntegerMatrix(b.vertices, rows)
