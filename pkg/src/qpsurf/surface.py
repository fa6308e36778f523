"""Combinatorial triangulations of bordered marked surfaces.

A triangulation is stored as side data (arcs and boundary segments with
endpoint pairs) plus triangles given as clockwise side triples.  Self-folded
triangles list their folded side twice.  All orientation-sensitive structure
(corners, rotation around marked points, arrow directions) is derived from
the clockwise convention: in a triple (s0, s1, s2) the boundary is traversed
s0 then s1 then s2, slot m exits into the corner shared with slot m+1, and
rotating counter-clockwise around a point crosses the entry side of the next
slot into the partner triangle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .quiver import Arrow, IntegerMatrix, Quiver


class SurfaceError(ValueError):
    pass


def _primes():
    n = 2
    while True:
        if all(n % d for d in range(2, int(n ** 0.5) + 1)):
            yield n
        n += 1


class MarkedSurface:
    """Genus, boundary components, marked points; punctures carry scalars."""

    def __init__(self, genus, boundary, locations, scalars=None):
        self.genus = int(genus)
        self.boundary = int(boundary)
        self.locations = dict(locations)  # id -> boundary index, or None for a puncture
        self.punctures = tuple(sorted(m for m, loc in self.locations.items() if loc is None))
        given = dict(scalars or {})
        self.scalars = {}
        primes = _primes()
        for p in self.punctures:
            if p in given:
                self.scalars[p] = Fraction(given[p])
            else:
                self.scalars[p] = Fraction(next(primes))

    @property
    def boundary_marked(self):
        return tuple(sorted(m for m, loc in self.locations.items() if loc is not None))

    def problems(self):
        out = []
        if self.genus < 0 or self.boundary < 0:
            out.append("negative genus or boundary count")
        if not self.locations:
            out.append("no marked points")
        for m, loc in self.locations.items():
            if loc is not None and not (0 <= loc < self.boundary):
                out.append("marked point %r on missing boundary component %d" % (m, loc))
        per_comp = {k: 0 for k in range(self.boundary)}
        for m, loc in self.locations.items():
            if loc is not None and loc in per_comp:
                per_comp[loc] += 1
        for k, n in per_comp.items():
            if n == 0:
                out.append("boundary component %d has no marked point" % k)
        for p, x in self.scalars.items():
            if x == 0:
                out.append("puncture %r has zero scalar" % p)
        g, b = self.genus, self.boundary
        p = len(self.punctures)
        c = len(self.boundary_marked)
        if b == 0 and g == 0 and p < 5:
            out.append("excluded surface: sphere with fewer than five punctures")
        if g == 0 and b == 1 and p == 0 and c in (1, 2, 3):
            out.append("excluded surface: unpunctured monogon, digon or triangle")
        if g == 0 and b == 1 and p == 1 and c == 1:
            out.append("excluded surface: once-punctured monogon")
        return out

    def rank(self):
        return (6 * self.genus + 3 * self.boundary + 3 * len(self.punctures)
                + len(self.boundary_marked) - 6)


@dataclass(frozen=True)
class Side:
    name: str
    kind: str  # "arc" or "bseg"
    ends: tuple
    boundary: int | None = None

    @property
    def is_arc(self):
        return self.kind == "arc"

    @property
    def is_loop(self):
        return self.ends[0] == self.ends[1]


class Triangulation:
    def __init__(self, surface, sides, triangles):
        self.surface = surface
        self.sides = {s.name: s for s in sides}
        if len(self.sides) != len(list(sides)):
            raise SurfaceError("duplicate side ids")
        self.triangles = [tuple(t) for t in triangles]
        for t in self.triangles:
            if len(t) != 3:
                raise SurfaceError("triangle %r does not have three sides" % (t,))
            for s in t:
                if s not in self.sides:
                    raise SurfaceError("triangle references unknown side %r" % s)
        self._analysis = None

    @property
    def arcs(self):
        return tuple(sorted(s.name for s in self.sides.values() if s.is_arc))

    @property
    def bsegs(self):
        return tuple(sorted(s.name for s in self.sides.values() if not s.is_arc))

    def analysis(self):
        if self._analysis is None:
            a = Analysis(self)
            if a.problems:
                raise SurfaceError("invalid triangulation: " + "; ".join(a.problems))
            self._analysis = a
        return self._analysis

    # -- text format ---------------------------------------------------------

    def to_text(self):
        s = self.surface
        lines = ["surface genus=%d boundary=%d" % (s.genus, s.boundary)]
        for m in sorted(s.locations):
            loc = s.locations[m]
            if loc is None:
                x = s.scalars[m]
                lines.append("marked %s puncture scalar=%d/%d" % (m, x.numerator, x.denominator))
            else:
                lines.append("marked %s boundary=%d" % (m, loc))
        for name in self.bsegs:
            side = self.sides[name]
            lines.append("bseg %s %s %s on=%d" % (name, side.ends[0], side.ends[1], side.boundary))
        for name in self.arcs:
            side = self.sides[name]
            lines.append("arc %s %s %s" % (name, side.ends[0], side.ends[1]))
        for t in self.triangles:
            lines.append("tri %s %s %s" % t)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text, scalar_overrides=None):
        genus = boundary = None
        locations = {}
        scalars = dict(scalar_overrides or {})
        explicit = {}
        sides = []
        triangles = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            kind = parts[0]
            if kind == "surface":
                opts = dict(p.split("=", 1) for p in parts[1:])
                genus = int(opts["genus"])
                boundary = int(opts["boundary"])
            elif kind == "marked":
                name = parts[1]
                if parts[2] == "puncture":
                    locations[name] = None
                    for opt in parts[3:]:
                        key, val = opt.split("=", 1)
                        if key == "scalar":
                            explicit[name] = Fraction(val)
                elif parts[2].startswith("boundary="):
                    locations[name] = int(parts[2].split("=", 1)[1])
                else:
                    raise SurfaceError("bad marked line: %r" % raw)
            elif kind == "bseg":
                opts = dict(p.split("=", 1) for p in parts[4:])
                sides.append(Side(parts[1], "bseg", (parts[2], parts[3]), int(opts["on"])))
            elif kind == "arc":
                sides.append(Side(parts[1], "arc", (parts[2], parts[3])))
            elif kind == "tri":
                triangles.append(tuple(parts[1:4]))
            else:
                raise SurfaceError("bad triangulation line: %r" % raw)
        if genus is None:
            raise SurfaceError("missing surface header")
        explicit.update(scalars)
        surface = MarkedSurface(genus, boundary, locations, explicit)
        return Triangulation(surface, sides, triangles)


class Analysis:
    """Derived structure of a triangulation: corners, rotations, arrow data.

    Populates `problems` instead of raising, so it doubles as the validator.
    Arrow-level structure is only built when the basic shape checks pass.
    """

    def __init__(self, tri):
        self.tri = tri
        self.problems = list(tri.surface.problems())
        self._shape_checks()
        if self.problems:
            return
        self._solve_corners()
        if self.problems:
            return
        self._walks()
        if self.problems:
            return
        self._arrows()

    # -- incidence and counting checks --------------------------------------

    def _shape_checks(self):
        tri = self.tri
        surf = tri.surface
        slots_of = {}
        for t, triple in enumerate(tri.triangles):
            for m, s in enumerate(triple):
                slots_of.setdefault(s, []).append((t, m))
        self.slots_of = slots_of

        for name, side in tri.sides.items():
            n = len(slots_of.get(name, []))
            if side.is_arc and n != 2:
                self.problems.append("arc %r fills %d slots instead of 2" % (name, n))
            if not side.is_arc and n != 1:
                self.problems.append("boundary segment %r fills %d slots instead of 1" % (name, n))
            for e in side.ends:
                if e not in surf.locations:
                    self.problems.append("side %r ends at unknown point %r" % (name, e))
            if not side.is_arc:
                for e in side.ends:
                    if surf.locations.get(e, None) != side.boundary:
                        self.problems.append(
                            "boundary segment %r endpoint %r not on component %d"
                            % (name, e, side.boundary))
        if self.problems:
            return

        self.self_folded = {}
        for t, triple in enumerate(tri.triangles):
            counts = {}
            for s in triple:
                counts[s] = counts.get(s, 0) + 1
            if len(counts) == 3:
                continue
            if sorted(counts.values()) != [1, 2]:
                self.problems.append("triangle %d repeats a side three times" % t)
                continue
            folded = next(s for s, n in counts.items() if n == 2)
            loop = next(s for s, n in counts.items() if n == 1)
            fs = tri.sides[folded]
            ls = tri.sides[loop]
            if not (fs.is_arc and ls.is_arc):
                self.problems.append("self-folded triangle %d with non-arc sides" % t)
                continue
            if not ls.is_loop:
                self.problems.append("enclosing side %r of triangle %d is not a loop" % (loop, t))
                continue
            if fs.is_loop:
                self.problems.append("folded side %r of triangle %d is a loop" % (folded, t))
                continue
            base = ls.ends[0]
            other = [e for e in fs.ends if e != base]
            if base not in fs.ends or len(other) != 1:
                self.problems.append(
                    "folded side %r does not join the loop base of triangle %d" % (folded, t))
                continue
            q = other[0]
            if surf.locations.get(q, 0) is not None:
                self.problems.append("folded side %r must end at an interior puncture" % folded)
                continue
            self.self_folded[t] = (folded, loop)
        if self.problems:
            return

        self.fold = {name: name for name in tri.sides}
        self.fold_back = {}
        self.enclosed = {}
        for t, (folded, loop) in self.self_folded.items():
            self.fold[folded] = loop
            self.fold_back[loop] = folded
            fs = tri.sides[folded]
            base = tri.sides[loop].ends[0]
            self.enclosed[loop] = next(e for e in fs.ends if e != base)

        arcs = tri.arcs
        bsegs = tri.bsegs
        n_expected = surf.rank()
        if len(arcs) != n_expected:
            self.problems.append(
                "arc count %d does not match the rank %d of the surface"
                % (len(arcs), n_expected))
        c = len(surf.boundary_marked)
        if len(bsegs) != c:
            self.problems.append(
                "boundary segment count %d does not match marked boundary points %d"
                % (len(bsegs), c))
        euler = len(tri.triangles) - (len(arcs) + len(bsegs)) + len(surf.locations)
        if euler != 2 - 2 * surf.genus - surf.boundary:
            self.problems.append("Euler characteristic mismatch (%d)" % euler)

        for k in range(surf.boundary):
            pts = {m for m, loc in surf.locations.items() if loc == k}
            segs = [s for s in bsegs if tri.sides[s].boundary == k]
            if len(segs) != len(pts):
                self.problems.append("boundary component %d has %d segments for %d points"
                                     % (k, len(segs), len(pts)))
                continue
            deg = {m: 0 for m in pts}
            for s in segs:
                for e in tri.sides[s].ends:
                    if e in deg:
                        deg[e] += 1
                    else:
                        self.problems.append(
                            "segment %r leaves its boundary component" % s)
            if any(d != 2 for d in deg.values()):
                self.problems.append("boundary component %d is not partitioned into a cycle" % k)

        if not tri.triangles:
            self.problems.append("triangulation has no triangles")
            return
        seen = {0}
        frontier = [0]
        adj = {}
        for name, slots in slots_of.items():
            if tri.sides[name].is_arc and len(slots) == 2:
                a, b = slots[0][0], slots[1][0]
                adj.setdefault(a, set()).add(b)
                adj.setdefault(b, set()).add(a)
        while frontier:
            t = frontier.pop()
            for u in adj.get(t, ()):
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        if len(seen) != len(tri.triangles):
            self.problems.append("triangulation is not connected")

    # -- orientation and corners ---------------------------------------------

    def _solve_corners(self):
        tri = self.tri
        self.entry = {}
        self.exit = {}
        self.corner_point = {}
        for t, triple in enumerate(tri.triangles):
            ends = [tri.sides[s].ends for s in triple]
            profiles = set()
            chosen = None
            for bits in itertools.product((0, 1), repeat=3):
                entry = [ends[m][bits[m]] for m in range(3)]
                exits = [ends[m][1 - bits[m]] for m in range(3)]
                if all(exits[m] == entry[(m + 1) % 3] for m in range(3)):
                    profiles.add(tuple(exits))
                    if chosen is None:
                        chosen = (entry, exits)
            if chosen is None:
                self.problems.append("sides of triangle %d do not chain into a triangle" % t)
                continue
            if len(profiles) > 1:
                self.problems.append("ambiguous corner assignment in triangle %d" % t)
                continue
            entry, exits = chosen
            for m in range(3):
                self.entry[(t, m)] = entry[m]
                self.exit[(t, m)] = exits[m]
                self.corner_point[(t, m)] = exits[m]
        if self.problems:
            return

        self.partner = {}
        for name, slots in self.slots_of.items():
            if len(slots) == 2:
                self.partner[slots[0]] = slots[1]
                self.partner[slots[1]] = slots[0]
            else:
                self.partner[slots[0]] = None

        for name, slots in self.slots_of.items():
            if len(slots) != 2:
                continue
            h, h2 = slots
            if self.entry[h] != self.exit[h2] or self.exit[h] != self.entry[h2]:
                self.problems.append("sides of arc %r are glued without reversing" % name)

        for k in range(self.tri.surface.boundary):
            segs = [s for s in self.tri.bsegs if self.tri.sides[s].boundary == k]
            succ = {}
            for s in segs:
                slot = self.slots_of[s][0]
                a, b = self.entry[slot], self.exit[slot]
                if a in succ:
                    self.problems.append("boundary component %d is traversed inconsistently" % k)
                    return
                succ[a] = b
            pts = {m for m, loc in self.tri.surface.locations.items() if loc == k}
            if set(succ) != pts or set(succ.values()) != pts:
                self.problems.append("boundary component %d does not close up" % k)

    def _ccw_next(self, corner):
        t, m = corner
        nxt = self.partner.get((t, (m + 1) % 3))
        return nxt

    def _walks(self):
        """Rotation structure around each marked point.

        For a puncture the counter-clockwise corner walk must form a single
        cycle; the side crossed after each corner is one arc end at the point.
        """
        tri = self.tri
        corners_at = {}
        for corner, pt in self.corner_point.items():
            t = corner[0]
            corners_at.setdefault(pt, []).append(corner)
        self.corners_at = corners_at
        self.puncture_cycle = {}
        for p in tri.surface.punctures:
            corners = sorted(corners_at.get(p, []))
            if not corners:
                self.problems.append("puncture %r is not an endpoint of any side" % p)
                continue
            start = corners[0]
            cycle = [start]
            cur = start
            ok = True
            for _ in range(len(corners)):
                nxt = self._ccw_next(cur)
                if nxt is None:
                    self.problems.append("puncture %r touches the boundary" % p)
                    ok = False
                    break
                if nxt == start:
                    break
                cycle.append(nxt)
                cur = nxt
            else:
                ok = False
                self.problems.append("rotation around puncture %r does not close" % p)
            if ok and self._ccw_next(cycle[-1]) != start:
                self.problems.append("rotation around puncture %r does not close" % p)
                ok = False
            if ok and sorted(cycle) != corners:
                self.problems.append("rotation around puncture %r misses corners" % p)
                ok = False
            if ok:
                self.puncture_cycle[p] = cycle
        if self.problems:
            return

        # Each crossing between consecutive corners of a cycle is an arc end.
        self.puncture_ends = {}
        for p, cycle in self.puncture_cycle.items():
            ends = []
            for corner in cycle:
                t, m = corner
                side = tri.triangles[t][(m + 1) % 3]
                if not tri.sides[side].is_arc:
                    self.problems.append("puncture %r meets a boundary segment" % p)
                ends.append(side)
            self.puncture_ends[p] = ends
        for t, (folded, loop) in self.self_folded.items():
            q = self.enclosed[loop]
            if len(self.puncture_ends.get(q, ())) != 1:
                self.problems.append(
                    "puncture %r inside a self-folded triangle has extra incidences" % q)
        for t, triple in enumerate(self.tri.triangles):
            if t in self.self_folded:
                continue
            loops = sum(1 for s in set(triple) if s in self.enclosed)
            if loops > 2:
                self.problems.append("triangle %d encloses three self-folded triangles" % t)

    # -- arrows ----------------------------------------------------------------

    def _preimages(self, side_name):
        out = [side_name]
        for folded, loop in self.fold.items():
            if loop == side_name and folded != side_name:
                out.append(folded)
        return sorted(out)

    def _arrows(self):
        tri = self.tri
        contributions = []
        for t, triple in enumerate(tri.triangles):
            if t in self.self_folded:
                continue
            for m in range(3):
                a_side = triple[m]
                b_side = triple[(m + 1) % 3]
                if not (tri.sides[a_side].is_arc and tri.sides[b_side].is_arc):
                    continue
                for i in self._preimages(a_side):
                    for j in self._preimages(b_side):
                        contributions.append((i, j, t, m))
        self.contributions = contributions

        by_pair = {}
        for con in contributions:
            by_pair.setdefault((con[0], con[1]), []).append(con)
        for cons in by_pair.values():
            cons.sort(key=lambda con: (con[2], con[3]))
        self.cancelled = set()
        for (i, j) in sorted(by_pair):
            if i >= j or (j, i) not in by_pair:
                continue
            fwd = by_pair[(i, j)]
            back = by_pair[(j, i)]
            for n in range(min(len(fwd), len(back))):
                self.cancelled.add(fwd[n])
                self.cancelled.add(back[n])

        self.arrow_of = {}
        arrows = []
        for con in contributions:
            if con in self.cancelled:
                continue
            i, j, t, m = con
            name = "%s>%s~t%d" % (i, j, t)
            self.arrow_of[con] = name
            arrows.append(Arrow(name, i, j))

        self.pair_punctures = {}
        self.def8 = {}
        for p, ends in self.puncture_ends.items():
            if len(ends) != 2:
                continue
            if len(set(ends)) != 2:
                self.problems.append("puncture %r has two ends of a single arc" % p)
                continue
            i1, i2 = sorted(set(ends))
            self.pair_punctures[p] = (i1, i2)
            for (u, v) in ((i1, i2), (i2, i1)):
                name = "%s>%s~p%s" % (u, v, p)
                self.def8[(u, v)] = name
                arrows.append(Arrow(name, u, v))
        if self.problems:
            return

        self.unreduced = Quiver(tri.arcs, arrows)
        self.provenance = {}
        for con, name in self.arrow_of.items():
            self.provenance[name] = ("triangle", con[2], con[3])
        for p, (i1, i2) in self.pair_punctures.items():
            self.provenance[self.def8[(i1, i2)]] = ("puncture", p)
            self.provenance[self.def8[(i2, i1)]] = ("puncture", p)

    def resolve(self, t, m, i, j):
        """Arrow name realising the contribution (i -> j) at corner (t, m).

        A contribution lost to cancellation is replaced by the arrow added at
        the valence-2 puncture responsible for the cancellation.
        """
        con = (i, j, t, m)
        name = self.arrow_of.get(con)
        if name is not None:
            return name
        if con in self.cancelled:
            name = self.def8.get((i, j))
            if name is None:
                raise SurfaceError(
                    "cancelled adjacency %r -> %r has no replacing arrow" % (i, j))
            return name
        raise SurfaceError("no adjacency (%r, %r) at triangle %d slot %d" % (i, j, t, m))


def validate_triangulation(tri):
    """Diagnostics list; empty means the triangulation is valid."""
    if tri._analysis is not None:
        return []
    a = Analysis(tri)
    if not a.problems:
        tri._analysis = a
    return a.problems


def fold_map(tri):
    """Identity on sides except folded sides, which map to their enclosing loops."""
    return dict(tri.analysis().fold)


def signed_adjacency(tri):
    """Skew-symmetric arc adjacency matrix summed over non-self-folded triangles."""
    a = tri.analysis()
    arcs = tri.arcs
    idx = {v: i for i, v in enumerate(arcs)}
    n = len(arcs)
    rows = [[0] * n for _ in range(n)]
    for (i, j, _t, _m) in a.contributions:
        rows[idx[i]][idx[j]] += 1
        rows[idx[j]][idx[i]] -= 1
    return IntegerMatrix(arcs, rows)


def unreduced_quiver(tri):
    """Adjacency quiver before 2-cycle deletion, with per-arrow provenance."""
    a = tri.analysis()
    return a.unreduced, dict(a.provenance)


def flip(tri, arc):
    """Replace the arc by the other diagonal of its quadrilateral.

    The two triangles (i, x, y) and (i, u, v) become (i', y, u) and
    (i', v, x); repeated side labels flow through the rule, so self-folded
    triangles are created or consumed as needed.  The result is revalidated
    and checked against the matrix mutation rule.
    """
    a = tri.analysis()
    side = tri.sides.get(arc)
    if side is None or not side.is_arc:
        raise SurfaceError("unknown arc %r" % arc)
    if a.fold[arc] != arc:
        raise SurfaceError("arc %r is a folded side; flip undefined" % arc)
    (t1, m1), (t2, m2) = sorted(a.slots_of[arc])
    if t1 == t2:
        raise SurfaceError("arc %r is a folded side; flip undefined" % arc)
    tri1 = tri.triangles[t1]
    tri2 = tri.triangles[t2]
    x, y = tri1[(m1 + 1) % 3], tri1[(m1 + 2) % 3]
    u, v = tri2[(m2 + 1) % 3], tri2[(m2 + 2) % 3]
    new_arc = arc + "'"
    b_point = a.corner_point[(t1, (m1 + 1) % 3)]
    d_point = a.corner_point[(t2, (m2 + 1) % 3)]

    sides = [s for s in tri.sides.values() if s.name != arc]
    sides.append(Side(new_arc, "arc", (b_point, d_point)))
    triangles = list(tri.triangles)
    triangles[t1] = (new_arc, y, u)
    triangles[t2] = (new_arc, v, x)
    out = Triangulation(tri.surface, sides, triangles)
    problems = validate_triangulation(out)
    if problems:
        raise SurfaceError("flip produced an invalid triangulation: " + "; ".join(problems))

    from .quiver import mutate_matrix

    expected = mutate_matrix(signed_adjacency(tri), arc)
    got = signed_adjacency(out)
    relabeled = IntegerMatrix(
        [arc if vtx == new_arc else vtx for vtx in got.vertices], got.rows)
    if relabeled != expected:
        raise SurfaceError("flip of %r violates the matrix mutation rule" % arc)
    return out
