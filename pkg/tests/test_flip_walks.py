"""Seeded random flip walks: every step re-validates and passes the oracles."""

import random
import warnings

from qpsurf.algebra import cyclic_normal_form, truncate
from qpsurf.examples_data import CORPUS, example_text
from qpsurf.potential import qp_of_triangulation
from qpsurf.qp import mutate_qp
from qpsurf.surface import Triangulation, flip
from qpsurf.verify import check_flip_compatibility


def load(name):
    return Triangulation.from_text(example_text(name))


def test_random_flip_walks_stay_consistent():
    rng = random.Random(12345)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in CORPUS:
            tri = load(name)
            for step in range(12):
                a = tri.analysis()
                arcs = [x for x in tri.arcs if a.fold[x] == x]
                tri = flip(tri, rng.choice(arcs))  # asserts the matrix oracle
                if step % 4 == 0:
                    a2 = tri.analysis()
                    probe = rng.choice([x for x in tri.arcs if a2.fold[x] == x])
                    rep = check_flip_compatibility(tri, probe, 6)
                    assert rep.passed, (name, step, probe, rep.to_text())


def test_results_stable_under_deeper_truncation():
    # computing at order 9 and cutting back to 6 agrees with computing at 6
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in ("torus", "punctured-square-2", "punctured-square-sf"):
            tri = load(name)
            deep = qp_of_triangulation(tri, 9)
            shallow = qp_of_triangulation(tri, 6)
            assert cyclic_normal_form(truncate(deep.potential, 6)).terms \
                == shallow.potential.terms, name
            k = deep.quiver.vertices[0]
            md, ms = mutate_qp(deep, k), mutate_qp(shallow, k)
            got = {p: c for p, c in cyclic_normal_form(md.potential).terms.items()
                   if len(p) <= 6}
            assert got == cyclic_normal_form(ms.potential).terms, (name, k)
