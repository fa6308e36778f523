import pytest

from qpsurf.quiver import (
    Arrow,
    IntegerMatrix,
    Quiver,
    QuiverError,
    is_two_acyclic,
    matrix_from_quiver,
    mutate_matrix,
    mutate_quiver,
    premutate_quiver,
    quiver_from_matrix,
)

MARKOV = IntegerMatrix(["1", "2", "3"], [[0, 2, -2], [-2, 0, 2], [2, -2, 0]])
MARKOV_REV = IntegerMatrix(["1", "2", "3"], [[0, -2, 2], [2, 0, -2], [-2, 2, 0]])


def linear_quiver():
    return Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3")])


def test_quiver_rejects_loops_and_duplicates():
    with pytest.raises(QuiverError):
        Quiver(["1"], [Arrow("a", "1", "1")])
    with pytest.raises(QuiverError):
        Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("a", "2", "1")])
    with pytest.raises(QuiverError):
        Quiver(["1", "1"])


def test_quiver_from_matrix_single_entry():
    b = IntegerMatrix(["1", "2"], [[0, 1], [-1, 0]])
    q = quiver_from_matrix(b)
    assert [(a.name, a.tail, a.head) for a in q.arrows] == [("1>2#1", "1", "2")]


def test_quiver_from_matrix_markov():
    q = quiver_from_matrix(MARKOV)
    assert q.multiplicities() == {("1", "2"): 2, ("2", "3"): 2, ("3", "1"): 2}
    assert is_two_acyclic(q)


def test_quiver_from_matrix_zero():
    b = IntegerMatrix(["1", "2", "3"], [[0] * 3] * 3)
    q = quiver_from_matrix(b)
    assert q.vertices == ("1", "2", "3")
    assert q.arrows == ()


def test_quiver_from_matrix_rejects_non_skew():
    with pytest.raises(QuiverError):
        quiver_from_matrix(IntegerMatrix(["1", "2"], [[0, 1], [1, 0]]))


def test_matrix_from_quiver_markov_and_roundtrip():
    q = quiver_from_matrix(MARKOV)
    assert matrix_from_quiver(q) == MARKOV
    # identity on matrices both ways
    assert matrix_from_quiver(quiver_from_matrix(MARKOV_REV)) == MARKOV_REV


def test_matrix_from_quiver_zero_and_two_cycle():
    assert matrix_from_quiver(Quiver(["1", "2"])) == IntegerMatrix(["1", "2"], [[0, 0], [0, 0]])
    bad = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "2", "1")])
    with pytest.raises(QuiverError):
        matrix_from_quiver(bad)


def test_premutation_linear_quiver():
    q = linear_quiver()
    pre = premutate_quiver(q, "2")
    names = {(a.name, a.tail, a.head) for a in pre.arrows}
    assert names == {("a*", "2", "1"), ("b*", "3", "2"), ("[b.a]", "1", "3")}


def test_premutation_isolated_vertex():
    q = Quiver(["1", "2", "3"], [Arrow("a", "1", "2")])
    assert premutate_quiver(q, "3") == q


def test_premutation_rejects_two_cycle_at_vertex():
    q = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "2", "1")])
    with pytest.raises(QuiverError):
        premutate_quiver(q, "1")


def test_mutate_linear_quiver():
    q = linear_quiver()
    m = mutate_quiver(q, "2")
    assert m.multiplicities() == {("2", "1"): 1, ("3", "2"): 1, ("1", "3"): 1}


def test_mutate_markov():
    q = quiver_from_matrix(MARKOV)
    assert matrix_from_quiver(mutate_quiver(q, "2")) == MARKOV_REV


def test_mutation_involutive_on_markov():
    q = quiver_from_matrix(MARKOV)
    for k in q.vertices:
        twice = mutate_quiver(mutate_quiver(q, k), k)
        assert matrix_from_quiver(twice) == MARKOV


def test_is_two_acyclic():
    assert is_two_acyclic(quiver_from_matrix(MARKOV))
    assert not is_two_acyclic(Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "2", "1")]))
    assert is_two_acyclic(Quiver(["1"]))


def test_mutate_matrix_literals():
    assert mutate_matrix(MARKOV, "2") == MARKOV_REV
    assert mutate_matrix(mutate_matrix(MARKOV, "2"), "2") == MARKOV
    b = IntegerMatrix(["1", "2"], [[0, 1], [-1, 0]])
    assert mutate_matrix(b, "1") == IntegerMatrix(["1", "2"], [[0, -1], [1, 0]])


def test_matrix_and_quiver_mutation_agree():
    mats = [
        MARKOV,
        IntegerMatrix(["1", "2"], [[0, 1], [-1, 0]]),
        IntegerMatrix(["1", "2", "3", "4"],
                      [[0, 1, 0, -1], [-1, 0, 1, 0], [0, -1, 0, 1], [1, 0, -1, 0]]),
        IntegerMatrix(["1", "2", "3"], [[0, 1, -2], [-1, 0, 1], [2, -1, 0]]),
    ]
    for b in mats:
        for k in b.vertices:
            via_quiver = matrix_from_quiver(mutate_quiver(quiver_from_matrix(b), k))
            assert mutate_matrix(b, k) == via_quiver


def test_matrix_text_roundtrip():
    text = MARKOV.to_text()
    again = IntegerMatrix.from_text(text)
    assert again.rows == MARKOV.rows


def test_quiver_text_roundtrip():
    q = quiver_from_matrix(MARKOV)
    assert Quiver.from_text(q.to_text()) == q
