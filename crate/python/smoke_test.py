"""Smoke test for the copieslab extension module.

Build the module first (see README), then run:

    python python/smoke_test.py
"""

import copieslab as cl


def main():
    path = cl.Structure([2], 3, [[[0, 1], [1, 2]]])
    tri = cl.Structure([2], 3, [[[0, 1], [1, 2], [0, 2]]])
    assert cl.Structure.parse(path.to_text()) == path
    assert cl.embeddings(path, tri) == []
    assert cl.automorphisms(path) == [[0, 1, 2]]
    assert cl.copies(path) == [[0, 1, 2]]

    classes, order = cl.green(path)
    assert order.size == len(classes) == 1

    v = cl.classify(path, tri)
    assert len(v) == len(cl.RELATION_DESCRIPTIONS) == 12
    assert not v[3] and v[11]

    diamond = cl.Poset(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert cl.Poset.parse(diamond.to_text()) == diamond
    assert diamond.to_dot().count("->") == 4
    vee = cl.Poset(3, [(1, 0), (2, 0)])
    sq, _ = cl.separative_quotient(vee)
    ro = cl.regular_open(vee)
    assert ro["size"] == 2 ** ro["atoms"] == 4 and sq.size == 3
    assert cl.is_quasi_homogeneous(diamond) and not cl.is_quasi_homogeneous(vee)

    corpus = cl.generate_corpus([2], 2, up_to_iso=True)
    assert len(corpus) == 10

    theta = cl.rigid_digraph(3)
    assert theta.tuples(0) == [[0, 1], [0, 2], [1, 0]]
    rho = cl.Structure([2], 2, [[[0, 0], [0, 1]]])
    t = cl.tau(rho, [3])
    assert t.size == 5 and t.arities == [3]

    try:
        cl.Structure.parse("language 2\ndomain 2\nrel 0 { (0,7) }\n")
    except ValueError as e:
        assert "line 3" in str(e)
    else:
        raise AssertionError("malformed structure was accepted")

    results = cl.accept(seed=0, criteria=[2, 15])
    assert all(r["passed"] for r in results), results
    print("smoke test passed:", cl.__version__)


if __name__ == "__main__":
    main()
