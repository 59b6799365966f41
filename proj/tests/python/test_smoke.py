import os
from pathlib import Path

import chasegraph as cg

DATA = Path(os.environ.get("CHASEGRAPH_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def load(name):
    return cg.load(DATA / name)


def test_parse_and_chase():
    doc = load("r2.rules")
    kb = doc.knowledge_base()
    assert sorted(doc.facts) == ["p(a)", "r(b)"]
    assert [r.id for r in kb.rules] == ["r1", "r2", "r3", "r4"]
    assert len(cg.chase_k(kb, 0)) == 2
    assert len(cg.chase_k(kb, 1)) == 6


def test_greediness_of_the_declared_derivations():
    doc = load("r2.rules")
    kb = doc.knowledge_base()
    d1 = doc.replay("delta1")
    rep = cg.is_greedy(d1, kb)
    assert not rep.greedy
    assert rep.first_violation == 4
    assert cg.is_greedy(doc.replay("delta2"), kb).greedy
    assert cg.isomorphic_mod_nulls(d1.final_instance, doc.replay("delta2").final_instance)


def test_graph_reduction_and_decomposition():
    doc = load("r3.rules")
    kb = doc.knowledge_base()
    d = doc.replay("delta")
    g = cg.build_derivation_graph(d, kb)
    assert len(g) == 5
    assert len(g.arcs()) == 6
    assert not cg.is_cycle_free(g)
    trace = cg.reduce(g, "cr-only")
    assert trace.steps == ["CR(1,2,3,2)", "CR(2,3,4,2)"]
    td = cg.extract_tree_decomposition(trace.final_graph)
    assert td.width == 3
    assert cg.validate_tree_decomposition(td, d.final_instance)
    assert cg.width_bound(kb) == 5


def test_grd_classify_entail():
    doc = load("r2.rules")
    kb = doc.knowledge_base()
    assert cg.rule_dependency_graph(kb) == [("r1", "r4"), ("r2", "r4"), ("r3", "r4")]
    result, _ = cg.classify(kb, "gbts", 3)
    assert result == "refuted"
    result, _ = cg.classify(kb, "wgbts", 3)
    assert result == "holds"
    assert cg.entails(kb, doc.query("q1"), 1) == 1


def test_errors_and_cli():
    try:
        cg.parse_document("r: p(X) -> .")
    except cg.Error as e:
        assert "1:" in str(e)
    else:
        raise AssertionError("expected a parse error")
    code, out, _ = cg.run_cli(["reduce", str(DATA / "r3.rules"), "--derivation", "0"])
    assert code == 0
    assert "CR(2,3,4,2)" in out
