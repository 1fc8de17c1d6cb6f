"""
Tests for the translations between weighted KBs and c-representations
"""

import pytest

from reasoner.bridge import (
    CHECKS,
    compatibility_witness,
    equivalent_relative_cost,
    is_c_compatible,
    is_strongly_c_compatible,
    open_translation,
    quantified_translation,
    query_set,
    relative_cost_witness,
    strict_abox_translation,
    to_wkb,
    translate,
    verify_instance,
)
from reasoner.cost import cost
from reasoner.crep import SearchBudget, build
from reasoner.errors import InvariantViolation, TranslationError, UnsatisfiableStrictPartError
from reasoner.herbrand import all_interpretations
from reasoner.parser import parse_document, parse_statement
from reasoner.syntax import GCI, INF, Nominal, WeightedKB
from schemas import CheckResult

HEADER = """vocab {
  concepts: A, B;
  roles: ;
  individuals: a, b;
}
"""

ONE = """vocab {
  concepts: A, B;
  roles: ;
  individuals: a;
}
tbox { A <= B [1]; }
"""


def test_to_wkb(penguin):
    wkb = to_wkb(build(penguin, (1, 2, 3)))
    weights = {str(axiom): w for axiom, w in wkb.weights.items()}
    assert weights == {
        "Logician <= SetTheorist": 1,
        "Logician <= !Experiments": 2,
        "SetTheorist <= Experiments": 3,
        "N : Logician": INF,
    }


def test_to_wkb_collision():
    kb = parse_document(HEADER + "tbox { A <= B; }\ndbox { A ~< B [1]; }\n")
    with pytest.raises(TranslationError):
        to_wkb(build(kb, (1,)))


def test_penguin_is_not_c_compatible(penguin_w):
    witness = compatibility_witness(penguin_w)
    assert witness.startswith("Logician <= !Experiments")
    assert not is_c_compatible(penguin_w)
    assert not is_strongly_c_compatible(penguin_w)

    crep = open_translation(penguin_w)
    assert crep.kappa0 == -1
    assert crep.unsatisfied() == "Logician ~< !Experiments"


def test_single_gci_is_strongly_c_compatible():
    wkb = parse_document(ONE)
    assert is_strongly_c_compatible(wkb)
    assert is_c_compatible(wkb)
    assert open_translation(wkb).is_model
    assert quantified_translation(wkb).is_model


def test_compatible_but_not_strongly():
    """a can never verify A <= B, b can"""
    wkb = parse_document(HEADER + "tbox { A <= B [1]; }\nabox { a : !B; }\n")
    assert is_c_compatible(wkb)
    assert not is_strongly_c_compatible(wkb)
    assert compatibility_witness(wkb, strong=True).startswith("A <= B at a")
    assert open_translation(wkb).is_model
    assert not quantified_translation(wkb).is_model


def test_quantified_equals_open():
    wkb = parse_document(HEADER + "tbox { A <= B [2]; B <= !A | B [1]; top <= A [inf]; }\n")
    quantified, opened = quantified_translation(wkb), open_translation(wkb)
    assert len(quantified.kb.dbox) == 4
    assert len(opened.kb.dbox) == 2
    assert quantified.ranking == opened.ranking
    assert quantified.kappa0 == opened.kappa0


def test_rank_is_cost_plus_offset(penguin_w):
    crep = open_translation(penguin_w)
    for w in all_interpretations(penguin_w.vocab):
        c = cost(penguin_w, w)
        assert crep.rank(w) == (INF if c == INF else c + crep.kappa0)


def test_translation_preconditions(mono):
    with pytest.raises(TranslationError):
        open_translation(mono)
    with pytest.raises(TranslationError):
        compatibility_witness(mono)
    unsatisfiable = parse_document(HEADER + "abox { a : A; a : !A; }\n")
    with pytest.raises(UnsatisfiableStrictPartError):
        open_translation(unsatisfiable)


def test_strict_abox_translation(mono):
    translated = strict_abox_translation(mono)
    gci = GCI(Nominal("a"), parse_statement("a : A", mono.vocab).concept)
    assert translated.tbox == (gci,)
    assert translated.abox == ()
    assert translated.weights == {gci: 1}
    assert translated.has_strict_abox
    for w in all_interpretations(mono.vocab):
        assert cost(translated, w) == cost(mono, w)


def test_finite_role_assertion_is_rejected():
    wkb = parse_document("""vocab { concepts: A; roles: r; individuals: a; }
abox { (a, a) : r [2]; }
""")
    with pytest.raises(TranslationError):
        strict_abox_translation(wkb)


def test_round_trips(penguin_w, single_dci):
    assert to_wkb(open_translation(penguin_w)).equivalent_to(penguin_w)
    crep = build(single_dci, (2,))
    assert open_translation(to_wkb(crep)).ranking == crep.ranking


def test_relative_cost(penguin_w, penguin):
    assert equivalent_relative_cost(penguin_w, open_translation(penguin_w).ranking)
    # same vocabulary, different impacts
    assert relative_cost_witness(penguin_w, build(penguin, (1, 2, 3)).ranking) is not None


def test_translate_dispatch(penguin, penguin_w):
    assert isinstance(translate(penguin, "to-wkb"), WeightedKB)
    assert translate(penguin_w, "open").kappa0 == -1
    assert translate(penguin_w, "strict-abox") == penguin_w
    with pytest.raises(TranslationError):
        translate(penguin_w, "to-wkb")
    with pytest.raises(TranslationError):
        translate(penguin, "open")


def test_query_set(penguin_w):
    classical, defeasible = query_set(penguin_w)
    rendered = {str(q) for q in classical}
    assert "N : !Experiments" in rendered
    assert "Logician <= SetTheorist" in rendered
    assert "Logician ~< !Experiments" in {str(q) for q in defeasible}


def names(report):
    return [c.name for c in report.checks]


def test_verify_weighted(penguin_w):
    report = verify_instance(penguin_w, SearchBudget(eta_max=3))
    assert names(report) == [name for name, _ in CHECKS]
    assert report.passed, report.failed
    status = {c.name: c.status for c in report.checks}
    assert status["compatibility-iff-model"] == "pass"
    assert status["modelhood"] == "n/a"


def test_check_results_serialize(penguin):
    report = verify_instance(penguin, SearchBudget(eta_max=2))
    assert "from_attributes" not in CheckResult.model_config
    for check in report.checks:
        assert CheckResult.model_validate(check.model_dump()) == check


def test_verify_defeasible(single_dci):
    report = verify_instance(single_dci, SearchBudget(eta_max=2))
    assert report.passed, report.failed
    status = {c.name: c.status for c in report.checks}
    assert status["modelhood"] == "pass"
    assert status["dci-iff-k-possible"] == "pass"
    assert status["skeptical-credulous-within-bound"] == "within-bound"


def test_verify_reports_hinted_ranking_that_is_no_model(penguin):
    """the impacts (1, 2, 3) give a ranking that does not accept Logician ~< SetTheorist"""
    report = verify_instance(penguin, SearchBudget(eta_max=8))
    modelhood = next(c for c in report.checks if c.name == "modelhood")
    assert modelhood.status == "fail"
    assert modelhood.witness == "Logician ~< SetTheorist"
    assert "eta = (1, 2, 3), kappa0 = -1" in modelhood.details
    assert [c.name for c in report.failed] == ["modelhood"]
    status = {c.name: c.status for c in report.checks}
    assert status["cost-equals-rank-minus-offset"] == "pass"
    assert status["round-trip"] == "pass"


def test_verify_rejects_searched_ranking_that_is_no_model(monkeypatch):
    import reasoner.bridge as bridge_module

    kb = parse_document(ONE.replace("tbox { A <= B [1]; }", "dbox { A ~< B; }"))
    found = build(kb, (1,))
    monkeypatch.setattr(bridge_module, "iter_c_representations", lambda kb, budget: iter([found]))
    monkeypatch.setattr(bridge_module, "first_unsatisfied", lambda kappa, kb, mode: "A ~< B")
    with pytest.raises(InvariantViolation):
        verify_instance(kb, SearchBudget(eta_max=1))


def test_verify_untranslatable():
    """a weighted ABox with a finite role assertion has no translation at all"""
    wkb = parse_document("""vocab { concepts: A; roles: r; individuals: a; }
abox { (a, a) : r [2]; }
""")
    report = verify_instance(wkb)
    assert {c.status for c in report.checks} == {"n/a"}


def test_optimal_possible_gci_needs_one_individual():
    """with two individuals the optimal interpretations can disagree on where A is"""
    wkb = parse_document("""vocab { concepts: A; roles: r; individuals: a, b; }
tbox { top <= exists r.A; }
""")
    report = verify_instance(wkb, SearchBudget(eta_max=1))
    check = next(c for c in report.checks if c.name == "optimal-possible-iff-not-kappa")
    assert check.status == "fail"
    assert check.witness == "A <= !A"
    assert [c.name for c in report.failed] == ["optimal-possible-iff-not-kappa"]
