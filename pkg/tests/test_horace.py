import dataclasses
from math import comb

import pytest

from oscusec import (
    CERTIFIED_BY_A,
    CERTIFIED_BY_B,
    NOT_CERTIFIED,
    FatPointScheme,
    HoraceCertificate,
    Projective,
    build_certificate,
    check_A,
    check_B,
    corollary1_verdict,
    hirzebruch_exceptional,
    p2_exceptional,
    speciality,
    split,
    theorem2_verdict,
    verify_certificate,
)
from oscusec.errors import (
    ConditionNotMet,
    DegreeTooSmall,
    StepFailed,
    UnsupportedH,
    UnsupportedM,
)


@pytest.mark.parametrize(
    "t,n,a,b",
    [(4, 3, 3, 5), (4, 2, 2, 3), (5, 3, 5, 6), (5, 2, 3, 3), (7, 2, 6, 0)],
)
def test_split_examples(t, n, a, b):
    pair = split(t, n)
    assert (pair.a, pair.b) == (a, b)
    assert comb(n + 2, 2) * pair.a + pair.b == comb(t + n, n)
    assert 0 <= pair.b < comb(n + 2, 2)


def test_split_degree_too_small():
    with pytest.raises(DegreeTooSmall):
        split(1, 2)


@pytest.mark.parametrize(
    "k,a,b,kind",
    [
        (5, 2, 5, CERTIFIED_BY_A),
        (4, 3, 0, NOT_CERTIFIED),
        (8, 0, 0, CERTIFIED_BY_A),
    ],
)
def test_check_A_examples(k, a, b, kind):
    assert check_A(k, a, b).kind == kind


def test_check_A_gamma():
    assert check_A(8, 0, 0).gamma == 4
    assert check_A(8, 0, 0).lhs == 12 + 16


@pytest.mark.parametrize(
    "k,a,b,kind",
    [
        (4, 0, 9, NOT_CERTIFIED),
        (4, 5, 0, CERTIFIED_BY_B),
        (4, 0, 11, CERTIFIED_BY_B),
    ],
)
def test_check_B_examples(k, a, b, kind):
    assert check_B(k, a, b).kind == kind


def test_checks_reject_small_degree():
    with pytest.raises(DegreeTooSmall):
        check_A(3, 1, 1)
    with pytest.raises(DegreeTooSmall):
        check_B(3, 1, 1)
    with pytest.raises(DegreeTooSmall):
        theorem2_verdict(3, 1)


def test_theorem2_examples():
    assert theorem2_verdict(4, 1).kind == CERTIFIED_BY_A
    assert theorem2_verdict(4, 4).kind == CERTIFIED_BY_B
    assert theorem2_verdict(4, 2).kind == NOT_CERTIFIED


def test_theorem2_reduces_to_check_A():
    # The subabundant side is the b=0, a=h+1 instance: gamma = d-4 and
    # 10(h+1) + 3(d-4) + 2d = 10(h+1) + 5d - 12.
    for d in range(4, 10):
        for h in range(1, 15):
            sub = theorem2_verdict(d, h).kind == CERTIFIED_BY_A
            assert sub == (check_A(d, h + 1, 0).kind == CERTIFIED_BY_A)


@pytest.mark.parametrize(
    "d,m,h,expected",
    [
        (5, 3, 1, True),
        (4, 3, 1, False),
        (7, 3, 2, True),
        (2, 3, 1, True),  # d < m clause
        (4, 2, 4, False),  # 2m <= 4 <= (5m-2)/2: inside the uncovered band
    ],
)
def test_corollary1_examples(d, m, h, expected):
    assert corollary1_verdict(d, m, h) is expected


def test_corollary1_unsupported():
    with pytest.raises(UnsupportedH):
        corollary1_verdict(5, 3, 3)
    with pytest.raises(UnsupportedM):
        corollary1_verdict(50, 21, 1)


P2_LIST = [
    (2, 0, 2), (3, 2, 0), (3, 1, 1), (4, 0, 5), (4, 2, 1),
    (4, 2, 0), (5, 2, 3), (6, 5, 0), (6, 4, 1),
]


def test_p2_exceptional_list():
    for triple in P2_LIST:
        assert p2_exceptional(*triple)
    assert not p2_exceptional(5, 0, 5)
    assert not p2_exceptional(7, 2, 3)


def test_hirzebruch_exceptional_examples():
    assert hirzebruch_exceptional(1, 0, 4, 2, 5)
    assert not hirzebruch_exceptional(2, 4, 2, 2, 8)
    m = hirzebruch_exceptional(3, 4, 2, 2, 8)
    assert m and m.family == "(n,2e,2,2,2e+n+1)" and not m.interpretation_dependent


def test_hirzebruch_wildcard_families_flagged():
    m = hirzebruch_exceptional(2, 7, 0, 2, 13)
    assert m and m.interpretation_dependent
    m = hirzebruch_exceptional(1, 3, 1, 3, 4)
    assert m and m.interpretation_dependent
    with pytest.raises(UnsupportedM):
        hirzebruch_exceptional(1, 1, 1, 4, 2)


def test_build_requires_certification():
    with pytest.raises(ConditionNotMet):
        build_certificate(4, 3, 0)


def test_empty_certificate():
    cert = build_certificate(4, 0, 0)
    assert cert.steps == ()
    report = verify_certificate(cert, seed=1)
    assert report.ok and report.terminal_conditions == 0


def test_certificate_5_2_5():
    cert = build_certificate(5, 2, 5, seed=1)
    assert len(cert.steps) >= 2
    step = cert.steps[0]
    # Only 2 triples exist against a plane quota of 3; padding simples fill in.
    assert step.spec_triples == 2
    assert step.spec_simples > 0
    report = verify_certificate(cert, seed=1)
    assert report.ok
    # Dual oracle: the direct system is non-special.
    _, verdict = speciality(Projective(3, 5), FatPointScheme.of(triple=2, double=5), seed=1)
    assert verdict.kind == "CertifiedNonSpecial"


def test_certificate_6_3_4():
    assert check_A(6, 3, 4).kind == CERTIFIED_BY_A
    cert = build_certificate(6, 3, 4, seed=1)
    assert verify_certificate(cert, seed=1).ok


def test_certificate_round_trip(tmp_path):
    cert = build_certificate(6, 3, 4, seed=1)
    path = tmp_path / "cert.json"
    cert.dump(str(path))
    loaded = HoraceCertificate.load(str(path))
    assert loaded == cert
    assert verify_certificate(loaded, seed=1).ok


def test_tampered_trace_overflow_fails():
    cert = build_certificate(5, 2, 5, seed=1)
    bad_step = dataclasses.replace(cert.steps[0], spec_simples=cert.steps[0].spec_simples + 40)
    bad = dataclasses.replace(cert, steps=(bad_step,) + cert.steps[1:])
    with pytest.raises(StepFailed) as exc:
        verify_certificate(bad, seed=1)
    assert exc.value.check in ("trace-length", "carried-state")


def test_tampered_chain_fails():
    cert = build_certificate(6, 3, 4, seed=1)
    bad_step = dataclasses.replace(cert.steps[1], carried_doubles=cert.steps[1].carried_doubles + 1)
    bad = dataclasses.replace(cert, steps=(cert.steps[0], bad_step) + cert.steps[2:])
    with pytest.raises(StepFailed) as exc:
        verify_certificate(bad, seed=1)
    assert exc.value.check == "carried-state"


def test_certificate_rejecting_exceptional_trace():
    # A hand-built step whose trace is the special plane system (4,0,5).
    cert = HoraceCertificate(
        degree=4,
        triples=0,
        doubles=5,
        steps=(
            __import__("oscusec.horace", fromlist=["CertStep"]).CertStep(
                degree=4,
                carried_doubles=0,
                carried_simples=0,
                spec_triples=0,
                spec_doubles=5,
                spec_simples=0,
                subcase="b>=3",
            ),
        ),
        terminal_degree=3,
        terminal_triples=0,
        terminal_doubles=0,
        terminal_on_h_doubles=0,
        terminal_on_h_simples=5,
    )
    with pytest.raises(StepFailed) as exc:
        verify_certificate(cert, seed=1)
    assert exc.value.check == "trace-rank"


def test_malformed_document_rejected():
    with pytest.raises(Exception):
        HoraceCertificate.from_json({"version": 1, "degree": 5})
    with pytest.raises(Exception):
        HoraceCertificate.from_json({"version": 99, "degree": 5, "triples": 0,
                                     "doubles": 0, "steps": [], "terminal": {}})


def test_known_condition_table_defect_is_caught():
    # The printed surjectivity condition wrongly admits (4,2,0) and (4,2,1):
    # both are special (the line through the two triple points forces a
    # dependency), and the verifier refuses the generated certificates.
    for a, b in ((2, 0), (2, 1)):
        assert check_A(4, a, b).kind == CERTIFIED_BY_A
        _, verdict = speciality(Projective(3, 4), FatPointScheme.of(triple=a, double=b), seed=5)
        assert verdict.kind == "ObservedSpecial" and verdict.deficiency == 1
        cert = build_certificate(4, a, b, seed=5)
        with pytest.raises(StepFailed):
            verify_certificate(cert, seed=5)


def test_monotonicity_of_certified_assertions():
    # If (k,a,b) is certified surjective, direct rank certifies every
    # sub-scheme (x <= a, x+y <= a+b) as well.
    k, a, b = 6, 3, 4
    assert check_A(k, a, b).kind == CERTIFIED_BY_A
    for x in range(a + 1):
        for y in range(a + b - x + 1):
            if (k, x, y) in ((4, 2, 0), (4, 2, 1)):
                continue
            _, verdict = speciality(
                Projective(3, k), FatPointScheme.of(triple=x, double=y), trials=1, seed=8
            )
            assert verdict.kind == "CertifiedNonSpecial", (x, y)
