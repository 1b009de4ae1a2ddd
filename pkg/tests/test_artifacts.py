import numpy as np
import pytest

from lcdforge import artifacts
from lcdforge.artifacts import Unavailable
from lcdforge.code import LinearCode, is_even

SHAPES = {
    "Ap_2_27": (12, 13), "Ap_2_28": (6, 22), "B_2_32": (20, 12), "B_2_34": (22, 12),
    "A_4_19": (9, 10), "Ap_4_19": (10, 9), "A_4_23": (18, 5), "A_4_24": (16, 8),
    "A_4_26": (21, 5), "A_4_27": (22, 5), "A_4_28": (23, 5),
    "A_2_34": (10, 24), "A_2_36": (6, 30), "A_2_40": (6, 34), "Ap_2_40": (8, 32),
    "A_3_34": (22, 12), "A_3_37": (29, 8),
}


def test_data_checksums_hold():
    assert artifacts.verify_data() == []
    assert set(SHAPES) == set(artifacts.BLOCKS)


@pytest.mark.parametrize("block, shape", sorted(SHAPES.items()))
def test_block_shapes(block, shape):
    assert artifacts.load_block(block).shape == shape


def test_corrupted_block_is_detected(monkeypatch):
    bad = dict(artifacts.checksums())
    bad["A_3_37.txt"] = "0" * 64
    monkeypatch.setattr(artifacts, "checksums", lambda: bad)
    artifacts.load_block.cache_clear()
    try:
        with pytest.raises(artifacts.ChecksumError, match="A_3_37.txt"):
            artifacts.load_block("A_3_37")
        assert artifacts.verify_data() == ["A_3_37.txt"]
    finally:
        artifacts.load_block.cache_clear()


def test_zero_column_of_b_2_34():
    b = artifacts.load_block("B_2_34").data
    assert not b[:, 1].any()
    d34 = artifacts.load_instance("D_2_34")
    assert not d34.gen.data[:, 23].any()


def test_bordered_assemblies():
    g27 = artifacts.load_instance("C_2_27").gen.data
    assert g27.shape == (12, 27)
    assert np.array_equal(g27[:, :12], np.eye(12, dtype=np.uint8))
    assert g27[:, 12].all() and not g27[:, 13].any()
    g28 = artifacts.load_instance("C_2_28").gen.data
    assert g28.shape == (13, 28)
    assert np.array_equal(g28[1:, 1:], g27)
    assert is_even(artifacts.load_instance("Cp_2_28"))


@pytest.mark.parametrize(
    "raw, norm",
    [("C'_{2,28}", "Cp_2_28"), ("data/Cp_2_28", "Cp_2_28"), ("Cp_2_28.txt", "Cp_2_28"), ("D_{4,19}", "D_4_19")],
)
def test_normalize_id(raw, norm):
    assert artifacts.normalize_id(raw) == norm


def test_every_instance_loads_or_is_external():
    for ident in artifacts.instance_ids():
        if ident in ("C_4_19", "C_4_20", "C_4_21", "C_4_22"):
            with pytest.raises(Unavailable, match="M_20"):
                artifacts.load_instance(ident)
        else:
            assert isinstance(artifacts.load_instance(ident), LinearCode)
    with pytest.raises(KeyError):
        artifacts.load_instance("Q_9_99")


def test_chain_replays_to_instance():
    recs = artifacts.chain("Cp_2_30")
    assert [r.kind for r in recs] == ["even-transform", "extend-binary"]
    code = artifacts.load_instance("Cp_2_28")
    for r in recs:
        code = r.replay(code)
    assert code.gen == artifacts.load_instance("Cp_2_30").gen
    assert artifacts.chain("D_4_19") == []


def test_groups():
    assert [c.id for c in artifacts.select_cases("P2")] == ["[34,10,12]", "[36,6,16]", "[40,6,18]", "[40,8,16]"]
    assert artifacts.select_cases("𝒫₄ chain") == artifacts.select_cases("P4-chain")
    assert len(artifacts.select_cases("[29,13,8]")) == 1
    with pytest.raises(KeyError):
        artifacts.select_cases("nope")


def test_group_reproduction_and_worker_independence():
    one = artifacts.reproduce("ternary", workers=1)
    two = artifacts.reproduce("ternary", workers=2)
    assert one.ok and [r.status for r in one.results] == ["pass"] * 4
    strip = lambda rep: [(r.id, r.status, r.observed) for r in rep.results]  # noqa: E731
    assert strip(one) == strip(two)


def test_external_cases_are_skipped_with_reason():
    rep = artifacts.reproduce("quaternary")
    skipped = {r.id: r.detail for r in rep.results if r.status == "skipped(external)"}
    assert set(skipped) == {"[21,8,9]", "[22,8,10]"}
    assert all("M_20" in why for why in skipped.values())


def test_reproduce_all_non_external_pass():
    rep = artifacts.reproduce("all")
    failed = [f"{r.id}: {r.detail}" for r in rep.results if r.status == "fail"]
    assert failed == []


def test_table_uses_monotonicity():
    rows = {(e.n, e.k): e for e in artifacts.build_table(2)}
    assert rows[(32, 19)].line() == "32 19 6 6 exact"
    q4 = {(e.n, e.k): e for e in artifacts.build_table(4)}
    assert q4[(21, 11)].line() == "21 11 7 8 interval"
    assert q4[(26, 20)].lower == 4 and "d(26,21)" in q4[(26, 20)].source
    assert "external" in q4[(21, 8)].source


def test_table_from_report_drops_unverified_lower_bounds():
    rep = artifacts.ReproReport([artifacts.CaseResult("[37,29,5]", "", "", "fail")])
    rows = {(e.n, e.k): e for e in artifacts.build_table(3, rep)}
    assert rows[(37, 29)].lower == 0


def test_table_csv():
    text = artifacts.table_csv(artifacts.build_table(3))
    assert text.splitlines()[0] == "q,n,k,lower,upper,status"
    assert "3,37,29,5,5,exact" in text


def test_scaled_family():
    fam = artifacts.scaled_family(4, (30, 24, 4), 1)
    assert fam["params"] == (30 + 4**24 // 3, 24, 4 + 4**23)
    assert str(fam["eaqecc"]).startswith("[[")
    assert artifacts.scaled_family(2, (28, 13, 8), 2)["params"] == (28 + 2 * (2**13 - 1), 13, 8 + 2 * 2**12)
    with pytest.raises(KeyError):
        artifacts.scaled_family(3, (1, 1, 1), 1)
