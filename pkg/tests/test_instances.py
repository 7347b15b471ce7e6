import json

import pytest

from weakhopf import bimonad as bm
from weakhopf import entwining as ew
from weakhopf import hopf
from weakhopf import instances as inst
from weakhopf.errors import (
    IndexOutOfRange,
    NoUnit,
    NotAssociative,
    SchemaError,
    TauPrimeRequired,
)
from weakhopf.tensorexpr import flip_map


def test_every_generator_output_passes_checks():
    candidates = [
        inst.groupoid_algebra(inst.full_groupoid(2)),
        inst.groupoid_algebra(inst.GroupoidSpec(3, ((0, 1),))),
        inst.groupoid_algebra(inst.discrete_groupoid(3)),
        inst.group_algebra(inst.cyclic_group_table(3)),
        inst.monoid_algebra([[0, 1], [1, 1]]),
        inst.super_line(),
    ]
    for bim in candidates:
        assert bm.instance_passes(bim), bim.name


def test_trivial_group_is_ground_field():
    bim = inst.group_algebra(inst.cyclic_group_table(1))
    assert bim.n == 1
    assert bm.instance_passes(bim)


def test_one_object_groupoid_is_ground_field():
    bim = inst.groupoid_algebra(inst.discrete_groupoid(1))
    assert bim.n == 1


def test_full_two_object_groupoid_is_g2():
    bim = inst.groupoid_algebra(inst.full_groupoid(2))
    assert bim.n == 4
    assert bim.m == inst.g2().m


def test_disjoint_trivial_groupoids_give_k2():
    bim = inst.groupoid_algebra(inst.discrete_groupoid(2))
    assert bim.n == 2
    ent = ew.build_entwining(bim)
    assert ent.xibar == bim.id1()


def test_bundled_antipode_passes_on_generated_groupoids():
    for spec in (inst.full_groupoid(2), inst.GroupoidSpec(3, ((0, 1),)),
                 inst.discrete_groupoid(2)):
        bim = inst.groupoid_algebra(spec)
        ent = ew.build_entwining(bim)
        s = inst.groupoid_antipode(spec)
        assert hopf.check_antipode(bim, ent, s).passed


def test_group_table_validation():
    with pytest.raises(NoUnit):
        inst.monoid_algebra([[1, 1], [1, 1]])
    with pytest.raises(NotAssociative):
        inst.monoid_algebra([[0, 1, 2], [1, 2, 2], [2, 0, 1]])
    with pytest.raises(Exception):
        inst.group_algebra([[0, 1], [1, 1]])  # z has no inverse


def test_super_line_structure():
    bim = inst.super_line()
    col = [bim.tau.mat.data[r][3] for r in range(4)]  # x (x) x column
    assert col == [0, 0, 0, -1]
    assert bm.instance_passes(bim)


def test_dual_swaps_structure(any_pipeline):
    bim = any_pipeline.bim
    dual = inst.dual_instance(bim)
    assert dual.m.mat == bim.delta.mat.transpose()
    assert dual.eps.mat == bim.e.mat.transpose()
    assert bm.instance_passes(dual)


def test_dual_fails_iff_original_fails():
    import dataclasses

    bim = inst.g2()
    broken = dataclasses.replace(
        bim, coa=bm.Coalgebra(4, bim.delta,
                              dataclasses.replace(bim.eps,
                                                  mat=bim.eps.mat.scale(2))))
    assert not bm.instance_passes(broken)
    assert not bm.instance_passes(inst.dual_instance(broken))


def test_load_save_round_trip(tmp_path, any_pipeline):
    bim = any_pipeline.bim
    path = tmp_path / "inst.json"
    text = inst.save(bim, path)
    again = inst.load(path)
    assert again.m == bim.m and again.delta == bim.delta
    assert again.tau == bim.tau and again.tau_prime == bim.tau_prime
    assert inst.to_json_text(again) == text


def test_flip_token_expands_to_permutation(tmp_path):
    doc = {
        "name": "tiny", "dim": 2,
        "m": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]],
        "e": [[0, "1"]],
        "delta": [[0, 0, 0, "1"], [1, 1, 1, "1"]],
        "eps": [[0, "1"], [1, "1"]],
        "tau": "flip",
    }
    path = tmp_path / "tiny.instance"
    path.write_text(json.dumps(doc))
    bim = inst.load(path)
    assert bim.tau == flip_map(2)


def test_duplicate_entries_are_schema_errors(tmp_path):
    doc = {
        "name": "dup", "dim": 1,
        "m": [[0, 0, 0, "1"], [0, 0, 0, "1"]],
        "e": [[0, "1"]],
        "delta": [[0, 0, 0, "1"]],
        "eps": [[0, "1"]],
        "tau": "flip",
    }
    path = tmp_path / "dup.instance"
    path.write_text(json.dumps(doc))
    with pytest.raises(SchemaError) as err:
        inst.load(path)
    assert "duplicate" in str(err.value)


def test_index_out_of_range(tmp_path):
    doc = {
        "name": "oob", "dim": 1,
        "m": [[0, 0, 1, "1"]],
        "e": [[0, "1"]],
        "delta": [[0, 0, 0, "1"]],
        "eps": [[0, "1"]],
        "tau": "flip",
    }
    path = tmp_path / "oob.instance"
    path.write_text(json.dumps(doc))
    with pytest.raises(IndexOutOfRange):
        inst.load(path)


def test_bad_rational_and_bad_expected(tmp_path):
    doc = {
        "name": "bad", "dim": 1,
        "m": [[0, 0, 0, "one"]],
        "e": [[0, "1"]],
        "delta": [[0, 0, 0, "1"]],
        "eps": [[0, "1"]],
        "tau": "flip",
    }
    path = tmp_path / "bad.instance"
    path.write_text(json.dumps(doc))
    with pytest.raises(SchemaError):
        inst.load(path)
    doc["m"] = [[0, 0, 0, "1"]]
    doc["expected"] = {"nonsense": 3}
    path.write_text(json.dumps(doc))
    with pytest.raises(SchemaError):
        inst.load(path)


def test_non_involutive_tau_requires_tau_prime(tmp_path):
    doc = {
        "name": "needstp", "dim": 1,
        "m": [[0, 0, 0, "1"]],
        "e": [[0, "1"]],
        "delta": [[0, 0, 0, "1"]],
        "eps": [[0, "1"]],
        "tau": [[0, 0, 0, 0, "2"]],
    }
    path = tmp_path / "tp.instance"
    path.write_text(json.dumps(doc))
    with pytest.raises(TauPrimeRequired):
        inst.load(path)
    doc["tau_prime"] = [[0, 0, 0, 0, "1/2"]]
    path.write_text(json.dumps(doc))
    bim = inst.load(path)
    assert bim.tau_prime.mat.data[0][0] * bim.tau.mat.data[0][0] == 1


def test_table_tau_round_trips_with_tau_prime(tmp_path):
    doc = {
        "name": "scaled", "dim": 1,
        "m": [[0, 0, 0, "1"]],
        "e": [[0, "1"]],
        "delta": [[0, 0, 0, "1"]],
        "eps": [[0, "1"]],
        "tau": [[0, 0, 0, 0, "2"]],
        "tau_prime": [[0, 0, 0, 0, "1/2"]],
    }
    path = tmp_path / "scaled.instance"
    path.write_text(json.dumps(doc))
    bim = inst.load(path)
    text = inst.to_json_text(bim)
    assert '"tau": [' in text and '"tau_prime"' in text
    out = tmp_path / "again.instance"
    out.write_text(text)
    again = inst.load(out)
    assert again.tau == bim.tau and again.tau_prime == bim.tau_prime
    assert inst.to_json_text(again) == text


def test_grading_only_with_flip(tmp_path):
    doc = {
        "name": "badgrading", "dim": 1,
        "m": [[0, 0, 0, "1"]],
        "e": [[0, "1"]],
        "delta": [[0, 0, 0, "1"]],
        "eps": [[0, "1"]],
        "tau": [[0, 0, 0, 0, "1"]],
        "grading": [0],
    }
    path = tmp_path / "grading.instance"
    path.write_text(json.dumps(doc))
    with pytest.raises(SchemaError):
        inst.load(path)


def test_shipped_files_match_builtins():
    from importlib import resources

    for name, make in inst.BUILTINS.items():
        with resources.as_file(resources.files("weakhopf") / "data"
                               / f"{name}.instance") as path:
            loaded = inst.load(path)
        built = make()
        assert loaded.m == built.m and loaded.delta == built.delta
        assert loaded.tau == built.tau
        assert loaded.expected is not None


def test_expected_block_pins_dimensions(g2):
    from importlib import resources

    with resources.as_file(resources.files("weakhopf") / "data"
                           / "g2.instance") as path:
        loaded = inst.load(path)
    assert loaded.expected == {"base_dim": 2, "tensor_dim": 8, "gamma_rank": 8}
