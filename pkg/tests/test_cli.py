import json

import pytest

from propsemiring.cli import main

from helpers import zmod_spec


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def claims_of(doc):
    return {c["id"]: c for c in doc["claims"]}


@pytest.fixture
def z3_path(tmp_path):
    path = tmp_path / "z3.json"
    path.write_text(json.dumps(zmod_spec(3)), encoding="utf-8")
    return str(path)


def write_morphism(tmp_path, name, source, target, mapping):
    path = tmp_path / name
    path.write_text(json.dumps({"source": source, "target": target,
                                "map": mapping}), encoding="utf-8")
    return str(path)


EVAL_TOP = {"⊥": "⊥", "!a": "⊥", "a": "⊤", "⊤": "⊤"}
EVAL_BOT = {"⊥": "⊥", "!a": "⊤", "a": "⊥", "⊤": "⊤"}
IDENTITY1 = {"⊥": "⊥", "!a": "!a", "a": "a", "⊤": "⊤"}


class TestCheckCommand:
    def test_free_algebra_report(self, capsys):
        doc = run_json(capsys, "check", "--free-atoms", "1")
        assert doc["tool"]["name"] == "propsemiring"
        assert doc["command"] == "check"
        assert doc["seed"] == 1729
        assert doc["inputs"] == [{"source": "free:1"}]
        assert doc["algebra"]["size"] == 4
        assert doc["algebra"]["top"] == "⊤"
        assert doc["additively_cancellable"] == ["⊤"]
        assert doc["center"]["full"] is True

        claims = claims_of(doc)
        assert claims["semiring"]["verdict"] == "confirmed"
        assert claims["zerosumfree"]["verdict"] == "confirmed"
        assert claims["entire"]["verdict"] == "refuted-with-witness"
        assert claims["entire"]["witness"] == ["!a", "a"]
        assert claims["simple"]["verdict"] == "confirmed"
        assert claims["commutative"]["verdict"] == "confirmed"
        assert claims["multiplicatively-absorbing"]["verdict"] == "confirmed"

    def test_table_report(self, capsys, z3_path):
        doc = run_json(capsys, "check", "--table", z3_path)
        assert doc["algebra"] == {"name": "z3", "kind": "table", "size": 3,
                                  "top": "0", "bot": "1"}
        assert len(doc["inputs"]) == 1
        assert doc["inputs"][0]["source"] == z3_path
        assert len(doc["inputs"][0]["sha256"]) == 64

        claims = claims_of(doc)
        assert claims["semiring"]["verdict"] == "confirmed"
        assert claims["zerosumfree"]["verdict"] == "refuted-with-witness"
        assert claims["zerosumfree"]["witness"] == ["1", "2"]
        assert claims["simple"]["verdict"] == "refuted-with-witness"
        assert claims["simple"]["witness"] == ["1"]
        assert claims["entire"]["verdict"] == "confirmed"

    def test_atom_limit_is_an_input_error(self, capsys):
        code, _, err = run(capsys, "check", "--free-atoms", "9")
        assert code == 2
        assert "error:" in err and "0..4" in err

    def test_algebra_source_is_required_and_exclusive(self, capsys, z3_path):
        code, _, err = run(capsys, "check")
        assert code == 2 and "required" in err
        code, _, err = run(capsys, "check", "--free-atoms", "1",
                           "--table", z3_path)
        assert code == 2 and "not both" in err

    def test_bad_cell_is_reported_by_name(self, capsys, tmp_path):
        doc = zmod_spec(2)
        doc["add"][1][1] = "5"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, _, err = run(capsys, "check", "--table", str(path))
        assert code == 2
        assert "add[1][1]" in err

    def test_missing_and_malformed_files(self, capsys, tmp_path):
        code, _, err = run(capsys, "check", "--table", "no-such-file.json")
        assert code == 2 and "not found" in err
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, err = run(capsys, "check", "--table", str(path))
        assert code == 2


class TestOrderCommand:
    def test_canonical_order_report(self, capsys):
        doc = run_json(capsys, "order", "--free-atoms", "1")
        assert doc["order_used"] == "canonical"
        assert doc["cones"] == {"positive": ["⊥", "!a", "a", "⊤"],
                                "negative": ["⊥"]}
        claims = claims_of(doc)
        for claim_id in ("poset", "monotony-add", "monotony-mul",
                        "operation-bounds", "bound-decomposition",
                        "pairwise-monotony", "positive-cone-carrier"):
            assert claims[claim_id]["verdict"] == "confirmed", claim_id
        assert claims["negative-cone-empty"]["verdict"] == \
            "refuted-with-witness"
        assert claims["negative-cone-empty"]["witness"] == ["⊥"]

    def test_non_idempotent_table_needs_a_matrix(self, capsys, z3_path):
        code, _, err = run(capsys, "order", "--table", z3_path)
        assert code == 2 and "idempotent" in err

    def test_supplied_matrix(self, capsys, z3_path, tmp_path):
        matrix = [[1 if p == q else 0 for q in range(3)] for p in range(3)]
        path = tmp_path / "discrete.json"
        path.write_text(json.dumps(matrix), encoding="utf-8")
        doc = run_json(capsys, "order", "--table", z3_path,
                       "--order-matrix", str(path))
        assert doc["order_used"] == "supplied"
        claims = claims_of(doc)
        assert claims["poset"]["verdict"] == "confirmed"
        assert claims["operation-bounds"]["verdict"] == "refuted-with-witness"
        assert claims["operation-bounds"]["witness"] == ["0", "1"]
        assert claims["positive-cone-carrier"]["verdict"] == \
            "refuted-with-witness"
        assert claims["negative-cone-empty"]["verdict"] == "confirmed"

    def test_order_embedded_in_table(self, capsys, tmp_path):
        spec = zmod_spec(2)
        spec["order"] = [[1, 0], [0, 1]]
        path = tmp_path / "z2o.json"
        path.write_text(json.dumps(spec), encoding="utf-8")
        doc = run_json(capsys, "order", "--table", str(path))
        assert doc["order_used"] == "supplied"

    def test_subalgebra_section(self, capsys):
        doc = run_json(capsys, "order", "--free-atoms", "2", "--sub", "a")
        sub = doc["subalgebra"]
        assert sub["generators"] == ["a"] and sub["kind"] == "bpa"
        assert sub["members"] == ["⊥", "!a", "a", "⊤"]
        assert sub["report"]["equal"] is False
        assert len(sub["report"]["difference"]) == 12
        assert sub["report"]["difference_within_top"] is False

        doc = run_json(capsys, "order", "--free-atoms", "2",
                       "--sub", "a", "--sub-kind", "semiring")
        assert doc["subalgebra"]["members"] == ["⊥", "a", "⊤"]

    def test_unknown_generator(self, capsys):
        code, _, err = run(capsys, "order", "--free-atoms", "1",
                           "--sub", "zz")
        assert code == 2 and "zz" in err


class TestHomCheck:
    def test_valid_morphism(self, capsys, tmp_path):
        path = write_morphism(tmp_path, "f.json", "free:1", "free:0", EVAL_TOP)
        doc = run_json(capsys, "hom", "check", "--map", path, "--kind", "bpa")
        assert doc["check"]["verdict"] == "holds"
        assert doc["kernel"] == [["⊥", "!a"], ["a", "⊤"]]
        assert doc["surjective"] is True and doc["injective"] is False
        assert doc["image"] == ["⊥", "⊤"]
        assert claims_of(doc)["homomorphism"]["verdict"] == "confirmed"

    def test_invalid_morphism_is_a_finding_not_an_error(self, capsys, tmp_path):
        broken = dict(EVAL_TOP, **{"⊤": "⊥", "⊥": "⊤"})
        path = write_morphism(tmp_path, "f.json", "free:1", "free:0", broken)
        code, out, _ = run(capsys, "hom", "check", "--map", path)
        assert code == 0
        doc = json.loads(out)
        assert doc["check"]["verdict"] == "fails"
        assert "image" not in doc
        assert claims_of(doc)["homomorphism"]["verdict"] == \
            "refuted-with-witness"

    def test_partial_map_is_an_input_error(self, capsys, tmp_path):
        path = write_morphism(tmp_path, "f.json", "free:1", "free:0",
                              {"⊥": "⊥", "⊤": "⊤"})
        code, _, err = run(capsys, "hom", "check", "--map", path)
        assert code == 2 and "does not cover" in err

    def test_table_paths_resolve_relative_to_the_morphism_file(
            self, capsys, tmp_path, monkeypatch):
        (tmp_path / "z3.json").write_text(json.dumps(zmod_spec(3)),
                                          encoding="utf-8")
        identity = {"0": "0", "1": "1", "2": "2"}
        path = write_morphism(tmp_path, "endo.json", "z3.json", "z3.json",
                              identity)
        monkeypatch.chdir(tmp_path / "..")
        doc = run_json(capsys, "hom", "check", "--map", path)
        assert doc["check"]["verdict"] == "holds"
        assert doc["injective"] is True


class TestHomEnumerate:
    def test_streams_json_lines(self, capsys):
        code, out, err = run(capsys, "hom", "enumerate", "--src", "free:1",
                             "--dst", "free:0", "--kind", "bpa")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        maps = [json.loads(line)["map"] for line in lines]
        assert EVAL_BOT in maps and EVAL_TOP in maps
        assert "2 bpa homomorphisms free:1 -> free:0" in err

    def test_counts(self, capsys):
        cases = [("free:0", "free:0", "bpa", 1),
                 ("free:1", "free:1", "bpa", 4),
                 ("free:2", "free:0", "bpa", 4),
                 ("free:1", "free:1", "semiring", 4)]
        for src, dst, kind, expected in cases:
            _, out, err = run(capsys, "hom", "enumerate", "--src", src,
                              "--dst", dst, "--kind", kind)
            assert len(out.strip().splitlines()) == expected, (src, dst, kind)
            assert err.startswith(f"{expected} {kind} homomorphisms")

    def test_cap_is_an_input_error(self, capsys):
        code, _, err = run(capsys, "hom", "enumerate", "--src", "free:2",
                           "--dst", "free:1", "--kind", "semiring")
        assert code == 2 and "cap" in err


class TestHomFactor:
    def test_factors_through_identity(self, capsys, tmp_path):
        psi1 = write_morphism(tmp_path, "id.json", "free:1", "free:1",
                              IDENTITY1)
        psi2 = write_morphism(tmp_path, "ev.json", "free:1", "free:0",
                              EVAL_TOP)
        doc = run_json(capsys, "hom", "factor", "--psi1", psi1,
                       "--psi2", psi2)
        assert doc["refines"] is True
        assert doc["factors"] is True
        assert doc["verified"] is True
        assert doc["psi"]["map"] == EVAL_TOP

    def test_crossing_kernels_do_not_factor(self, capsys, tmp_path):
        psi1 = write_morphism(tmp_path, "t.json", "free:1", "free:0", EVAL_TOP)
        psi2 = write_morphism(tmp_path, "b.json", "free:1", "free:0", EVAL_BOT)
        doc = run_json(capsys, "hom", "factor", "--psi1", psi1,
                       "--psi2", psi2)
        assert doc["refines"] is False
        assert doc["factors"] is False
        assert doc["psi"] is None and doc["verified"] is False

    def test_non_surjective_psi1(self, capsys, tmp_path):
        collapse = {"⊥": "⊥", "!a": "⊥", "a": "⊥", "⊤": "⊥"}
        psi1 = write_morphism(tmp_path, "c.json", "free:1", "free:0", collapse)
        psi2 = write_morphism(tmp_path, "e.json", "free:1", "free:0", EVAL_TOP)
        code, _, err = run(capsys, "hom", "factor", "--psi1", psi1,
                           "--psi2", psi2)
        assert code == 2 and "surjective" in err


class TestHomIsoTheorem:
    def test_embedding_mode_confirmed(self, capsys):
        doc = run_json(capsys, "hom", "iso-theorem", "--src", "free:1",
                       "--dst", "free:0", "--kind", "bpa",
                       "--mode", "embedding")
        assert doc["result"]["verdict"] == "holds"
        assert doc["result"]["homomorphisms"] == 2
        claim = claims_of(doc)["onto-order-preserving-iff-isomorphism"]
        assert claim["verdict"] == "confirmed" and claim["witness"] is None

    def test_monotone_mode_refuted(self, capsys):
        doc = run_json(capsys, "hom", "iso-theorem", "--src", "free:1",
                       "--dst", "free:0", "--kind", "bpa",
                       "--mode", "monotone")
        assert doc["result"]["verdict"] == "fails"
        assert len(doc["result"]["counterexamples"]) == 2
        claim = claims_of(doc)["onto-order-preserving-iff-isomorphism"]
        assert claim["verdict"] == "refuted-with-witness"
        assert "↦" in claim["witness"][0]

    def test_orderless_table_is_an_input_error(self, capsys, z3_path):
        code, _, err = run(capsys, "hom", "iso-theorem", "--src", z3_path,
                           "--dst", z3_path, "--kind", "semiring")
        assert code == 2 and "idempotent" in err


class TestDiffCommand:
    def test_boolean_case(self, capsys):
        doc = run_json(capsys, "diff", "--free-atoms", "1")
        assert doc["subtrahends"] == ["⊤"]
        assert doc["difference"]["size"] == 4
        assert doc["extended_order"]["order_used"] == "canonical"
        assert doc["extended_order"]["matches_base"] is True
        assert doc["cancellation"]["hypothesis_met"] is False

        claims = claims_of(doc)
        assert claims["difference-embedding"]["verdict"] == "confirmed"
        assert claims["translation-invariance"]["verdict"] == "confirmed"
        assert claims["similarity-iff"]["verdict"] == "confirmed"
        assert claims["difference-isomorphic-to-parent"]["verdict"] == \
            "confirmed"
        cancel = claims["difference-cancellation-iff"]
        assert cancel["verdict"] == "out-of-hypothesis"
        assert cancel["witness"] == ["!a", "⊥", "!a"]

    def test_group_case(self, capsys, z3_path):
        doc = run_json(capsys, "diff", "--table", z3_path)
        assert doc["subtrahends"] == ["0", "1", "2"]
        assert doc["difference"]["size"] == 3
        assert doc["extended_order"]["order_used"] == "discrete-fallback"
        claims = claims_of(doc)
        assert claims["difference-cancellation-iff"]["verdict"] == "confirmed"
        assert claims["difference-embedding"]["verdict"] == "confirmed"
        assert "difference-isomorphic-to-parent" not in claims

    def test_explicit_subtrahends(self, capsys, z3_path):
        doc = run_json(capsys, "diff", "--table", z3_path,
                       "--subtrahends", "0")
        assert doc["subtrahends"] == ["0"]
        code, _, err = run(capsys, "diff", "--table", z3_path,
                           "--subtrahends", "0,1")
        assert code == 2 and "ideal" in err

    def test_universal_flag(self, capsys, z3_path):
        doc = run_json(capsys, "diff", "--table", z3_path, "--universal")
        assert doc["extended_order"]["universal"] is True

    def test_emit_round_trip(self, capsys, tmp_path, z3_path):
        out_path = str(tmp_path / "diff.json")
        doc = run_json(capsys, "diff", "--table", z3_path,
                       "--emit", out_path)
        assert doc["emitted"] == out_path

        emitted = json.loads(open(out_path, encoding="utf-8").read())
        assert emitted["provenance"]["parent"] == "z3"
        reloaded = run_json(capsys, "check", "--table", out_path)
        assert claims_of(reloaded)["semiring"]["verdict"] == "confirmed"
        assert reloaded["algebra"]["size"] == 3

    def test_partial_order_matrix_case(self, capsys, z3_path, tmp_path):
        matrix = [[1 if p == q else 0 for q in range(3)] for p in range(3)]
        matrix[0][1] = 1
        path = tmp_path / "partial.json"
        path.write_text(json.dumps(matrix), encoding="utf-8")
        doc = run_json(capsys, "diff", "--table", z3_path,
                       "--order-matrix", str(path))
        extension = doc["extended_order"]
        assert extension["order_used"] == "supplied"
        assert extension["matches_base"] is False
        assert extension["base_stability"]["verdict"] == "fails"
        poset = {r["property"]: r["verdict"] for r in extension["poset"]}
        assert poset["transitivity"] == "fails"
        assert claims_of(doc)["similarity-iff"]["verdict"] == "confirmed"


class TestParseCommand:
    def test_contradiction(self, capsys):
        doc = run_json(capsys, "parse", "a & !a", "--atoms", "a")
        assert doc["element"] == {"name": "⊥", "index": 0, "bits": "00"}
        assert doc["formula"] == "a & !a"
        assert doc["atoms"] == ["a"]

    def test_atoms_inferred_from_formula(self, capsys):
        doc = run_json(capsys, "parse", "a -> b")
        assert doc["atoms"] == ["a", "b"]
        assert doc["element"]["index"] == 13
        assert doc["element"]["bits"] == "1101"

    def test_tautology(self, capsys):
        doc = run_json(capsys, "parse", "x | !x")
        assert doc["element"]["name"] == "⊤"

    def test_ast_shape(self, capsys):
        doc = run_json(capsys, "parse", "!a | 1")
        assert doc["ast"] == {"op": "or",
                              "args": [{"op": "not", "args": [{"atom": "a"}]},
                                       {"const": True}]}

    def test_syntax_error_reports_byte(self, capsys):
        code, _, err = run(capsys, "parse", "a & & b")
        assert code == 2 and "byte 4" in err

    def test_unbound_atom(self, capsys):
        code, _, err = run(capsys, "parse", "a & b", "--atoms", "a")
        assert code == 2 and "'b'" in err


class TestDeterminism:
    def test_reports_are_byte_identical_across_runs(self, capsys, z3_path):
        outputs = set()
        for _ in range(2):
            code, out, _ = run(capsys, "check", "--table", z3_path)
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1

        for _ in range(2):
            code, out, _ = run(capsys, "diff", "--table", z3_path)
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 2

    def test_seed_is_recorded(self, capsys):
        doc = run_json(capsys, "--seed", "7", "order", "--free-atoms", "1")
        assert doc["seed"] == 7

    def test_json_is_sorted_and_unicode(self, capsys):
        _, out, _ = run(capsys, "check", "--free-atoms", "0")
        assert "⊤" in out  # ensure_ascii=False keeps the glyphs readable
        doc = json.loads(out)
        assert list(doc) == sorted(doc)
