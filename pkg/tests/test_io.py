"""Serialization: JSON documents for instances, graphs, schedules; DIMACS CNF."""
import json
import random

import pytest

from jitsched.core import Instance, Job, ProcessingTable, Schedule, Variant
from jitsched.errors import ParseError, UsageError, ValidationError
from jitsched.generators import gen_3cnf, gen_kpartite, gen_random_instance, gen_random_unrelated
from jitsched.io import (
    parse_dimacs,
    parse_graph,
    parse_instance,
    parse_schedule,
    write_dimacs,
    write_graph,
    write_instance,
    write_schedule,
)
from jitsched.reductions.artifacts import PATCHED, VERBATIM
from jitsched.reductions.clique import KPartiteGraph, mcc_to_isem
from jitsched.reductions.sat import CnfFormula, Literal, sat_to_uisum

G2 = KPartiteGraph(parts=(("a",), ("b",)), edges=(("a", "b"),))


def eligible_example():
    jobs = (Job("x", 3, 5), Job("y", 6, 2))
    return Instance(jobs, ProcessingTable(2, ((2, None), (3, 3))), Variant.ELIGIBLE)


# --- instance documents -----------------------------------------------------------

def test_instance_round_trip_identity():
    inst = eligible_example()
    assert parse_instance(write_instance(inst)) == inst


def test_instance_serialization_is_canonical():
    inst = eligible_example()
    text = write_instance(inst)
    assert text == write_instance(parse_instance(text))
    assert text.endswith("\n")
    doc = json.loads(text)
    assert doc["version"] == "1"
    assert doc["variant"] == "eligible"
    assert [j["id"] for j in doc["jobs"]] == ["x", "y"]
    assert doc["jobs"][0]["processing_times"] == [2, None]


def test_artifact_round_trip_keeps_annotations():
    for mode in (PATCHED, VERBATIM):
        art = mcc_to_isem(G2, mode=mode)
        back = parse_instance(write_instance(art))
        assert back == art
        assert back.target == 243 and back.mode == mode
    sat = sat_to_uisum(
        CnfFormula(1, ((Literal(0, False), Literal(0, False), Literal(0, True)),))
    )
    back = parse_instance(write_instance(sat))
    assert back == sat
    assert back.target == 9 and back.mode is None


def test_plain_instance_has_no_annotation_block():
    doc = json.loads(write_instance(eligible_example()))
    assert "annotations" not in doc


def test_null_duration_means_ineligible():
    inst = parse_instance(write_instance(eligible_example()))
    assert inst.table.rows[0] == (2, None)


def test_parse_rejects_unknown_version():
    doc = json.loads(write_instance(eligible_example()))
    doc["version"] = "99"
    with pytest.raises(ValidationError, match="version"):
        parse_instance(json.dumps(doc))


def test_parse_rejects_unknown_field():
    doc = json.loads(write_instance(eligible_example()))
    doc["surprise"] = 1
    with pytest.raises(ValidationError, match="surprise"):
        parse_instance(json.dumps(doc))


def test_parse_rejects_row_length_mismatch():
    doc = json.loads(write_instance(eligible_example()))
    doc["jobs"][0]["processing_times"] = [2]
    with pytest.raises(ValidationError):
        parse_instance(json.dumps(doc))


def test_parse_rejects_bool_and_float_where_int_expected():
    doc = json.loads(write_instance(eligible_example()))
    doc["jobs"][0]["weight"] = True
    with pytest.raises(ValidationError):
        parse_instance(json.dumps(doc))
    doc["jobs"][0]["weight"] = 5.0
    with pytest.raises(ValidationError):
        parse_instance(json.dumps(doc))


def test_parse_rejects_out_of_range_integers():
    doc = json.loads(write_instance(eligible_example()))
    doc["jobs"][0]["weight"] = 2**63
    with pytest.raises(ValidationError):
        parse_instance(json.dumps(doc))


def test_parse_rejects_model_violations_with_path():
    doc = json.loads(write_instance(eligible_example()))
    doc["jobs"][0]["deadline"] = 0
    with pytest.raises(ValidationError, match="jobs"):
        parse_instance(json.dumps(doc))


def test_parse_rejects_unknown_role_kind():
    doc = json.loads(write_instance(mcc_to_isem(G2)))
    first = next(iter(doc["annotations"]["job_roles"]))
    doc["annotations"]["job_roles"][first]["kind"] = "mystery"
    with pytest.raises(ValidationError, match="mystery"):
        parse_instance(json.dumps(doc))


def test_parse_error_carries_line_information():
    with pytest.raises(ParseError, match="line"):
        parse_instance('{"version": "1",,}')


@pytest.mark.parametrize("trial", range(10))
def test_random_instances_round_trip(trial):
    rng = random.Random(8100 + trial)
    if trial % 2:
        inst = gen_random_instance(
            n=rng.randint(0, 7), m=rng.randint(1, 3), max_d=9, max_p=9,
            max_w=40, eligibility_prob=0.6, seed=rng.randrange(2**32),
        )
    else:
        inst = gen_random_unrelated(
            n=rng.randint(0, 7), m=rng.randint(1, 3), max_d=9, max_p=9,
            max_w=40, seed=rng.randrange(2**32),
        )
    text = write_instance(inst)
    assert parse_instance(text) == inst
    assert write_instance(parse_instance(text)) == text


# --- graph documents -----------------------------------------------------------------

def test_graph_round_trip():
    g = gen_kpartite(3, (2, 3, 1), edge_prob=0.5, plant_clique=True, seed=7)
    text = write_graph(g)
    assert parse_graph(text) == g
    assert write_graph(parse_graph(text)) == text


def test_graph_document_shape():
    doc = json.loads(write_graph(G2))
    assert doc["k"] == 2
    assert doc["colors"] == [["a"], ["b"]]
    assert doc["edges"] == [["a", "b"]]


def test_graph_rejects_k_mismatch():
    doc = json.loads(write_graph(G2))
    doc["k"] = 3
    with pytest.raises(ValidationError, match="k"):
        parse_graph(json.dumps(doc))


def test_graph_rejects_same_color_edge():
    with pytest.raises(ValidationError):
        parse_graph(json.dumps({
            "version": "1", "k": 2,
            "colors": [["a", "b"], ["c"]], "edges": [["a", "b"]],
        }))


# --- schedule documents -----------------------------------------------------------------

def test_schedule_round_trip_and_canonical_order():
    s = Schedule({"zeta": 1, "alpha": None, "mid": 0})
    text = write_schedule(s)
    assert parse_schedule(text) == s
    doc = json.loads(text)
    assert list(doc["assignment"]) == ["alpha", "mid", "zeta"]
    reordered = Schedule({"alpha": None, "mid": 0, "zeta": 1})
    assert write_schedule(reordered) == text


def test_schedule_null_means_rejected():
    s = parse_schedule('{"assignment": {"a": null}}')
    assert s.machine_of("a") is None


def test_schedule_rejects_negative_machine():
    with pytest.raises(ValidationError):
        parse_schedule('{"assignment": {"a": -1}}')


# --- DIMACS ---------------------------------------------------------------------------------

def test_dimacs_round_trip():
    for seed in range(10):
        f = gen_3cnf(alpha=3, beta=4, seed=seed)
        text = write_dimacs(f)
        assert parse_dimacs(text) == f
        assert write_dimacs(parse_dimacs(text)) == text


def test_dimacs_format_frozen_example():
    f = CnfFormula(2, ((Literal(0, False), Literal(1, True), Literal(0, True)),))
    assert write_dimacs(f) == "p cnf 2 1\n1 -2 -1 0\n"


def test_dimacs_parses_comments_blanks_and_multiline_clauses():
    text = "c a comment\n\np cnf 2 1\nc another\n1\n-2 -1\n0\n"
    assert parse_dimacs(text) == CnfFormula(
        2, ((Literal(0, False), Literal(1, True), Literal(0, True)),)
    )


def test_dimacs_rejects_wrong_literal_count():
    with pytest.raises(ValidationError, match="clause 1"):
        parse_dimacs("p cnf 2 2\n1 2 -1 0\n1 2 0\n")


def test_dimacs_rejects_clause_count_mismatch():
    with pytest.raises(ValidationError):
        parse_dimacs("p cnf 2 2\n1 2 -1 0\n")


def test_dimacs_rejects_variable_out_of_range():
    with pytest.raises(ValidationError):
        parse_dimacs("p cnf 2 1\n1 2 3 0\n")
    with pytest.raises(ValidationError):
        parse_dimacs("p cnf 2 1\n1 2 0 0\n")


def test_dimacs_rejects_missing_header():
    with pytest.raises(ParseError):
        parse_dimacs("1 2 -1 0\n")


def test_dimacs_rejects_duplicate_header():
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 2 1\np cnf 2 1\n1 2 -1 0\n")


def test_dimacs_rejects_unterminated_clause():
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 2 1\n1 2 -1\n")


def test_dimacs_rejects_non_integer_token():
    with pytest.raises(ParseError, match="line"):
        parse_dimacs("p cnf 2 1\n1 two -1 0\n")
