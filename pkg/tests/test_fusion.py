import json
import threading

import pytest

from freefusion.fusion import FusionSum, LabelError, RingError, TableRing, load_ring, resolve_ring, su2_ring

Z2 = {
    "name": "Z2",
    "unit": "1",
    "simples": ["1", "g"],
    "dual": {"1": "1", "g": "g"},
    "fusion": {"1|1": {"1": 1}, "1|g": {"g": 1}, "g|1": {"g": 1}, "g|g": {"1": 1}},
}


def su2_oracle(a, b):
    # Clebsch-Gordan by dimension counting: weights of V_a (x) V_b peeled off from the top
    weights = {}
    for i in range(a + 1):
        for j in range(b + 1):
            w = (a - 2 * i) + (b - 2 * j)
            weights[w] = weights.get(w, 0) + 1
    out = {}
    while weights:
        top = max(weights)
        out[top] = out.get(top, 0) + 1
        for w in range(-top, top + 1, 2):
            weights[w] -= 1
            if not weights[w]:
                del weights[w]
    return out


def test_su2_examples():
    R = su2_ring()
    assert R.fuse(1, 1) == FusionSum({0: 1, 2: 1})
    assert R.fuse(0, 5) == FusionSum({5: 1})
    assert R.fuse(2, 3) == FusionSum({1: 1, 3: 1, 5: 1})
    assert R.fuse(3, 3).labels() == [0, 2, 4, 6]
    assert R.fuse(0, 0) == {0: 1}
    assert R.coefficient(1, 1, 2) == 1
    assert R.coefficient(1, 1, 1) == 0
    assert R.coefficient(2, 2, 0) == 1


@pytest.mark.parametrize("a", range(7))
@pytest.mark.parametrize("b", range(7))
def test_su2_matches_weight_oracle(a, b):
    assert su2_ring().fuse(a, b) == FusionSum(su2_oracle(a, b))


def test_su2_commutative_and_associative():
    R = su2_ring()
    labels = range(6)
    for a in labels:
        for b in labels:
            assert R.fuse(a, b) == R.fuse(b, a)
            for c in labels:
                for d in range(16):
                    left = sum(n * R.coefficient(u, c, d) for u, n in R.fuse(a, b).items())
                    right = sum(n * R.coefficient(a, v, d) for v, n in R.fuse(b, c).items())
                    assert left == right


def test_su2_labels():
    R = su2_ring()
    assert R.parse_label("s12") == 12
    assert R.format_label(3) == "s3"
    assert R.dual(4) == 4
    for bad in ("x", "s", "s-1", "2"):
        with pytest.raises(LabelError):
            R.parse_label(bad)
    with pytest.raises(LabelError):
        R.fuse(-1, 2)
    with pytest.raises(LabelError):
        R.fuse(True, 1)


def test_fusion_sum_canonical():
    s = FusionSum([(3, 1), (1, 2), (3, 1), (5, 0)])
    assert s.items() == ((1, 2), (3, 2))
    assert 5 not in s.labels()
    assert hash(s) == hash(FusionSum({3: 2, 1: 2}))
    with pytest.raises(ValueError):
        FusionSum({1: -1})


def test_z2_table():
    R = load_ring(Z2)
    assert R.fuse("g", "g") == FusionSum({"1": 1})
    assert R.dual("g") == "g"
    assert R.coefficient("g", "1", "g") == 1
    assert load_ring(json.dumps(Z2)).fuse("g", "1") == {"g": 1}
    with pytest.raises(LabelError):
        R.fuse("g", "h")


def test_document_round_trip(tmp_path):
    R = load_ring(Z2)
    path = tmp_path / "z2.json"
    path.write_text(json.dumps(R.to_document()), encoding="utf-8")
    again = resolve_ring(str(path))
    assert isinstance(again, TableRing)
    assert again.to_document() == R.to_document()


def broken(**changes):
    doc = json.loads(json.dumps(Z2))
    for key, val in changes.items():
        if val is None:
            doc.pop(key)
        else:
            doc[key] = val
    return doc


@pytest.mark.parametrize(
    "doc, message",
    [
        (broken(fusion={"1|1": {"1": 1}, "g|1": {"g": 1}, "1|g": {"1": 1}, "g|g": {"1": 1}}), "unit law"),
        (broken(fusion={"1|1": {"1": 1}, "g|1": {"g": 1}, "g|g": {"1": 1}}), "incomplete"),
        (broken(fusion={"1|1": {"1": 1}, "1|g": {"g": 1}, "g|1": {"g": 1}, "g|g": {"g": 1}}), "dual condition"),
        (broken(fusion={"1|1": {"1": 1}, "1|g": {"g": 1}, "g|1": {"g": 1}, "g|g": {"1": -1}}), "negative"),
        (broken(fusion={"1|1": {"1": 1}, "1|g": {"g": 1}, "g|1": {"g": 1}, "g|g": {"1": 1.5}}), "integer"),
        (broken(fusion={"1|1": {"1": 1}, "1|g": {"g": 1}, "g|1": {"g": 1}, "g|g": {"h": 1}}), "unknown"),
        (broken(unit="h"), "unit"),
        (broken(simples=["1", "g", "g"]), "duplicate"),
        (broken(fusion=None), "lacks"),
        (broken(dual={"1": "1"}), "dual"),
        ({"name": "x", "unit": "1", "simples": ["1"], "fusion": {"1,1": {"1": 1}}}, "a|b"),
    ],
)
def test_invalid_tables(doc, message):
    with pytest.raises(RingError, match=message):
        load_ring(doc)


def test_missing_unit_row_is_unit_law_error():
    doc = broken(fusion={"1|1": {"1": 1}, "1|g": {}, "g|1": {"g": 1}, "g|g": {"1": 1}})
    with pytest.raises(RingError, match="unit law"):
        load_ring(doc)


def test_bad_json_and_missing_file(tmp_path):
    with pytest.raises(RingError):
        load_ring("{not json")
    with pytest.raises(RingError):
        load_ring(str(tmp_path / "absent.json"))


def test_multiplicities_above_one_allowed():
    # a two-object ring with x.x = 1 + 2x is a fine (if unusual) based ring
    doc = {
        "name": "m2",
        "unit": "1",
        "simples": ["1", "x"],
        "fusion": {"1|1": {"1": 1}, "1|x": {"x": 1}, "x|1": {"x": 1}, "x|x": {"1": 1, "x": 2}},
    }
    R = load_ring(doc)
    assert R.coefficient("x", "x", "x") == 2


def test_concurrent_reads_agree():
    R = load_ring(Z2)
    results = []

    def work():
        results.append([R.fuse(a, b) for a in R.simples for b in R.simples])

    threads = [threading.Thread(target=work) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(r == results[0] for r in results)
