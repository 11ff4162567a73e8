"""Smoke test for the luckbits Python extension.

Build and install first, e.g.:

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/luckbits-*.whl
    python python/smoke_test.py
"""

import json
import math
import sys

import luckbits


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    print("luckbits", luckbits.__version__)

    code, cost, tree = luckbits.shortest_description([22, 23, 24, 25, 26, 27], 1, 49)
    assert code == "arith(22, +1, 6)", code
    assert json.loads(tree)["kind"] == "arith_seq"
    assert close(luckbits.code_cost(tree), cost)
    cw = luckbits.generation_complexity(finite=[49] * 6)
    u = luckbits.unexpectedness(cw, cost)
    assert close(u, 15.0735, 1e-4), u
    p, clamped = luckbits.subjective_probability(u)
    assert close(p, 2 ** -u) and not clamped

    assert luckbits.subjective_probability(-3.0) == (1.0, True)
    assert luckbits.emotion(2.0, -5.0) == (0.0, True)
    assert luckbits.integer_cost(3) == 5.0

    d = luckbits.near_miss_discrete(100, 5, 10)
    assert close(d.value, 10 + math.log2(100) - 2 - math.log2(5)) and d.eta_star == 0.0
    assert close(sum(v for _, v in d.terms), d.value)
    c = luckbits.near_miss_continuous(100, 5, 10, alpha=0.01)
    assert close(c.value, d.value + 1), c.value
    k4 = luckbits.near_miss_discrete(100, 5, 10, k=4)
    assert k4.value == d.value - 2.0

    try:
        luckbits.near_miss_discrete(100, 0, 10)
    except ValueError as e:
        assert "near miss" in str(e)
    else:
        raise AssertionError("expected ValueError")

    a = luckbits.causal_luck_actual(1.5, 4.0, 3.0)
    assert a.value == luckbits.luck_actual(1.5, luckbits.propagate_unexpectedness(4.0, 3.0)).value
    cf = luckbits.causal_luck_counterfactual(8.0, 6.0, 2.0, 0.0)
    assert cf.value == luckbits.luck_counterfactual(8.0, 6.0, 2.0).value
    assert luckbits.rescher_luck(10, 0.1).value == 9.0
    assert luckbits.teigen_luck(10, 5).value == 2.0

    scene = {
        "actual": {"id": "landing", "description": 6.6, "generation": 6.6, "hypothetical_emotion": 0.0},
        "near_miss": {"l0": 100, "l2": 10, "delta": 5, "utility": 10, "geometry": "discrete_bounded"},
    }
    chosen, readings, baselines = luckbits.assess_scene(json.dumps(scene))
    assert chosen.mode == "l2" and chosen.counterfactual_id == "near_miss"
    assert len(readings) == 2 and baselines == []

    report = luckbits.run_stories()
    assert report.summary == "congruent: 19/21; mismatches: S5.2, S9.1", report.summary
    assert report.reference_outcome
    assert luckbits.run_stories("").total == 0

    print("smoke test passed:", report.summary)
    return 0


if __name__ == "__main__":
    sys.exit(main())
