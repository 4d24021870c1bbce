"""Smoke test for the predshare_py extension module.

Build and install first:  maturin build --release -m crates/python/Cargo.toml
then  pip install target/wheels/predshare-*.whl
"""

import math

import predshare_py as ps


def main() -> None:
    assert ps.CONTRACTS == ["ns", "ts", "is", "fs"]

    m = ps.Model.correlation(0.7, 0.6)
    c = m.classify()
    assert set(c.ir) == {"ns", "ts"}, c.ir
    u1, u2 = c.utilities("ns")[0]
    assert math.isclose(u1, 0.125) and math.isclose(u2, 0.025)
    assert m.dominates("fs", "is")

    tmax = math.sqrt(0.5135 * (1 - 0.7205) / (0.7205 * (1 - 0.5135)))
    w = ps.Model.correlation(0.7205, 0.5135, theta=[0.0, tmax], weights=[0.500005, 0.499995], c1=0.7555)
    assert w.classify().uniquely_irpo == "ts"

    cf = ps.closed_form(0.9, 0.55)
    assert math.isclose(cf["u1"], 0.4)

    one = ps.Model.two_hypotheses(0.5, 5 / 32, 1 / 8, 0.5, one_sample=True).classify()
    assert "fs" in one.to_dict()["ir"] or one.irpo

    sweep = ps.cost_sweep(seed=7, c1_step=0.5)
    assert sweep["seed"] == 7 and len(sweep["points"]) == 6
    assert sweep["csv"].startswith("# seed=7")

    worlds = ps.validate_worlds(0.7, 0.6, theta=[0.0, 0.3], samples=100_000)
    assert worlds["passed"], worlds

    checks = ps.run_checks(["closed-form"])
    assert all(ch["passed"] for ch in checks)

    try:
        ps.Model.correlation(0.4, 0.6)
    except ValueError:
        pass
    else:
        raise AssertionError("alpha < beta accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
