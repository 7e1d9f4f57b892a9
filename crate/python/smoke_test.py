#!/usr/bin/env python3
"""Smoke test for the fencejump Python extension.

Builds nothing itself: run `cargo build -p fencejump-py` (or --release)
first, then `python3 python/smoke_test.py`. The script locates the
compiled cdylib, imports it under the module name, and exercises the
main entry points against independently computed values.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

TAU = 2 * math.pi


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / "libfencejump.so"
        for profile in ("release", "debug")
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit(
            "libfencejump.so not found; run `cargo build -p fencejump-py` first"
        )
    stage = Path(tempfile.mkdtemp(prefix="fencejump-smoke-"))
    shutil.copy2(lib, stage / "fencejump.so")
    sys.path.insert(0, str(stage))
    import fencejump

    return fencejump


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    fj = load_module()

    # geometry
    approx(fj.chord(math.pi), 2.0)
    approx(fj.chord(1.0), 2 * math.sin(0.5))
    approx(fj.ccw_distance(6.0, 0.5), TAU - 6.0 + 0.5)
    assert fj.in_fence(1.0, 0.5, 2.0)
    assert not fj.in_fence(3.0, 0.5, 2.0)
    approx(fj.step_cap(5.0), TAU - 5.0)
    fj.validate_strategy(2.0, [1.0, 0.5])
    try:
        fj.validate_strategy(5.0, [1.5])
        raise AssertionError("cap violation not rejected")
    except ValueError:
        pass

    # solvers
    approx(fj.gamma(), 4.04196, 1e-4)
    approx(fj.solve_alpha_beta(math.pi), 1.663422387159472, 1e-9)

    # halving schedules and costs
    assert fj.halving_jumps(2.0, 3) == [1.0, 0.5, 0.25]
    assert fj.halving_jumps_iterative(2.0, 3) == [1.0, 0.5, 0.25]
    approx(fj.threshold_h(1), 4 * math.pi / 3)
    approx(fj.rho(5.0), (10 - TAU) / (TAU - 5.0))
    approx(fj.halving_cost(2.0, 2), 7.236844302897038, 1e-12)
    assert fj.halving_cost_limit(2.0) < fj.halving_cost(2.0, 8)

    # cost breakdown
    bd = fj.cost_breakdown(2.0, [1.0, 0.5])
    approx(bd.worst, 7.236844302897038, 1e-12)
    assert bd.worst_index == 3
    assert len(bd.costs) == 4
    approx(fj.worst_case_cost(2.0, []), 1 + TAU, 1e-12)

    # optimal strategies
    one = fj.optimal_one_jump(math.pi)
    approx(one.alphas[0], 1.663422387159472, 1e-9)
    approx(one.cost, 7.097933186450436, 1e-9)
    two = fj.optimal_k_jump(5.8, 2)
    approx(two.alphas[0], TAU - 5.8, 1e-12)
    approx(two.alphas[1], TAU - 5.8, 1e-12)
    assert two.method == "equalization-chain"
    grid = fj.grid_refine_k_jump(2.0, 1, coarse=0.02, rounds=5)
    approx(grid.cost, fj.optimal_k_jump(2.0, 1).cost, 1e-4)

    # trajectory simulation
    trace = fj.run_trajectory(2.0, [], fence_start=1.0, treasure=0.5)
    approx(trace.total, 1.5, 1e-12)
    assert [m.kind for m in trace.moves] == ["center-to-perimeter", "walk-ccw"]
    try:
        fj.run_trajectory(2.0, [], fence_start=1.0, treasure=2.0)
        raise AssertionError("treasure on fence not rejected")
    except ValueError:
        pass

    # adversarial supremum vs the analytic worst case (coarse grid)
    sup = fj.worst_case_sim(2.0, [1.0, 0.5], eps=2e-2)
    analytic = fj.worst_case_cost(2.0, [1.0, 0.5])
    assert sup.sup_time <= analytic + 1e-9
    assert analytic - sup.sup_time <= 5 * 2e-2
    assert sup.scenarios_evaluated > 0

    print("fencejump smoke test: all checks passed")


if __name__ == "__main__":
    main()
