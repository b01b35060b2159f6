"""Common information: the exact maximum C and the Wyner-style bound B.

Two contrasting source families show why C behaves like a common part:

* DSBS pair + independent bit: nothing is common to all three sources,
  so C = 0 even though X1 and X2 are strongly correlated (B stays large).
* Shared-component triple: every source carries X0, so C = B = H(X0).

The script also cross-checks the brute-force partition oracle, the bound
chain C <= min MI <= max MI <= B, monotonicity under dropping a source,
and the equal-pairwise-MI special case.
"""

from itertools import product as iproduct

import numpy as np

import graywyner as gw


def noisy_triple(delta=0.11):
    pair = gw.JointPmf(
        ("X1", "X2"), (2, 2),
        [(1 - delta) / 2, delta / 2, delta / 2, (1 - delta) / 2],
    )
    return gw.product(pair, gw.JointPmf(("X3",), (2,), [0.5, 0.5]))


def shared_triple():
    probs = np.zeros((4, 4, 4))
    for x0 in (0, 1):
        for a, b, c in iproduct((0, 1), repeat=3):
            probs[2 * x0 + a, 2 * x0 + b, 2 * x0 + c] = 1 / 16
    return gw.JointPmf(("X1", "X2", "X3"), (4, 4, 4), probs)


def inspect(name, pmf, w_cardinality, seed):
    print(f"== {name} ==")
    c = gw.gk_common_information(pmf)
    print(f"C = {c.value:.6f} with a {c.witness.w_cardinality}-ary witness")
    if len(pmf.support_indices()) <= 8:
        oracle = gw.gk_brute_force_oracle(pmf)
        print(f"brute-force oracle over {oracle.diagnostics.iterations} "
              f"partitions agrees: {abs(oracle.value - c.value) <= 1e-9}")
    else:
        print("(support too large for the Bell-number oracle; "
              "the test suite covers it on support <= 8)")
    mn, mx = gw.pairwise_mi_bounds(pmf)
    b = gw.wyner_estimate(pmf, w_cardinality=w_cardinality, restarts=4, seed=seed)
    print(f"pairwise MI range = ({mn:.6f}, {mx:.6f}),  "
          f"B^ = {b.value:.6f} (converged={b.diagnostics.converged}, "
          f"residual={b.diagnostics.residual:.1e})")
    report = gw.verify_chain(
        pmf, gw.WynerParams(w_cardinality=w_cardinality, restarts=4, seed=seed)
    )
    print(f"chain C <= minMI <= maxMI <= B^ holds: {report.chain_holds}")
    for drop in range(pmf.k):
        full, reduced = gw.verify_monotonicity(pmf, drop)
        print(f"  drop X{drop + 1}: C(full) = {full:.4f} <= "
              f"C(reduced) = {reduced:.4f}")
    prop4 = gw.verify_prop4(
        pmf, gw.WynerParams(w_cardinality=w_cardinality, restarts=4, seed=seed)
    )
    print(f"equal-pairwise-MI case: {prop4.message}")
    spot = gw.relaxation_spot_check(pmf, restarts=3, seed=seed)
    print(f"soft-witness spot check: best I = {spot.best_value:.6f} "
          f"(never above C + 1e-4: {not spot.exceeds})")
    print()


def main():
    inspect("DSBS(0.11) pair + independent bit", noisy_triple(), 4, seed=11)
    inspect("shared-component triple", shared_triple(), 3, seed=7)
    print("The first family has max MI = 1 - h(0.11) ~ 0.50 yet C = 0:")
    print("pairwise correlation alone creates no common part, while the")
    print("second family collapses the whole chain onto H(X0) = 1 bit.")


if __name__ == "__main__":
    main()
