"""End-to-end smoke test of the python bindings against known fixture values."""

import math
import os
import sys
import tempfile

import centdian as cd


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


inst = cd.prop2_fixture()
assert inst.name == "prop2"
assert inst.num_nodes == 4 and inst.num_edges == 5 and inst.num_pairs == 4
assert close(inst.budget, 63.0)
assert inst.total_demand == 513.0

# the reference design at lambda = 20 (generalized-center regime)
res = cd.solve(inst, method="bcd", lam=20.0)
assert res["status"] == "optimal"
assert close(res["objective"], 107.03703703703704, 1e-12)
sol = res["solution"]
assert sol.edges == [1, 3, 4]
assert sol.nodes == [0, 1, 2, 3]
assert sol.private_mode == [True, False, False, False]
assert sol.eval.len == [24.0, 20.0, 10.0, 16.0]

# decomposition agrees with the blend model
ben = cd.solve_benders(inst, lam=0.5)
ref = cd.solve(inst, method="cd", lam=0.5)
assert ben["status"] == "optimal" and ref["status"] == "optimal"
assert close(ben["objective"], ref["objective"], 1e-12)
assert ben["surviving"] == 4
assert ben["cuts"] > 0

# direct evaluation of the blend optimum
ev = cd.evaluate_design(inst, [0, 3, 4])
assert ev.Fc == 22.0
assert close(ev.H(0.5), ref["objective"], 1e-12)

# frontier machinery
front = cd.parametrize_po2(inst, tolerance=1e-3)
assert len(front) >= 1
assert front[0]["lambda_lo"] == 1e-3
assert front[0]["Fc"] == 22.0
lex = cd.lexicographic_centdian(inst)
assert lex.eval.Fc == 22.0
mm = cd.max_centdian(inst, lam=0.5)
assert mm["solution"].eval.Hbar(0.5) <= mm["vstar"] + 1e-9

# oracle agreement on a generated instance
gen = cd.generate_instance(6, alpha=0.4, seed=2)
assert gen.name == "gen-n6-a0.4-s2"
br = cd.brute_force(gen, "centdian", lam=0.5)
s6 = cd.solve(gen, method="cd", lam=0.5)
assert close(br["value"], s6["objective"], 1e-6)
assert s6["solution"].edges in br["optima"]

# efficiency constraint: delta = 0 pins the mean to the median optimum
eff = cd.solve(gen, method="cd", lam=1.0, delta=0.0)
assert close(eff["solution"].eval.Fm, eff["fm_star"], 1e-6)

# file round trips
with tempfile.TemporaryDirectory() as tmp:
    ipath = os.path.join(tmp, "inst.txt")
    spath = os.path.join(tmp, "sol.txt")
    cd.write_instance(gen, ipath)
    back = cd.read_instance(ipath)
    assert back.digest == gen.digest
    cd.write_solution(gen, s6["solution"], spath)
    loaded = cd.read_solution(gen, spath)
    assert loaded.edges == s6["solution"].edges
    assert loaded.objective == s6["solution"].objective

# validation errors surface as ValueError
for bad in (lambda: cd.solve(inst, method="cd", lam=5.0),
            lambda: cd.solve_benders(inst, lam=2.0),
            lambda: cd.parametrize_po2(inst, tolerance=0.7),
            lambda: cd.brute_force(inst, "nope")):
    try:
        bad()
    except ValueError:
        pass
    else:
        sys.exit("expected ValueError")

# infinities stay representable across the boundary
lim = cd.solve(inst, method="cd", lam=0.5, node_limit=0)
assert lim["status"] in ("node_limit", "infeasible") or not lim["has_incumbent"]
assert not math.isnan(lim["bound"])

print("python smoke ok")
