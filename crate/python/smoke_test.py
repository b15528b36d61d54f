"""Build the extension module and run a small end-to-end pipeline through it."""

import os
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build():
    env = dict(os.environ, PYO3_BUILD_EXTENSION_MODULE="1")
    subprocess.run(
        ["cargo", "build", "--release", "-p", "tailqaoa-python"],
        cwd=ROOT, env=env, check=True,
    )
    lib = ROOT / "target" / "release" / "libtailqaoa.so"
    out = Path(tempfile.mkdtemp(prefix="tailqaoa-py-"))
    shutil.copy(lib, out / "tailqaoa.so")
    sys.path.insert(0, str(out))


def main():
    if "--no-build" not in sys.argv:
        build()
    import tailqaoa as tq

    toy = tq.Instance(2, [[0], [1], [0, 1]])
    assert sorted(toy.solve_exact()) == [[0, 1], [2]]
    ising = toy.ising()
    assert ising.energy([True, True, False]) == 0.0
    assert ising.energy([True, True, True]) > 0.0

    inst = tq.Instance.planted(18, 6, 3, 5)
    assert len(inst.solve_exact()) == 1
    again = tq.Instance.from_json(inst.to_json())
    assert again.routes == inst.routes
    mean, _ = inst.valency()
    print(f"instance: {inst!r}, valency {mean:.2f}")

    prob = tq.Problem(inst)
    e0, f0 = prob.evaluate([0.0], [0.0])
    assert abs(f0 - 1 / 64) < 1e-12
    hist = prob.histogram([0.3], [0.4])
    assert abs(sum(hist.values()) - 1.0) < 1e-9

    levels = tq.interp_pipeline(prob, 4, n_starts=200, seed=0)
    for lv in levels:
        print(f"  p={lv.p} E={lv.energy:.4f} F={lv.success_probability:.4f}")
    best = levels[-1]
    assert best.success_probability > f0
    assert best.energy < e0

    m = tq.required_measurements(best.success_probability, 0.01)
    shots = prob.sample(best.gammas, best.betas, m, seed=1)
    assert len(shots) == m
    print(f"required measurements {m}, cover seen: {prob.solutions[0] in shots}")

    clean, err = tq.noisy_success(prob, best.gammas, best.betas, 0.0, trajectories=5)
    assert abs(clean - best.success_probability) < 1e-12 and err < 1e-12
    noisy, _ = tq.noisy_success(prob, best.gammas, best.betas, 0.02, trajectories=200)
    assert noisy < clean

    f_gs, _, _ = tq.anneal(prob, 50.0)
    print(f"anneal T=50: F_gs={f_gs:.4f}, noisy F (eta=0.02)={noisy:.4f}")

    q = tq.tts_qaoa(levels)
    a = tq.tts_qa(prob, [1.0, 10.0, 50.0])
    print(f"tts: {q[0]} {q[3]:.2f} vs {a[0]} {a[3]:.2f}")

    try:
        tq.Instance(2, [[0], [5]])
    except ValueError as e:
        print(f"rejected malformed instance: {e}")
    else:
        raise AssertionError("malformed instance accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
