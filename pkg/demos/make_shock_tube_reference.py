"""Regenerate the fine-grid shock-tube reference used by the test suite.

Runs the uniform-mesh Brio-Wu tube at 2000 points with the HLLD flux and
stores the mid-row primitive profile.  The result is deterministic; the
committed copy at tests/data/brio_wu_ref_2000.npz only needs refreshing
if the scheme itself changes.  Takes on the order of an hour.
"""

import pathlib

import numpy as np

from curvmhd import harness, states

OUT = pathlib.Path(__file__).resolve().parents[1] \
    / "tests" / "data" / "brio_wu_ref_2000.npz"


def main():
    cfg = harness.RunConfig(problem="brio_wu", variant="uniform",
                            nx=2000, ny=12, solver="hlld")
    res = harness.run(cfg)
    print("summary:", res.summary)
    assert res.summary["status"] == "ok"
    g = res.grid
    q = g.interior(res.qg)
    row = q.shape[0] // 2
    w = states.primitive_from_conserved(q[row], res.setup.gamma)
    np.savez(OUT, x=np.asarray(g.x_int[row]), w=np.asarray(w),
             t=res.summary["t"], gamma=res.setup.gamma, nx=2000)
    print("saved", OUT)


if __name__ == "__main__":
    main()
