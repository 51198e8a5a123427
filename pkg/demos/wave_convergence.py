"""Grid-refinement study on the smooth travelling-wave problem.

The wave has an exact solution on a deliberately perturbed periodic
mesh, so the measured errors isolate the spatial scheme.  Orders
approach four once the mesh perturbation is resolved.  The 128-point
row takes roughly half an hour; pass smaller sizes to keep it quick:

    python3 demos/wave_convergence.py 16 32 64
"""

import sys

from curvmhd import harness


def main(argv):
    sizes = [int(a) for a in argv[1:]] or [32, 64, 128]
    rows = harness.convergence("alfven", sizes, cfl=0.6, t_final=1.0)
    print(harness.format_convergence(rows))


if __name__ == "__main__":
    main(sys.argv)
