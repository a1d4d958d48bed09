"""Write the k_rho curves and the sharpness check as CSV.

    python3 scripts/reproduce_figure1.py [outdir]

One ``figure1_rho_<rho>.csv`` (rho, s, k) per curve plus ``sharpness.csv``
(rho, s, lhs, rhs, gap), where lhs is the computed norm of g_s on the shift
matrix and rhs is k_rho(s). Plot the first set with any tool.
"""
import sys

from rhocalc.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "figure1"
    sys.exit(main(["sharpness", "--out", out]))
