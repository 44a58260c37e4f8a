"""Two independent recursions, one set of numbers.

The generating functions W_{g,n}(z_1, ..., z_n) of intersection numbers can
be computed two ways that share no code:

  1. evaluate correlators with the DVV recursion and assemble the series;
  2. run the Eynard-Orantin residue recursion on the Airy curve
     (x = z^2/2, y = z), extracting exact formal residues at z = 0.

After w_i = 1/z_i^2 the same data becomes a polynomial omega_{g,n}, which
obeys a purely polynomial one-step recursion driven by the operator
D_{u,v} x^m = uv (u^m + 3 u^(m-1) v + ... + (2m+1) v^m), and its
antiderivative Omega_{g,n} obeys the half-integer-power analogue.
This script confronts all the routes with each other.

Run:  python3 demos/two_recursions_one_answer.py
"""

from airyqc import (
    CorrelatorTable,
    Omega_base,
    Omega_from_correlators,
    Omega_step,
    eo_shell,
    omega_base,
    omega_from_correlators,
    omega_step,
    poly_text,
    tW_from_correlators,
)
from airyqc.correlators import shell_cells

table = CorrelatorTable()

print("W_{1,2} straight from the correlators (1/z^(2a+2) notation):")
print(poly_text(tW_from_correlators(1, 2, table), "W"))

print("\n... and from the residue recursion on the Airy curve:")
wtable = eo_shell(4)
print(poly_text(wtable[(1, 2)], "W"))

print("\nAgreement on every cell with 2g - 2 + n <= 4:")
for g, n in shell_cells(1, 4):
    same = wtable[(g, n)] == tW_from_correlators(g, n, table)
    print(f"  ({g},{n}): {'identical' if same else 'MISMATCH'}")

print("\nThe polynomial recursion rebuilds omega_{2,1} from scratch:")
lower = {(0, 3): omega_base(0, 3), (1, 1): omega_base(1, 1)}
for g, n in shell_cells(2, 3):
    lower[(g, n)] = omega_step(g, n - 1, lower)
print("  omega_{2,1} =", poly_text(lower[(2, 1)], "omega"))
print("  matches the defining series:",
      lower[(2, 1)] == omega_from_correlators(2, 1, table))

print("\nSame game for the antiderivatives (half-integer exponents):")
Olower = {(0, 3): Omega_base(0, 3), (1, 1): Omega_base(1, 1)}
for g, n in shell_cells(2, 3):
    Olower[(g, n)] = Omega_step(g, n - 1, Olower)
print("  Omega_{2,1} =", poly_text(Olower[(2, 1)], "Omega"))
print("  matches the defining series:",
      Olower[(2, 1)] == Omega_from_correlators(2, 1, table))
