"""Computing psi-class intersection numbers exactly.

The numbers <tau_{a_1} ... tau_{a_n}>_g integrate products of psi-classes
over the moduli space of stable curves.  They are rationals, nonzero only
on the dimension shell sum(a_i) = 3g - 3 + n, and the DVV (Virasoro)
recursion determines all of them from <tau_0^3>_0 = 1 and
<tau_1>_1 = 1/24.  Everything below is exact; no floats anywhere.

Run:  python3 demos/intersection_numbers.py
"""

from airyqc import CorrelatorTable, correlator_shell, dumps_table

table = CorrelatorTable()

print("A few classics:")
for g, a in [(0, (0, 0, 0)), (0, (1, 0, 0, 0)), (1, (1,)), (1, (1, 1, 1)),
             (2, (4,)), (2, (3, 2)), (3, (7,))]:
    print(f"  <{' '.join(f'tau_{x}' for x in a)}>_{g} = {table.correlator(g, a)}")

print("\nOff the dimension shell everything vanishes:")
print("  <tau_2 tau_1 tau_0>_0 =", table.correlator(0, (2, 1, 0)))

print("\nThe recursion is insensitive to which insertion is made special:")
values = {table.dvv_rhs(2, (3, 2), i) for i in range(2)}
print("  both special-insertion choices for <tau_3 tau_2>_2 give", values)

print("\nShells are graded by 2g - 2 + n; chi <= 3 holds these values:")
shell = correlator_shell(3)
print(dumps_table(shell))
print(f"memo after the walk: {len(shell)} keys, "
      f"{shell.hits} hits / {shell.misses} misses")
