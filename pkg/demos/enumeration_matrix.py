"""
Swapping the enumeration and the weights
========================================

The construction should not care which dense sequence or which summable
weights it uses.  Rerun the axiom suite and the convergence lab over a small
matrix of choices.
"""

from scoremetric import remark_check

rep = remark_check(samples=100)
for cell in rep.results:
    print(f"{cell.check:34s} axioms={cell.info['axioms_pass']} lab={cell.info['lab_pass']}")
print("all cells pass:", rep.passed)
print(rep.to_csv())
