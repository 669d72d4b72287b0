"""Zero sets of sums of polynomial powers staying on a lemniscate.

For R_n(z) = sum_i P_i(z)^{m_i n} with one summand of strictly largest
degree, every zero stays inside a fixed disk (the dominance radius), and
the normalized log modulus of the zero set approaches the pointwise max
of the summand potentials.  We run the four-factor configuration with
factors z -+ 1 and z -+ i and multipliers (12, 8, 7, 21).
"""

from voroderiv import lemniscate
from voroderiv.svg import render_svg

problem = lemniscate.LemniscateProblem(
    ((-1.0, 1.0), (1.0, 1.0), (-1.0j, 1.0), (1.0j, 1.0)),
    (12, 8, 7, 21))

rep = lemniscate.compactness_and_compare(problem, [4, 8, 10],
                                         window=(0.0, 2.0), grid=80)
print(f"dominance radius: {rep.dominance_radius:.4f}")
for n, mod, l1 in zip(rep.n_list, rep.max_root_modulus, rep.l1_discrepancy):
    print(f"n = {n:3d}: max |root| = {mod:.4f}, "
          f"L1 gap to the limit potential = {l1:.5f}")

render_svg("lemniscate_n10.svg", None, roots=list(rep.roots[-1]),
           window=(0.0, 2.0))
print("wrote lemniscate_n10.svg")
