"""S(1,-1,-1) has PI degree 6; its singular locus is the origin plus three curves through it."""

from fractions import Fraction

from sklyanin.center import compute_center
from sklyanin.strata import (classify_stratum, curve_point, discriminant_zero_set, expected_irrep_profile,
                             sample_generic_points, slice_singulars)

cp = compute_center((1, -1, -1))
print("n =", cp.n, " alpha =", cp.alpha)
print("F =", cp.F)

for gamma in (Fraction(-1), Fraction(0), Fraction(2)):
    pts = sorted(map(str, slice_singulars(cp, gamma)))
    print(f"singular points of the slice g = {gamma}:", pts)

samples = [*sample_generic_points(cp, 2), curve_point(cp, 0, 4), curve_point(cp, 0, 0)]
for p in samples:
    st = classify_stratum(cp, p)
    print(p, st.tag, "irreducible dims", expected_irrep_profile(cp, p))

for k in (1, 12, 13, 36):
    print(f"zero set of discriminant ideal k={k}:", discriminant_zero_set(cp, k))
