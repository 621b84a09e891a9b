"""Two-dimensional representations of S(1,-1,-1) over the curve point with z1 = -1728.

The stored printed matrices give g = -4; the constructed representation, after a scalar
twist, gives g = +4. Both points lie on Y because F only sees g through g^2 here.
"""

from importlib import resources

from sklyanin.center import compute_center
from sklyanin.reps import bundled_rep, load_rep, report, twist

cp = compute_center((1, -1, -1))

printed, _ = bundled_rep()
print("printed matrices:", report(printed, cp).to_json())
print("printed twisted by -1:", report(twist(printed, -1), cp).to_json())

text = resources.files("sklyanin").joinpath("fixtures/pi6_rep_constructed.json").read_text()
built, _ = load_rep(text)
print("constructed matrices:", report(built, cp).to_json())
