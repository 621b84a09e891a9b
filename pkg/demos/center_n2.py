"""The center of S(1,1,2): orbit size, generators, the relation F and its Poisson bracket."""

from sklyanin.center import compute_center
from sklyanin.curve import sigma_order
from sklyanin.freealg import hilbert_dims
from sklyanin.poisson import bracket_from_F, casimir_check, jacobi_residues

params = (1, 1, 2)
print("Hilbert dims up to degree 6:", hilbert_dims(params, 6))
print("order of sigma:", sigma_order(params))

cp = compute_center(params)
print("PI degree n =", cp.n)
print("g =", cp.g)
for i, z in enumerate(cp.z, 1):
    print(f"z{i} =", z)
print("F =", cp.F)

ps = bracket_from_F(cp.F)
print("Jacobi identity holds:", all(not r for r in jacobi_residues(ps)))
print("g is a Casimir:", casimir_check(ps))
