"""Hecke eigen systems on M_{20,2}: orbit degrees, T(2) minimal polynomials, lambda_2."""

from vvsmf.hecke import eigenvalue
from vvsmf.verify import Workspace

ws = Workspace(324, 81)
for E in ws.siegel(20):
    kind = "cusp" if E.cuspidal else "non-cusp"
    print(f"{kind:9s} degree {E.degree}  field {E.field.modulus}")
    print(f"          lambda_2 = {eigenvalue(E, 2, 1)}")
