"""Critical value ratios of the weight 32 eigenform and the primes they produce."""

import mpmath

from vvsmf.eform import elliptic_eigenforms
from vvsmf.lfunc import critical_ratios, harder_congruence_primes, ratio_minpoly

(f,) = elliptic_eigenforms(32)
ratios = critical_ratios(f, "odd", 256)
for t in (3, 5):
    print(f"t = {t}:", [mpmath.nstr(v, 20) for v in ratios[t]])
print("minimal polynomial at t = 3:", ratio_minpoly(ratios[3], 2, 256))
print("large ordinary primes at t = 18:", sorted(harder_congruence_primes(32, 18)))
