"""Compare the two candidate factorial coefficients of 1/(m+1) at base m + beta.

The Stirling conversion of the geometric power expansion sum (beta-1)^k / x^{k+1}
gives (beta-1)_k / k!.  The power form (beta-1)^k / k! differs for k >= 2
unless beta = 1, and only the Pochhammer form reproduces the Laguerre
coefficients of the Euler converging factor.

    python3 scripts/b_forms.py --K 6
"""

import argparse
from fractions import Fraction

from stieltjes_cf.catalog import euler_ck, pochhammer_form_b, power_form_b
from stieltjes_cf.facseries import PowerExpansion, power_to_factorial
from stieltjes_cf.stieltjes import cf_coeffs


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--K", type=int, default=6)
    p.add_argument("--z", default="1")
    a = p.parse_args(argv)
    z = Fraction(a.z)
    for beta in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)):
        geo = PowerExpansion(0, tuple((beta - 1) ** k for k in range(a.K)))
        stirling = power_to_factorial(geo, a.K)
        poch, power = pochhammer_form_b(a.K, beta), power_form_b(a.K, beta)
        laguerre = tuple(euler_ck(k, beta, z) for k in range(a.K))
        print(f"beta = {beta}")
        print(f"  stirling(geometric) : {[str(v) for v in stirling]}")
        print(f"  (beta-1)_k/k!       : {[str(v) for v in poch]}")
        print(f"  (beta-1)^k/k!       : {[str(v) for v in power]}")
        print(f"  c from Pochhammer b matches Laguerre: {cf_coeffs(poch, 0, z, a.K) == laguerre}")
        print(f"  c from power b matches Laguerre:      {cf_coeffs(power, 0, z, a.K) == laguerre}")


if __name__ == "__main__":
    main()
