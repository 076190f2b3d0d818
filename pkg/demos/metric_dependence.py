"""How the Laurent window moves when the metric weight t*phi is switched on.

The leading coefficient does not move; the constant term is affine in t.
"""
from qmcurrents.algebra import ConjPolynomial
from qmcurrents.continuation import laurent_coeffs
from qmcurrents.model import assemble
from qmcurrents.residues import check_metric_dependence

z, zb = ConjPolynomial.z(1, 0), ConjPolynomial.zbar(1, 0)
numerator = ConjPolynomial.constant(1, 2) + z * zb
omega, section = assemble(1, (2,), (1,), numerator * z, (3,), None, (1,))
phi = ConjPolynomial.constant(1, 1) + z * zb

print(f"{'t':>3}  {'C_-1':>14}  {'C_0':>24}")
for t in range(4):
    report = laurent_coeffs(omega.with_phi(phi.scale(t)), section)
    print(f"{t:>3}  {str(report.C[1]):>14}  {str(report.C[0]):>24}")

for check in check_metric_dependence(omega, section, phi):
    print(f"{check.check:<22} pass={check.passed}  lhs={check.lhs}")
