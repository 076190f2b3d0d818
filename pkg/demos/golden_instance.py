"""Walk through the one-variable instance psi = (1 - |z|^2)^2, pole 1/(z zbar).

Run with ``python demos/golden_instance.py``.
"""
from qmcurrents.algebra import ConjPolynomial
from qmcurrents.continuation import canonical_current, g_derivatives, h_factor, laurent_coeffs
from qmcurrents.model import assemble
from qmcurrents.oracle import run_oracle
from qmcurrents.residues import check_thm_aeppli

omega, section = assemble(1, (1,), (1,), ConjPolynomial.constant(1), (2,), None, (1,))
print("psi =", omega.psi)

# derivative pathway: h(lam) and the Taylor data of g
hf = h_factor(section.I, omega.pole.J, omega.pole.K)
print("h(0) =", hf.at_zero())
for k, value in enumerate(g_derivatives(omega, section.I, 2)):
    print(f"g^({k})(0) =", value)

report = laurent_coeffs(omega, section)
for r in range(report.kappa, -1, -1):
    print(f"C_{-r} =", report.C[r])

# closed-form pathway: the whole continued integral as a rational function
oracle = run_oracle(omega, section)
print("F(lam) =", oracle.F)
print("oracle window:", [str(c) for c in oracle.laurent.coefficients])

print("canonical current:", canonical_current(omega))
check = check_thm_aeppli(omega)
print(f"Aeppli residue check: lhs={check.lhs} rhs={check.rhs} pass={check.passed}")
