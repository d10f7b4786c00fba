# Searching for ample classes with equal Hilbert polynomials.
#
# Both templates have H.c2 = 162, so equal Hilbert polynomials come down to
# H_phi^3 = H_T^3, a single Diophantine equation in x, y, z, a, b.

from cy3.exact import MultiPoly
from cy3.matcher import (
    build_certificate,
    enumerate_matches,
    modular_obstruction,
    paper_equation,
    paper_family,
    paper_match_problem,
    standard_equation,
    template_chern_pair,
    verify_family,
)
from cy3.models import model_x_phi, model_x_t

print("equation:", paper_equation(), "= 0")
problem = paper_match_problem(0, 12)
sols = enumerate_matches(problem, workers=4)
print(len(sols), "solutions with all parameters in 1..12; the first few:")
for s in sols[:5]:
    print("   ", dict(zip(problem.order, s.values(problem.order))), " H^3 =", s.common_value)

# A closed-form family solves the equation identically in C.
check = verify_family(paper_family())
print()
print("family composed into the equation:", check.composed)
fam = {k: MultiPoly.coerce(v) for k, v in paper_family().substitutions.items()}
for c in (1, 2, 3):
    point = {k: p.evaluate({"C": c}) for k, p in fam.items()}
    print("  C =", c, point)

point = {k: p.evaluate({"C": 1}) for k, p in fam.items()}
s = next(s for s in enumerate_matches(paper_match_problem(0, 20, fixed={"x": 6, "y": 2, "z": 2}))
         if s.assignment == point)
cert = build_certificate(s, model_x_phi(), model_x_t())
print()
print("certificate pairs:", *cert.pairs)
print("Hilbert polynomial:", cert.hilbert, " P(1..3) =", [int(cert.hilbert(n)) for n in (1, 2, 3)])

# With the binomially weighted cube of H_T the equation changes, and it has
# no solution at all: reduce mod 3.
print()
print("weighted equation:", standard_equation(), "= 0")
print("no roots modulo", modular_obstruction(standard_equation()))
print("true cube of H_T at the C = 1 point:", template_chern_pair(model_x_t(), point, expansion="standard").d3)
