# Intersection numbers on the two threefolds.
#
# Run from the repository root:  python3 demos/01_intersection_numbers.py

from cy3.exact import det_int, smith_normal_form
from cy3.forms import cube, cube_split, pair
from cy3.models import model_x_phi, model_x_t, ns_e2_gram

x_phi = model_x_phi()
x_t = model_x_t()

print(x_phi.name, "has", len(x_phi.basis), "basis classes")
print(x_t.name, "has", len(x_t.basis), "basis classes:", " ".join(x_t.basis))

# The lattice spanned by {0}xE, Ex{0}, the diagonal and the graph of zeta.
g = ns_e2_gram()
print()
for row in g.tolist():
    print("   ", row)
snf = smith_normal_form(g)
print("det =", det_int(g), " invariant factors =", snf.factors)

# The ample templates, cubed symbolically.
h_phi = x_phi.template("H_phi").expr
print()
print("H_phi  =", h_phi)
print("H_phi^3 =", cube(x_phi.cup, h_phi))
print("H_phi.c2 =", pair(x_phi.c2, h_phi))

h_t = x_t.template("H_T")
fixed, moving = h_t.split()
s = cube_split(x_t.cup, fixed, moving)
print()
print("H_T =", h_t.expr)
print("  P = fixed part  ", fixed)
print("  L = moving part ", moving)
print("  P^3   =", s.p3)
print("  P^2.L =", s.p2l)
print("  P.L^2 =", s.pl2)
print("  L^3   =", s.l3)
print("  sum of the four pieces     :", s.paper_sum)
print("  binomially weighted (true) :", s.standard_sum)
print("  true cube from cube()      :", cube(x_t.cup, h_t.expr))
