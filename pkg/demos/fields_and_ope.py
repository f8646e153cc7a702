"""Generating fields over Q[x^+-1][t^+-1]: operator products, locality and translation."""

from toroidal_va import RingSpec, commutator_check, locality_check, translation_axiom_check, vacuum_axiom_check
from toroidal_va.lie import preset
from toroidal_va.parse import parse_field
from toroidal_va.vacuum import format_ope, ope_terms

sl2 = preset("sl2")
R = RingSpec.parse("laurent:x,t;t=t")
e, f, k = (parse_field(s, sl2, R) for s in ("J[e;u=x]", "J[f;u=x^-1]", "Kom[w=x^-1*dx]"))

delta, ddelta = ope_terms(e, f)
print(f"[{e}(z), {f}(w)] = ({format_ope(delta)}) delta + ({format_ope(ddelta)}) d_w delta")

for g in (f, k):
    print(commutator_check(e, g, 2).summary(), "|", locality_check(e, g, 2).summary())

# With the opposite sign of the cocycle the prediction no longer matches the action;
# dropping the derivative term breaks the commutator but not locality.
print("opposite sign:", commutator_check(e, f, 2, convention="opposite").summary())
print("no derivative term:", commutator_check(e, f, 2, convention="no_derivative").summary())

for field in (e, parse_field("Kdt[u=x]", sl2, R), k):
    print(field, translation_axiom_check(field, 2).summary(), vacuum_axiom_check(field).summary())
