"""One-forms modulo exact forms on tori, and the cocycle behind the central extension."""

from toroidal_va import RingSpec, cocycle_check, graded_dimension, jacobi_suite, normal_form
from toroidal_va.lie import preset
from toroidal_va.parse import parse_element

for names in ("t", "t0,t1", "t0,t1,t2"):
    spec = RingSpec.parse(f"laurent:{names}")
    n = spec.nvars
    table = dict(graded_dimension(spec, (-2,) * n, (2,) * n))
    zero = table.pop((0,) * n)
    print(f"{n} variable(s): dim at 0 = {zero}, elsewhere {sorted(set(table.values()))}")

T01 = RingSpec.parse("laurent:t0,t1")
for text in ("t0^2*dt1", "t0^2*k1", "d(t0^3*t1^-1)", "k0 + k1"):
    w = parse_element(text, T01, kind="form")
    print(f"nf({text}) = {normal_form(w)}")

sl2 = preset("sl2")
R = RingSpec.parse("laurent:t")
print(jacobi_suite(sl2, T01, 1).summary())
print(cocycle_check(sl2, R, 2).summary())
print("without the Koszul sign:", cocycle_check(sl2, R, 1, koszul_sign=False).summary())
