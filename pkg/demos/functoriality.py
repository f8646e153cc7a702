"""Changing the fiber algebra: x -> y^2 on vacuum modules, and Q -> Q[x^+-1]."""

from toroidal_va import RingSpec, embedding_check, hom_intertwines_check, induce_hom, vacuum_module
from toroidal_va.lie import preset
from toroidal_va.parse import parse_element, parse_hom

sl2 = preset("sl2")
RX = RingSpec.parse("laurent:x,t;t=t")
RY = RingSpec.parse("laurent:y,t;t=t")
psi = parse_hom("hom: x -> y^2; t -> t", RX, RY)
H = induce_hom(psi, sl2)
M = vacuum_module(sl2, RX)

for text in ("J[e]*x*t^-1", "x^-1*t^-1*dx", "x*t^-2*dt"):
    v = M.state(parse_element(text, RX, sl2, kind="toroidal"))
    print(f"{v}  ->  {H(v)}")

print(hom_intertwines_check(psi, sl2, 2).summary())
print("pushing forms without the chain rule:", hom_intertwines_check(psi, sl2, 2, chain_rule=False).summary())

emb = embedding_check(sl2, RX, 3)
print(emb.summary(), "ranks by weight:", emb.extra["ranks"])
