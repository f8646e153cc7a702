"""Affine sl2 from the loop ring Q[t, t^-1]: bracket, vacuum module, character, Sugawara."""

from toroidal_va import RingSpec, act_mode, apply_T, bracket_hat, character, sugawara_check, vacuum_module
from toroidal_va.lie import preset
from toroidal_va.parse import parse_element

sl2 = preset("sl2")
R = RingSpec.parse("laurent:t;t=t")


def el(text):
    return parse_element(text, R, sl2, kind="toroidal")


# The central term of [e t, f t^-1] is the class of t^-1 dt, written k below.
print("[e t, f t^-1] =", bracket_hat(el("J[e]*t"), el("J[f]*t^-1")))
print("[e t^2, f t^-1] =", bracket_hat(el("J[e]*t^2"), el("J[f]*t^-1")), "(the dt term is exact)")

M = vacuum_module(sl2, R)
v = M.state(el("J[f]*t^-1"))
print("e t . f t^-1 |0> =", act_mode(el("J[e]*t"), v))
print("T f t^-1 |0> =", apply_T(v))
w = M.state(el("J[e]*t^-1"), el("J[f]*t^-2"))
print("h t . e t^-1 f t^-2 |0> =", act_mode(el("J[h]*t"), w))

# Ranks over Q[k] of the weight spaces: prod (1 - q^n)^-3.
print("character:", [r for _, r in character(sl2, 6)])

for K in (1, 3):
    report = sugawara_check(sl2, K, 2)
    print(f"Sugawara at K = {K}:", report.summary(), "c =", report.extra["central_charge"])
