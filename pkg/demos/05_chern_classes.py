"""Chern classes of the logarithmic cotangent bundle.

The first Chern class is N xi plus boundary corrections; the full Chern
polynomial is a graph sum of binomial-weighted xi-powers and normal-bundle
powers.  Integrating the top piece recovers (-1)^d chi, the strongest
internal consistency check the package runs.
"""
from stratacalc import Evaluator, StratumSpec, c1_log_cotangent, chern_character, chern_polynomial
from stratacalc.strata import dimension

ev = Evaluator()

spec = StratumSpec.connected(1, (4, 1, -5))
print("stratum:", spec.to_json())
print("\nfirst Chern class of the logarithmic cotangent bundle:")
for term in c1_log_cotangent(spec).to_json_obj():
    print("  ", term)

rep = chern_polynomial(spec, ev)
d = dimension(spec).projectivized
print(f"\ntop Chern number: {rep.top_value}")
print(f"Euler characteristic: {rep.chi}")
print(f"duality c_top = (-1)^d chi: {rep.duality_holds}")

print("\nChern character, truncated to degree 2:")
for k, piece in enumerate(chern_character(spec, 2)):
    print(f"  degree {k}: {len(piece.terms)} terms")

print("\nduality across a family of strata:")
for g, mu in [(2, (2,)), (1, (2, 1, -3)), (0, (1, 1, 2, 2, -8))]:
    s = StratumSpec.connected(g, mu)
    r = chern_polynomial(s, ev)
    print(f"  genus {g} mu={mu}: c_top {r.top_value}, chi {r.chi}, "
          f"duality {r.duality_holds}")
