"""How often a bipartite arrangement is enough, for every tree up to 11 vertices."""
import warnings

from maxla.experiments import distributions, stats_table, survey, thistle_conditioning

warnings.simplefilter("ignore")

print(" n  trees   bip  both  non-bip  share")
for r in stats_table(range(4, 12), solver="bnb"):
    print(f"{r.n:2d} {r.total:6d} {r.bip_only:5d} {r.both:5d} {r.nonbip_only:8d}  {r.p_bip:.4f}")

outs = {n: survey(n, "bnb") for n in (9, 10, 11)}
print("\nshare by number of potential thistles")
for row in thistle_conditioning(outs):
    shares = " ".join(f"{k}:{100 * row.p_given_k(k):.1f}%" for k in row.trees_by_k)
    print(f"n={row.n}  {shares}  tau={row.tau:.3f}")

print("\nlargest gap between maximum and bipartite optimum")
for rec in distributions(outs, "delta"):
    print(f"n={rec.n}  {rec.max_value}  over {rec.count} trees")
