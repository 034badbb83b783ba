# Longest rate-1/2 codes reachable with at most 25 redundancy bits per component.
from tensorgrand.tensor import design_space, max_length_at_rate

table = design_space(max_redundancy=25)
for l, name in ((1, "component"), (2, "square"), (3, "cubic")):
    print(f"{name:>9}: {max_length_at_rate(table, l, 0.5)}")

best = max((r for r in table if r["l"] == 3 and abs(float(r["rate"]) - 0.5) < 0.005),
           key=lambda r: r["length"])
print("cubic winner: n =", best["n"], "k =", best["k"], "rate", float(best["rate"]))
