"""Exact fractional local dimension of a few small posets.

The standard example S_3 has dimension 3 and fractional dimension 3, yet its
fractional local dimension is 7/3. Printing the optimal weighting shows where
the saving comes from: partial orders that leave out some points.
"""

from fldlab import (antichain, chain, dimension_brute, fdim_exact, fldim_exact, standard_example,
                    subset_family, verify_realizer)


def show(name, P):
    value, _ = fldim_exact(P)
    print(f"{name:10s} n={P.n}  dim={dimension_brute(P)}  fdim={fdim_exact(P)}  fldim={value}")


for name, P in [("chain(4)", chain(4)), ("antichain(3)", antichain(3)),
                ("S_2", standard_example(2)), ("S_3", standard_example(3)),
                ("P(1,2;3)", subset_family(2, 3))]:
    show(name, P)

S3 = standard_example(3)
value, witness = fldim_exact(S3)
print(f"\nOptimal weighting for S_3 (value {value}):")
for ple, w in sorted(witness.weights.items(), key=lambda kv: (len(kv[0]), kv[0])):
    print(f"  {w!s:>5}  " + " < ".join(S3.label(u) for u in ple))
valid, measure = verify_realizer(S3, witness)
print(f"realizer valid: {valid}, largest element measure: {measure}")
print("element measures:", ", ".join(f"{S3.label(u)}={witness.measure(u)}" for u in range(S3.n)))
