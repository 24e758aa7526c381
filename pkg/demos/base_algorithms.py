"""
Base algorithms on their own
============================

Every roster entry is a descriptor string.  Stochastic families record
their initial parameters, which are later used to judge independence.
"""

from wocce import DEFAULT_ROSTER, accuracy, load_dataset, nmi, run_base

ds = load_dataset("iris")
cache = {}  # hierarchical dendrograms are reused across cluster counts

print(f"{'descriptor':26s} {'k':>3s} {'acc':>7s} {'nmi':>6s}  basic params")
for desc in DEFAULT_ROSTER:
    p = run_base(desc, ds, ds.k_true, seed=0, cache=cache)
    print(f"{str(desc):26s} {p.k:3d} {accuracy(p, ds.labels):7.2f} "
          f"{nmi(p, ds.labels):6.3f}  {p.basic_params.shape}")

# subtractive clustering picks its own number of clusters
for radius in (0.3, 0.5, 0.8):
    p = run_base(f"subtractive:{radius}", ds, ds.k_true)
    print(f"subtractive radius {radius}: {p.k} clusters")
